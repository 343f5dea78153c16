#pragma once

#include <stdexcept>
#include <cstddef>
#include <string>
#include <vector>

namespace ncsurf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact division by eps was requested for a scalar that does not vanish at eps = 0.
class NotDivisible : public Error {
public:
    using Error::Error;
};

/// Binary operation on algebra elements built for different values of R.
class ContextMismatch : public Error {
public:
    using Error::Error;
};

class UnknownGenerator : public Error {
public:
    using Error::Error;
};

/// Parameters do not describe a representation (an existence inequality or endpoint condition fails).
class InvalidSpec : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The Darboux chart is not valid at the requested point (R + cos 2p <= 0).
class ChartDomainError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Syntax error in an algebra expression. offset is the 0-based byte position of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
        : Error(describe(offset, expected, found)), offset(offset), expected(std::move(expected)) {}

    std::size_t offset;
    std::vector<std::string> expected;

private:
    static std::string describe(std::size_t offset, const std::vector<std::string>& expected,
                                const std::string& found) {
        std::string msg = "parse error at offset " + std::to_string(offset) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
        return msg + "; found " + found;
    }
};

} // namespace ncsurf
