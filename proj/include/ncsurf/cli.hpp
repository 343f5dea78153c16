#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncsurf {

/// Exit codes: 0 success, 1 domain error or non-existence, 2 usage or parse error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ncsurf
