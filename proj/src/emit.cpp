#include "ncsurf/emit.hpp"

#include "ncsurf/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ncsurf {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::string short_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string pair(std::complex<double> z) { return "[" + format_number(z.real()) + ", " + format_number(z.imag()) + "]"; }

std::string matrix_json(const Matrix& m, const std::string& indent) {
    if (m.rows() == 0) return "[]";
    std::string out = "[\n";
    for (int i = 0; i < m.rows(); ++i) {
        out += indent + "  [";
        for (int j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + pair(m(i, j));
        out += i + 1 < m.rows() ? "],\n" : "]\n";
    }
    return out + indent + "]";
}

Matrix matrix_from(const nlohmann::json& j) {
    const int rows = static_cast<int>(j.size());
    Matrix m = Matrix::Zero(rows, rows);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != rows) throw DomainError("matrix is not square");
        for (int k = 0; k < rows; ++k) m(i, k) = {j[i][k][0].get<double>(), j[i][k][1].get<double>()};
    }
    return m;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct Pt {
    double x, y;
};

Pt on_circle(double theta, double radius = 200.0) {
    return {220.0 + radius * std::cos(theta), 220.0 - radius * std::sin(theta)};
}

} // namespace

std::string format_number(double v) {
    if (v == 0.0) return "0";  // -0 would not survive a reload
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string rep_to_json(const ReprMatrices& m) {
    const ReprSpec& s = m.spec;
    std::ostringstream os;
    os << "{\n";
    os << "  \"family\": " << quote(family_name(s.family)) << ",\n";
    os << "  \"R\": " << format_number(s.R) << ",\n";
    os << "  \"n\": " << s.n << ",\n";
    os << "  \"alpha\": " << format_number(s.alpha) << ",\n";
    os << "  \"beta_prime\": " << format_number(s.beta_prime) << ",\n";
    os << "  \"beta\": " << format_number(s.beta_prime + s.alpha / 2) << ",\n";
    os << "  \"k\": " << (s.k ? std::to_string(*s.k) : "null") << ",\n";
    os << "  \"M\": " << (s.M ? std::to_string(*s.M) : "null") << ",\n";
    os << "  \"nu\": " << (s.nu ? pair(*s.nu) : "null") << ",\n";
    os << "  \"eps\": " << format_number(m.eps) << ",\n";
    os << "  \"matrices\": {\n";
    os << "    \"u\": " << matrix_json(m.U, "    ") << ",\n";
    os << "    \"ap\": " << matrix_json(m.Ap, "    ") << ",\n";
    os << "    \"am\": " << matrix_json(m.Am, "    ");
    if (s.family == Family::FuzzySphere) os << ",\n    \"z\": " << matrix_json(m.Z, "    ");
    os << "\n  },\n";
    os << "  \"residuals\": {";
    const ResidualReport rep = verify_relations(m);
    for (std::size_t i = 0; i < rep.entries.size(); ++i)
        os << (i ? ", " : "") << quote(rep.entries[i].first) << ": " << format_number(rep.entries[i].second);
    os << "}\n}\n";
    return os.str();
}

ReprMatrices rep_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("invalid representation JSON: ") + e.what());
    }
    try {
        ReprMatrices m;
        ReprSpec& s = m.spec;
        s.family = parse_family(j.at("family").get<std::string>());
        s.R = j.at("R").get<double>();
        s.n = j.at("n").get<int>();
        s.alpha = j.at("alpha").get<double>();
        s.beta_prime = j.at("beta_prime").get<double>();
        if (!j.at("k").is_null()) s.k = j["k"].get<int>();
        if (j.contains("M") && !j["M"].is_null()) s.M = j["M"].get<int>();
        if (!j.at("nu").is_null()) s.nu = std::complex<double>(j["nu"][0].get<double>(), j["nu"][1].get<double>());
        m.eps = j.at("eps").get<double>();
        const auto& mats = j.at("matrices");
        m.U = matrix_from(mats.at("u"));
        m.Ap = matrix_from(mats.at("ap"));
        m.Am = matrix_from(mats.at("am"));
        if (mats.contains("z")) m.Z = matrix_from(mats["z"]);
        if (s.family == Family::T2Window) m.boundary = {0, m.dim() - 1};
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed representation JSON: ") + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit_rep_json(const ReprMatrices& m, const std::string& path) { write_file(path, rep_to_json(m)); }

ReprMatrices load_rep_json(const std::string& path) { return rep_from_json(read_file(path)); }

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = std::string(kSweepHeader) + "\n";
    auto opt = [](const std::optional<double>& v) { return v ? short_number(*v) : std::string(); };
    for (const SweepRow& r : rows) {
        out += short_number(r.R) + "," + std::to_string(r.n) + "," + family_name(r.family) + "," +
               (r.k ? std::to_string(*r.k) : "") + "," + opt(r.alpha) + "," + opt(r.beta_lo) + "," + opt(r.beta_hi) +
               "," + (r.exists ? "true" : "false") + "," + csv_field(r.reject_reason) + "\n";
    }
    return out;
}

void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    write_file(path, sweep_to_csv(rows));
}

std::string diagram_svg(const ReprSpec& spec) {
    double alpha = spec.alpha;
    int first = 0, count = spec.n;
    bool closed = false;
    switch (spec.family) {
    case Family::S2Min:
    case Family::S2NonMin: break;
    case Family::T2Finite:
        if (!spec.k || *spec.k < 1) throw DomainError("T2 diagram needs k >= 1");
        alpha = 2 * kPi * *spec.k / spec.n;
        closed = true;
        break;
    case Family::T2Window: {
        const int M = spec.M.value_or((spec.n - 1) / 2);
        first = -M;
        count = 2 * M + 1;
        break;
    }
    default: throw DomainError("no circle diagram for family " + family_name(spec.family));
    }
    if (count < 2) throw DomainError("diagram needs at least 2 vertices");
    if (!(alpha > 0 && alpha < kPi)) throw DomainError("alpha must lie in (0, pi)");

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 440 440\" width=\"440\" height=\"440\">\n";
    os << "  <circle class=\"unit\" cx=\"220\" cy=\"220\" r=\"200\" fill=\"none\" stroke=\"#000000\" "
          "stroke-width=\"1.5\"/>\n";

    // forbidden sector: sec(alpha/2) cos(theta) + R < 0, i.e. |theta - pi| < delta/2
    const double arg = spec.R * std::cos(alpha / 2);
    if (arg <= -1.0) {
        os << "  <circle class=\"forbidden\" cx=\"220\" cy=\"220\" r=\"200\" fill=\"#e6b8b8\" stroke=\"none\"/>\n";
    } else if (arg <= 1.0) {
        const double half = std::acos(arg);
        const Pt a = on_circle(kPi - half), b = on_circle(kPi + half);
        os << "  <path class=\"forbidden\" d=\"M 220 220 L " << fixed(a.x, 4) << " " << fixed(a.y, 4)
           << " A 200 200 0 " << (2 * half > kPi ? 1 : 0) << " 0 " << fixed(b.x, 4) << " " << fixed(b.y, 4)
           << " Z\" fill=\"#e6b8b8\" stroke=\"#b03030\" stroke-width=\"1\"/>\n";
    }

    std::vector<Pt> pts;
    for (int j = 0; j < count; ++j) pts.push_back(on_circle(spec.beta_prime + (first + j) * alpha));
    os << "  <" << (closed ? "polygon" : "polyline") << " class=\"ladder\" points=\"";
    for (std::size_t j = 0; j < pts.size(); ++j) os << (j ? " " : "") << fixed(pts[j].x, 4) << "," << fixed(pts[j].y, 4);
    os << "\" fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1.5\"/>\n";
    for (const Pt& p : pts)
        os << "  <circle class=\"vertex\" cx=\"" << fixed(p.x, 4) << "\" cy=\"" << fixed(p.y, 4)
           << "\" r=\"5\" fill=\"#1f4e9a\"/>\n";
    os << "</svg>\n";
    return os.str();
}

void emit_diagram_svg(const ReprSpec& spec, const std::string& path) { write_file(path, diagram_svg(spec)); }

} // namespace ncsurf
