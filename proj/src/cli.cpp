#include "ncsurf/cli.hpp"

#include "ncsurf/classifier.hpp"
#include "ncsurf/emit.hpp"
#include "ncsurf/errors.hpp"
#include "ncsurf/geometry.hpp"
#include "ncsurf/parser.hpp"
#include "ncsurf/representations.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <unistd.h>

namespace ncsurf {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string R;
    int n = 0;
    std::optional<int> k;
    std::optional<double> alpha;
    std::optional<double> beta_prime;
    std::optional<double> nu_phase;
    std::optional<double> eps;
    std::optional<int> M;
    std::string family;
    std::string expr, f, g;
    std::string out;
    std::string input;
    std::string format = "json";
    std::optional<double> tol;
    std::optional<int> grid;
};

bool color_enabled() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO); }

std::string paint(const std::string& s, bool good) {
    if (!color_enabled()) return s;
    return (good ? "\033[32m" : "\033[31m") + s + "\033[0m";
}

double real_arg(const std::string& text, const char* flag) {
    if (text.empty()) throw CLI::ValidationError(std::string(flag), "required");
    try {
        const mpq_class q = parse_exact_rational(text);
        // get_d truncates; strtod rounds decimal input to nearest
        return text.find('/') == std::string::npos ? std::strtod(text.c_str(), nullptr) : q.get_d();
    } catch (const DomainError&) {
        throw CLI::ValidationError(std::string(flag), "not a number: " + text);
    }
}

mpq_class exact_arg(const std::string& text, const char* flag) {
    if (text.empty()) throw CLI::ValidationError(std::string(flag), "required");
    try {
        return parse_exact_rational(text);
    } catch (const DomainError&) {
        throw CLI::ValidationError(std::string(flag), "not a number: " + text);
    }
}

Json nullable(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json record_json(const SolutionRecord& r) {
    Json j;
    j["family"] = family_name(r.family);
    j["R"] = r.R;
    j["n"] = r.n;
    j["exists"] = r.exists;
    const bool solved = r.exists || r.family == Family::S2NonMin;
    j["alpha"] = solved ? Json(r.alpha) : Json(nullptr);
    j["beta_prime"] = solved ? Json(r.beta_prime) : Json(nullptr);
    j["beta"] = solved ? Json(r.beta_prime + r.alpha / 2) : Json(nullptr);
    j["eps"] = solved ? Json(std::tan(r.alpha / 2)) : Json(nullptr);
    j["k"] = r.k ? Json(*r.k) : Json(nullptr);
    j["branch"] = r.branch.empty() ? Json(nullptr) : Json(r.branch);
    j["reject_reason"] = r.reject_reason.empty() ? Json(nullptr) : Json(r.reject_reason);
    j["failing_index"] = r.failing_index ? Json(*r.failing_index) : Json(nullptr);
    return j;
}

std::string record_text(const SolutionRecord& r) {
    std::ostringstream os;
    os.precision(10);
    os << family_name(r.family) << " R=" << r.R << " n=" << r.n << " ";
    if (r.exists || r.family == Family::S2NonMin) {
        os << "alpha=" << r.alpha << " beta'=" << r.beta_prime << " beta=" << r.beta_prime + r.alpha / 2;
        if (r.k) os << " k=" << *r.k;
        if (!r.branch.empty()) os << " branch=" << r.branch;
        os << " ";
    }
    os << (r.exists ? paint("exists", true) : paint("rejected", false));
    if (!r.reject_reason.empty()) os << " (" << r.reject_reason << ")";
    return os.str();
}

SweepRow record_row(const SolutionRecord& r) {
    SweepRow row;
    row.R = r.R;
    row.n = r.n;
    row.family = r.family;
    row.k = r.k;
    if (r.exists || r.family == Family::S2NonMin) {
        row.alpha = r.alpha;
        row.beta_lo = row.beta_hi = r.beta_prime;
    }
    row.exists = r.exists;
    row.reject_reason = r.reject_reason;
    return row;
}

Json row_json(const SweepRow& r) {
    Json j;
    j["R"] = r.R;
    j["n"] = r.n;
    j["family"] = family_name(r.family);
    j["k"] = r.k ? Json(*r.k) : Json(nullptr);
    j["alpha"] = nullable(r.alpha);
    j["beta_lo"] = nullable(r.beta_lo);
    j["beta_hi"] = nullable(r.beta_hi);
    j["exists"] = r.exists;
    j["reject_reason"] = r.reject_reason.empty() ? Json(nullptr) : Json(r.reject_reason);
    return j;
}

class Runner {
public:
    Runner(Options& o, std::ostream& out) : o_(o), out_(out) {}

    void emit(const std::string& text) {
        if (o_.out.empty())
            out_ << text;
        else
            write_file(o_.out, text);
    }
    void emit(const Json& j) { emit(j.dump(2) + "\n"); }

    int topology() {
        const double R = real_arg(o_.R, "--R");
        const std::string label = topology_name(topology_of(R));
        if (o_.format == "text")
            emit(label + "\n");
        else if (o_.format == "csv")
            emit("R,label\n" + format_number(R) + "," + label + "\n");
        else
            emit(Json{{"R", R}, {"label", label}});
        return 0;
    }

    int slice() {
        const double R = real_arg(o_.R, "--R");
        const auto pts = slice_curve(R, o_.grid.value_or(64));
        if (o_.format == "json") {
            Json arr = Json::array();
            for (const auto& [x, z] : pts) arr.push_back({x, z});
            emit(Json{{"R", R}, {"points", arr}});
        } else {
            std::string s = o_.format == "csv" ? "x,z\n" : "";
            const char* sep = o_.format == "csv" ? "," : " ";
            for (const auto& [x, z] : pts) s += format_number(x) + sep + format_number(z) + "\n";
            emit(s);
        }
        return 0;
    }

    int solve_min() {
        const SolutionRecord r = solve_minimal_s2(real_arg(o_.R, "--R"), need_n());
        if (o_.format == "text")
            emit(record_text(r) + "\n");
        else if (o_.format == "csv")
            emit(sweep_to_csv({record_row(r)}));
        else
            emit(record_json(r));
        return r.exists ? 0 : 1;
    }

    int enum_s2() {
        const auto recs = enumerate_s2_nonminimal(real_arg(o_.R, "--R"), need_n(), o_.grid.value_or(kDefaultGrid));
        if (o_.format == "text") {
            std::string s;
            for (const auto& r : recs) s += record_text(r) + "\n";
            emit(s);
        } else if (o_.format == "csv") {
            std::vector<SweepRow> rows;
            for (const auto& r : recs) rows.push_back(record_row(r));
            emit(sweep_to_csv(rows));
        } else {
            Json arr = Json::array();
            for (const auto& r : recs) arr.push_back(record_json(r));
            emit(arr);
        }
        return 0;
    }

    int t2_window() {
        const double R = real_arg(o_.R, "--R");
        const int n = need_n();
        if (!o_.k) throw CLI::ValidationError("--k", "required");
        const BetaWindow w = t2_beta_window(R, n, *o_.k);
        const bool some = w.kind != WindowKind::None;
        if (o_.format == "text") {
            std::ostringstream os;
            os.precision(10);
            os << window_kind_name(w.kind);
            if (some) os << " beta' in (" << w.lower << ", " << w.upper << ")";
            os << " delta=" << w.delta << " threshold=" << w.threshold << "\n";
            emit(os.str());
        } else if (o_.format == "csv") {
            emit("R,n,k,kind,lower,upper,delta,threshold\n" + format_number(R) + "," + std::to_string(n) + "," +
                 std::to_string(*o_.k) + "," + window_kind_name(w.kind) + "," +
                 (some ? format_number(w.lower) : "") + "," + (some ? format_number(w.upper) : "") + "," +
                 format_number(w.delta) + "," + format_number(w.threshold) + "\n");
        } else {
            emit(Json{{"R", R},
                      {"n", n},
                      {"k", *o_.k},
                      {"kind", window_kind_name(w.kind)},
                      {"lower", some ? Json(w.lower) : Json(nullptr)},
                      {"upper", some ? Json(w.upper) : Json(nullptr)},
                      {"delta", w.delta},
                      {"threshold", w.threshold}});
        }
        return some ? 0 : 1;
    }

    int classify() {
        const double R = real_arg(o_.R, "--R");
        if (!o_.eps) throw CLI::ValidationError("--eps", "required");
        const RegionClass rc = classify_region(R, *o_.eps);
        const RegionFlags& f = rc.flags;
        if (o_.format == "text") {
            std::string s = region_name(rc.label) + "\n";
            auto line = [&](const char* name, bool v) { s += std::string("  ") + name + ": " + paint(v ? "yes" : "no", v) + "\n"; };
            line("minimal S2", f.minimal_s2);
            line("non-minimal S2", f.nonminimal_s2);
            line("finite T2", f.finite_t2);
            line("semi-infinite T2", f.semi_infinite_t2);
            line("infinite T2", f.infinite_t2);
            emit(s);
        } else if (o_.format == "csv") {
            auto b = [](bool v) { return std::string(v ? "true" : "false"); };
            emit("R,eps,label,R_eps,minimal_s2,nonminimal_s2,finite_t2,semi_infinite_t2,infinite_t2\n" +
                 format_number(R) + "," + format_number(*o_.eps) + "," + region_name(rc.label) + "," +
                 format_number(rc.R_eps) + "," + b(f.minimal_s2) + "," + b(f.nonminimal_s2) + "," + b(f.finite_t2) +
                 "," + b(f.semi_infinite_t2) + "," + b(f.infinite_t2) + "\n");
        } else {
            emit(Json{{"R", R},
                      {"eps", *o_.eps},
                      {"label", region_name(rc.label)},
                      {"R_eps", rc.R_eps},
                      {"minimal_s2", f.minimal_s2},
                      {"nonminimal_s2", f.nonminimal_s2},
                      {"finite_t2", f.finite_t2},
                      {"semi_infinite_t2", f.semi_infinite_t2},
                      {"infinite_t2", f.infinite_t2}});
        }
        return 0;
    }

    ReprSpec spec_from_flags() {
        ReprSpec s;
        s.R = real_arg(o_.R, "--R");
        s.n = need_n();
        s.k = o_.k;
        s.M = o_.M;
        if (o_.nu_phase) s.nu = std::polar(1.0, *o_.nu_phase);
        if (!o_.family.empty()) {
            s.family = parse_family(o_.family);
        } else if (o_.k) {
            s.family = Family::T2Finite;
        } else if (o_.alpha && o_.beta_prime) {
            const bool minimal = std::abs(*o_.beta_prime + s.n * *o_.alpha / 2) < 1e-9 && s.n * *o_.alpha < 2 * M_PI;
            s.family = minimal ? Family::S2Min : Family::S2NonMin;
        } else {
            s.family = Family::S2Min;
        }
        if (s.family == Family::S2Min && !o_.alpha && !o_.beta_prime) {
            const SolutionRecord r = solve_minimal_s2(s.R, s.n);
            if (!r.exists) throw InvalidSpec("no minimal S2 representation: " + r.reject_reason);
            return r.to_spec();
        }
        if (s.family != Family::T2Finite) {
            if (!o_.alpha) throw CLI::ValidationError("--alpha", "required for family " + family_name(s.family));
            s.alpha = *o_.alpha;
        } else if (o_.alpha) {
            s.alpha = *o_.alpha;
        }
        if (o_.beta_prime) s.beta_prime = *o_.beta_prime;
        return s;
    }

    int build_cmd() {
        const ReprMatrices m = build(spec_from_flags());
        if (o_.format == "text") {
            std::ostringstream os;
            os.precision(10);
            os << family_name(m.spec.family) << " dim=" << m.dim() << " alpha=" << m.spec.alpha
               << " beta'=" << m.spec.beta_prime << " beta=" << m.spec.beta_prime + m.spec.alpha / 2
               << " eps=" << m.eps << " max residual=" << verify_relations(m).max() << "\n";
            emit(os.str());
        } else {
            emit(rep_to_json(m));
        }
        return 0;
    }

    int verify() {
        const ReprMatrices m = o_.input.empty() ? build(spec_from_flags()) : load_rep_json(o_.input);
        const ResidualReport rep = verify_relations(m);
        const double tol = o_.tol.value_or(1e-10 * m.dim());
        const bool ok = rep.max() < tol;
        if (o_.format == "text") {
            std::string s;
            for (const auto& [name, v] : rep.entries) s += name + " " + format_number(v) + "\n";
            s += "max " + format_number(rep.max()) + " " + paint(ok ? "ok" : "FAIL", ok) + "\n";
            emit(s);
        } else if (o_.format == "csv") {
            std::string s = "relation,residual\n";
            for (const auto& [name, v] : rep.entries) s += name + "," + format_number(v) + "\n";
            emit(s);
        } else {
            Json res;
            for (const auto& [name, v] : rep.entries) res[name] = v;
            emit(Json{{"family", family_name(m.spec.family)},
                      {"dim", m.dim()},
                      {"residuals", res},
                      {"max", rep.max()},
                      {"tol", tol},
                      {"ok", ok},
                      {"irreducible", check_irreducible(m)}});
        }
        return ok ? 0 : 1;
    }

    int reduce() {
        const AlgebraContext ctx{exact_arg(o_.R, "--R")};
        if (o_.expr.empty()) throw CLI::ValidationError("--expr", "required");
        const std::string nf = parse_expr(o_.expr, ctx).to_string();
        emit(o_.format == "json" ? Json(nf).dump() + "\n" : nf + "\n");
        return 0;
    }

    int poisson() {
        const AlgebraContext ctx{exact_arg(o_.R, "--R")};
        if (o_.f.empty()) throw CLI::ValidationError("--f", "required");
        if (o_.g.empty()) throw CLI::ValidationError("--g", "required");
        const std::string br = nf_poisson(parse_expr(o_.f, ctx), parse_expr(o_.g, ctx)).to_string();
        emit(o_.format == "json" ? Json(br).dump() + "\n" : br + "\n");
        return 0;
    }

    int sweep() {
        RGrid grid;
        {
            std::vector<std::string> parts;
            std::stringstream ss(o_.R);
            for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
            if (parts.size() == 1) {
                grid.lo = grid.hi = real_arg(parts[0], "--R");
                grid.steps = 1;
            } else if (parts.size() == 3) {
                grid.lo = real_arg(parts[0], "--R");
                grid.hi = real_arg(parts[1], "--R");
                try {
                    grid.steps = std::stoi(parts[2]);
                } catch (const std::exception&) {
                    throw CLI::ValidationError("--R", "steps must be an integer");
                }
                if (grid.steps < 1) throw CLI::ValidationError("--R", "steps must be positive");
            } else {
                throw CLI::ValidationError("--R", "expected R or lo:hi:steps");
            }
        }
        const auto rows = sweep_regions(need_n(), grid, o_.grid.value_or(kDefaultGrid));
        if (o_.format == "csv") {
            emit(sweep_to_csv(rows));
        } else if (o_.format == "text") {
            std::string s;
            for (const auto& r : rows) {
                std::ostringstream os;
                os.precision(10);
                os << r.R << " " << family_name(r.family);
                if (r.k) os << " k=" << *r.k;
                if (r.alpha) os << " alpha=" << *r.alpha;
                if (r.beta_lo) os << " beta'=[" << *r.beta_lo << ", " << *r.beta_hi << "]";
                os << " " << (r.exists ? paint("exists", true) : paint("no", false));
                if (!r.reject_reason.empty()) os << " (" << r.reject_reason << ")";
                s += os.str() + "\n";
            }
            emit(s);
        } else {
            Json arr = Json::array();
            for (const auto& r : rows) arr.push_back(row_json(r));
            emit(arr);
        }
        return 0;
    }

    int diagram() {
        emit(diagram_svg(spec_from_flags()));
        return 0;
    }

private:
    int need_n() {
        if (o_.n == 0) throw CLI::ValidationError("--n", "required");
        return o_.n;
    }

    Options& o_;
    std::ostream& out_;
};

struct ErrorInfo {
    int code;
    std::string kind;
};

void report(std::ostream& err, const Options& o, const ErrorInfo& info, const std::string& message,
            const ParseError* pe = nullptr) {
    if (o.format == "json") {
        Json j{{"error", info.kind}, {"message", message}};
        if (pe) {
            j["offset"] = pe->offset;
            j["expected"] = pe->expected;
        }
        err << j.dump() << "\n";
    } else {
        err << "error: " << message << "\n";
    }
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Noncommutative surfaces: algebra, representations and classification", "ncsurf"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", o.out, "Write output to this file");
    };
    auto spec_flags = [&](CLI::App* sub) {
        sub->add_option("--R", o.R, "Deformation parameter R");
        sub->add_option("--n", o.n, "Dimension");
        sub->add_option("--k", o.k, "Winding number k (T2)");
        sub->add_option("--alpha", o.alpha, "Ladder angle alpha");
        sub->add_option("--beta-prime", o.beta_prime, "Phase offset beta' = beta - alpha/2");
        sub->add_option("--nu-phase", o.nu_phase, "T2 wrap phase: nu = exp(i * value)");
        sub->add_option("--M", o.M, "Window half-width (t2window)");
        sub->add_option("--family", o.family, "s2min, s2nonmin, t2finite, t2window, fuzzysphere");
    };

    Runner run(o, out);
    std::function<int()> action;

    auto* topo = app.add_subcommand("topology", "Topology of M(R)");
    topo->add_option("--R", o.R)->required();
    common(topo);
    topo->callback([&] { action = [&] { return run.topology(); }; });

    auto* slice = app.add_subcommand("slice", "The y = 0 slice of M(R)");
    slice->add_option("--R", o.R)->required();
    slice->add_option("--grid", o.grid, "Samples per branch");
    common(slice);
    slice->callback([&] { action = [&] { return run.slice(); }; });

    auto* smin = app.add_subcommand("solve-min-s2", "Minimal S2 representation for (R, n)");
    smin->add_option("--R", o.R)->required();
    smin->add_option("--n", o.n)->required();
    common(smin);
    smin->callback([&] { action = [&] { return run.solve_min(); }; });

    auto* en = app.add_subcommand("enum-s2", "Non-minimal S2 candidates for (R, n)");
    en->add_option("--R", o.R)->required();
    en->add_option("--n", o.n)->required();
    en->add_option("--grid", o.grid, "Alpha grid size");
    common(en);
    en->callback([&] { action = [&] { return run.enum_s2(); }; });

    auto* tw = app.add_subcommand("t2-window", "Admissible beta' window for T2 (R, n, k)");
    tw->add_option("--R", o.R)->required();
    tw->add_option("--n", o.n)->required();
    tw->add_option("--k", o.k)->required();
    common(tw);
    tw->callback([&] { action = [&] { return run.t2_window(); }; });

    auto* cl = app.add_subcommand("classify", "Region of the (R, eps) table");
    cl->add_option("--R", o.R)->required();
    cl->add_option("--eps", o.eps)->required();
    common(cl);
    cl->callback([&] { action = [&] { return run.classify(); }; });

    auto* bd = app.add_subcommand("build", "Build representation matrices");
    spec_flags(bd);
    common(bd);
    bd->callback([&] { action = [&] { return run.build_cmd(); }; });

    auto* vf = app.add_subcommand("verify", "Relation residuals of a representation");
    spec_flags(vf);
    vf->add_option("input", o.input, "Representation JSON file (instead of spec flags)");
    vf->add_option("--tol", o.tol, "Pass threshold (default 1e-10 * dim)");
    common(vf);
    vf->callback([&] { action = [&] { return run.verify(); }; });

    auto* rd = app.add_subcommand("reduce", "Normal form of an expression");
    rd->add_option("--R", o.R)->required();
    rd->add_option("--expr", o.expr)->required();
    common(rd);
    rd->callback([&] { action = [&] { return run.reduce(); }; });

    auto* ps = app.add_subcommand("poisson", "Exact Poisson bracket {pi f, pi g}");
    ps->add_option("--R", o.R)->required();
    ps->add_option("--f", o.f)->required();
    ps->add_option("--g", o.g)->required();
    common(ps);
    ps->callback([&] { action = [&] { return run.poisson(); }; });

    auto* sw = app.add_subcommand("sweep", "Region rows over an R grid");
    sw->add_option("--R", o.R, "R or lo:hi:steps")->required();
    sw->add_option("--n", o.n)->required();
    sw->add_option("--grid", o.grid, "Alpha grid size");
    common(sw);
    sw->callback([&] { action = [&] { return run.sweep(); }; });

    auto* dg = app.add_subcommand("diagram", "SVG circle diagram");
    spec_flags(dg);
    common(dg);
    dg->callback([&] { action = [&] { return run.diagram(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const ParseError& e) {
        report(err, o, {2, "ParseError"}, e.what(), &e);
        return 2;
    } catch (const CLI::ValidationError& e) {
        report(err, o, {2, "UsageError"}, e.what());
        return 2;
    } catch (const UnknownGenerator& e) {
        report(err, o, {2, "UnknownGenerator"}, e.what());
        return 2;
    } catch (const ContextMismatch& e) {
        report(err, o, {2, "ContextMismatch"}, e.what());
        return 2;
    } catch (const InvalidSpec& e) {
        report(err, o, {1, "InvalidSpec"}, e.what());
        return 1;
    } catch (const ChartDomainError& e) {
        report(err, o, {1, "ChartDomainError"}, e.what());
        return 1;
    } catch (const DomainError& e) {
        report(err, o, {1, "DomainError"}, e.what());
        return 1;
    } catch (const NotDivisible& e) {
        report(err, o, {1, "NotDivisible"}, e.what());
        return 1;
    } catch (const std::exception& e) {
        report(err, o, {1, "Error"}, e.what());
        return 1;
    }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"ncsurf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace ncsurf
