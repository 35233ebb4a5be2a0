#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modsurf/cuspform_data.hpp"
#include "modsurf/eisenstein.hpp"
#include "modsurf/rankin_selberg.hpp"
#include "modsurf/regimes.hpp"
#include "modsurf/special_functions.hpp"
#include "modsurf/spectral_solver.hpp"
#include "modsurf/truncation.hpp"

using namespace modsurf;
using json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, Usage = 2, Math = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        char* end = nullptr;
        const double v = std::strtod(part.c_str(), &end);
        if (part.empty() || end == part.c_str() || *end != '\0') throw UsageError("cannot parse " + what + " '" + text + "'");
        out.push_back(v);
    }
    return out;
}

cplx parse_complex(const std::string& text) {
    const auto v = split_numbers(text, "complex number");
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() == 2) return {v[0], v[1]};
    throw UsageError("complex numbers are written re,im: '" + text + "'");
}

UpperHalfPoint parse_point(const std::string& text) {
    const auto v = split_numbers(text, "point");
    if (v.size() != 2) throw UsageError("points are written x,y: '" + text + "'");
    if (!(v[1] > 0)) throw UsageError("point must lie in the upper half-plane: '" + text + "'");
    return {v[0], v[1]};
}

json cj(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }
json pj(UpperHalfPoint z) { return json{{"x", z.x}, {"y", z.y}}; }

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Flattens one level of objects into CSV columns, e.g. value.re.
void flatten(const json& j, const std::string& prefix, std::vector<std::string>& keys, std::vector<std::string>& vals) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), keys, vals);
        return;
    }
    keys.push_back(prefix);
    if (j.is_number_float()) vals.push_back(num(j.get<double>()));
    else if (j.is_string()) vals.push_back(j.get<std::string>());
    else vals.push_back(j.dump());
}

void print_rows(const std::vector<json>& rows, const std::string& format, const json& extra = json::object()) {
    if (format == "json") {
        json out = extra;
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
        return;
    }
    bool header = false;
    for (const auto& r : rows) {
        std::vector<std::string> keys, vals;
        flatten(r, "", keys, vals);
        if (!header) {
            for (std::size_t i = 0; i < keys.size(); ++i) std::cout << (i ? "," : "") << keys[i];
            std::cout << "\n";
            header = true;
        }
        for (std::size_t i = 0; i < vals.size(); ++i) std::cout << (i ? "," : "") << vals[i];
        std::cout << "\n";
    }
}

void print_object(const json& j, const std::string& format) {
    if (format == "json") std::cout << j.dump(2) << "\n";
    else print_rows({j}, "csv");
}

std::vector<CuspFormRecord> load_forms(const std::string& path) {
    auto forms = load_cuspforms(path.empty() ? default_cuspform_path() : path);
    flag_invalid(forms);
    return forms;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
    std::string s = "2,0", z = "0,1";
    bool direct = false, e1star = false, check_fe = false;
    double truncate = 0;
    int lattice_bound = 400;
};

int cmd_eval(const EvalArgs& a, const std::string& format) {
    const cplx s = parse_complex(a.s);
    const UpperHalfPoint z = parse_point(a.z);
    EisensteinEvalConfig cfg;
    cfg.oracle_lattice_bound = a.lattice_bound;
    json out;
    out["s"] = cj(s);
    out["z"] = pj(z);

    if (a.check_fe) {
        const cplx lhs = completed_xi(2.0 * s) * eisenstein_eval(s, z, cfg);
        const cplx rhs = completed_xi(2.0 - 2.0 * s) * eisenstein_eval(1.0 - s, z, cfg);
        out["lhs"] = cj(lhs);
        out["rhs"] = cj(rhs);
        out["abs_diff"] = std::abs(lhs - rhs);
        out["rel_diff"] = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        print_object(out, format);
        return Ok;
    }

    EvalResult r;
    std::string what = "E_s";
    if (a.e1star) {
        r.value = eisenstein_E1star(z, cfg);
        what = "E_1*";
    } else if (a.truncate > 0) {
        r.value = truncated_eisenstein(s, z, TruncationHeight(a.truncate), cfg);
        what = "truncated E_s";
        out["T"] = a.truncate;
    } else if (a.direct) {
        r = eisenstein_eval_direct(s, z, cfg);
        what = "E_s (lattice sum)";
    } else {
        r = eisenstein_eval_ex(s, z, cfg);
    }
    out["function"] = what;
    out["re"] = r.value.real();
    out["im"] = r.value.imag();
    out["tail_bound"] = r.tail_bound;
    print_object(out, format);
    return Ok;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::string alpha = "0.6,0", beta = "1.5,0";
};

int cmd_classify(const ClassifyArgs& a, const std::string& format) {
    const cplx alpha = parse_complex(a.alpha), beta = parse_complex(a.beta);
    const Regime r = classify(alpha, beta);
    json out;
    out["alpha"] = cj(alpha);
    out["beta"] = cj(beta);
    out["regime"] = to_string(r);
    out["boundary"] = is_boundary(r);
    if (is_boundary(r)) {
        const BoundaryVerdict v = solvability_on_boundary(alpha, beta);
        out["solvable"] = v.solvable;
        out["witness"] = v.witness ? cj(*v.witness) : json(nullptr);
        out["min_abs_c"] = v.min_abs_c;
    } else {
        out["solvable"] = r != Regime::PoleAtOne && r != Regime::NeedsReflection;
        out["witness"] = nullptr;
    }
    json terms = json::array();
    out["constant"] = cj(0.0);
    if (out["solvable"].get<bool>()) {
        const SubtractionPlan p = subtraction_plan(alpha, beta);
        out["swapped"] = p.swapped;
        for (const auto& t : p.terms) {
            json tj;
            tj["coef"] = cj(t.coef);
            if (t.e1star) tj["param"] = "E1*";
            else tj["param"] = cj(t.param);
            terms.push_back(tj);
        }
        out["constant"] = cj(p.constant);
    }
    out["plan_terms"] = terms;
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        json flat = out;
        flat["plan_terms"] = terms.dump();
        print_rows({flat}, "csv");
    }
    return Ok;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;
    int grid = 3;
    double T = 3.0;
    std::string alpha = "0.6,0", beta = "1.5,0", s = "0.5,2";
    std::string T_list = "2,4,8,16";
    int cases = 10;
    unsigned seed = 1;
    double tol = -1;
};

json verify_row(const std::string& name, cplx closed, cplx oracle, double tol, bool relative) {
    const double abs_err = std::abs(closed - oracle);
    const double rel_err = std::abs(closed) > 0 ? abs_err / std::abs(closed) : std::nan("");
    json r;
    r["case"] = name;
    r["closed_form"] = cj(closed);
    r["oracle"] = cj(oracle);
    r["abs_err"] = abs_err;
    r["rel_err"] = rel_err;
    r["pass"] = (relative ? rel_err : abs_err) <= tol;
    return r;
}

std::string cstr(cplx v) {
    std::ostringstream o;
    o << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
    return o.str();
}

std::vector<json> suite_maass_selberg(const VerifyArgs& a, double tol) {
    if (a.grid < 1 || a.grid > 4) throw UsageError("--grid must be between 1 and 4");
    const std::vector<cplx> rs = {{2.0, 0.5}, {0.7, 1.0}, {1.5, 0.0}, {1.2, -0.8}};
    const std::vector<cplx> ss = {{0.5, 3.0}, {0.8, -2.0}, {2.5, 0.3}, {0.6, 0.4}};
    const TruncationHeight T(a.T);
    std::vector<json> rows;
    for (int i = 0; i < a.grid; ++i)
        for (int j = 0; j < a.grid; ++j) {
            const cplx r = rs[std::size_t(i)], s = ss[std::size_t(j)];
            const cplx closed = maass_selberg_closed(r, s, T);
            const cplx oracle =
                inner_product_oracle(truncated_eisenstein_field(r, T), truncated_eisenstein_field(std::conj(s), T));
            rows.push_back(verify_row("r=" + cstr(r) + " s=" + cstr(s), closed, oracle, tol, true));
        }
    return rows;
}

std::vector<json> suite_functional_equation(const VerifyArgs& a, double tol) {
    if (a.cases < 1) throw UsageError("--cases must be positive");
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> re(0.05, 0.95), im(-5.0, 5.0), x(-0.5, 0.5), y(0.6, 3.0);
    std::vector<json> rows;
    for (int k = 0; k < a.cases; ++k) {
        const cplx s(re(rng), im(rng));
        const UpperHalfPoint z{x(rng), y(rng)};
        const cplx lhs = completed_xi(2.0 * s) * eisenstein_eval(s, z);
        const cplx rhs = completed_xi(2.0 - 2.0 * s) * eisenstein_eval(1.0 - s, z);
        rows.push_back(verify_row("s=" + cstr(s) + " z=" + cstr({z.x, z.y}), lhs, rhs, tol, true));
    }
    return rows;
}

std::vector<json> suite_residue(double tol) {
    std::vector<json> rows;
    for (UpperHalfPoint z : {UpperHalfPoint{0.0, 1.0}, UpperHalfPoint{0.3, 1.7}, UpperHalfPoint{-0.2, 0.9}}) {
        const ResidueEstimate r = residue_extrapolation(z);
        rows.push_back(verify_row("(s-1)E_s at z=" + cstr({z.x, z.y}), eisenstein_residue, r.value, tol, false));
    }
    return rows;
}

std::vector<json> suite_unwinding(const VerifyArgs& a, double tol) {
    const cplx alpha = parse_complex(a.alpha), beta = parse_complex(a.beta);
    if (classify(alpha, beta) != Regime::I) throw UsageError("unwinding needs a regime I pair");
    const auto ab = alpha.real() <= beta.real() ? std::pair{alpha, beta} : std::pair{beta, alpha};
    const cplx al = ab.first, be = ab.second;
    const Field F = eisenstein_field(al) * eisenstein_field(be) - eisenstein_field(al + be) -
                    c_coefficient(al) * eisenstein_field(1.0 - al + be);
    const cplx oracle = inner_product_oracle(F, constant_field(1.0));
    return {verify_row("<E_a E_b - E_{a+b} - c_a E_{1-a+b}, 1>", 0.0, oracle, tol, false)};
}

std::vector<json> suite_truncation_limit(const VerifyArgs& a, double tol) {
    const cplx s = parse_complex(a.s);
    const auto Ts = split_numbers(a.T_list, "T list");
    std::vector<json> rows;
    for (const auto& r : truncation_limit_check(s, parse_complex(a.alpha), parse_complex(a.beta), Ts)) {
        json row = verify_row("T=" + num(r.T), r.predicted, r.discrepancy, tol, false);
        rows.push_back(row);
    }
    return rows;
}

int cmd_verify(const VerifyArgs& a, const std::string& format) {
    std::vector<json> rows;
    const auto tol = [&](double d) { return a.tol > 0 ? a.tol : d; };
    if (a.suite == "maass-selberg") rows = suite_maass_selberg(a, tol(1e-5));
    else if (a.suite == "functional-equation") rows = suite_functional_equation(a, tol(1e-8));
    else if (a.suite == "residue") rows = suite_residue(tol(1e-6));
    else if (a.suite == "unwinding") rows = suite_unwinding(a, tol(1e-4));
    else if (a.suite == "truncation-limit") rows = suite_truncation_limit(a, tol(1e-6));
    else throw UsageError("unknown suite '" + a.suite + "'");
    bool all = true;
    for (const auto& r : rows) all = all && r["pass"].get<bool>();
    print_rows(rows, format, json{{"suite", a.suite}, {"all_pass", all}});
    return all ? Ok : VerifyFailed;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string alpha = "0.6,0", beta = "1.5,0", w = "1.5,0";
    bool continued = false, residuals = true;
    std::vector<std::string> points;
    double T_spec = 30.0, fd_step = 1e-3;
    int forms = -1;
    std::string cuspforms;
};

int cmd_solve(const SolveArgs& a, const std::string& format) {
    const cplx alpha = parse_complex(a.alpha), beta = parse_complex(a.beta), w = parse_complex(a.w);
    std::vector<UpperHalfPoint> pts;
    for (const auto& p : a.points) pts.push_back(parse_point(p));
    if (pts.empty()) pts = {{0.1, 1.2}, {0.2, 1.3}, {-0.3, 1.1}, {0.0, 1.6}, {0.4, 2.0}};
    if (!(a.fd_step > 0)) throw UsageError("--fd-step must be positive");

    auto forms = load_forms(a.cuspforms);
    if (a.forms >= 0 && std::size_t(a.forms) < forms.size()) forms.resize(std::size_t(a.forms));
    SpectralConfig cfg;
    cfg.T_spec = a.T_spec;
    auto ex = std::make_shared<const SpectralExpansion>(expand_S(alpha, beta, forms, cfg));
    const SolutionHandle h = a.continued ? solve_u_continued(ex, w) : solve_u(ex, w);

    json out;
    out["alpha"] = cj(alpha);
    out["beta"] = cj(beta);
    out["w"] = cj(w);
    out["continued"] = a.continued;
    out["regime"] = to_string(ex->plan.regime);
    out["cusp_forms"] = ex->cuspidal.size();
    out["residual_diagnostic"] = ex->residual_diagnostic;
    std::vector<json> rows;
    for (const auto& z : pts) {
        json r;
        r["z"] = pj(z);
        r["u"] = cj(h(z));
        if (a.residuals) r["residual"] = residual_check(h, z, a.fd_step);
        rows.push_back(r);
    }
    if (a.continued) {
        const SolutionHandle mirror = solve_u_continued(ex, 1.0 - w);
        const double d = std::abs(h.J(pts.front()) - mirror.J(pts.front()));
        out["j_symmetry"] = json{{"z", pj(pts.front())}, {"abs_diff", d}};
    }
    print_rows(rows, format, out);
    return Ok;
}

// ---------------------------------------------------------------- scan-boundary

struct ScanArgs {
    std::string line = "re34";
    double from = 6.5, to = 7.5, step = 1e-3, tol = zero_witness_tol, re_alpha = 0.75;
};

int cmd_scan(const ScanArgs& a, const std::string& format) {
    BoundaryLine line;
    if (a.line == "re34") line = BoundaryLine::ReThreeQuarters;
    else if (a.line == "sum32") line = BoundaryLine::SumThreeHalves;
    else throw UsageError("--line must be re34 or sum32");
    if (!(a.step > 0) || !(a.to >= a.from)) throw UsageError("scan needs --step > 0 and --from <= --to");
    const BoundaryScanResult r = scan_boundary(line, a.from, a.to, a.step, a.tol, a.re_alpha);
    std::vector<json> rows;
    for (const auto& row : r.rows)
        rows.push_back(json{{"t", row.t}, {"abs_c", row.abs_c}, {"solvable", row.solvable},
                            {"zero_candidate", row.zero_candidate}});
    if (format == "json") {
        json extra;
        extra["line"] = a.line;
        extra["zero_candidates"] = r.zero_candidates;
        json mins = json::array();
        for (std::size_t i = 0; i < r.minima.size(); ++i) mins.push_back({{"t", r.minima[i]}, {"abs_c", r.minima_abs_c[i]}});
        extra["minima"] = mins;
        print_rows(rows, "json", extra);
    } else {
        print_rows(rows, "csv");
    }
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein series, spectral expansions and solutions of (Delta - lambda_w) u = E_alpha E_beta "
                 "on the modular surface"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format;
    std::string cuspforms;
    app.add_option("--format", format, "Output format (json or csv)")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cuspforms", cuspforms, "Cusp-form data file (default: bundled, or $MODSURF_CUSPFORMS)");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Evaluate E_s(z), E_1*(z) or the truncated series");
    eval->add_option("--s", ea.s, "Spectral parameter re,im")->capture_default_str();
    eval->add_option("--z", ea.z, "Point x,y")->capture_default_str();
    eval->add_flag("--direct", ea.direct, "Use the coprime lattice sum (Re s > 1)");
    eval->add_option("--lattice-bound", ea.lattice_bound, "Box size of the lattice sum")->capture_default_str();
    eval->add_flag("--e1star", ea.e1star, "Evaluate E_1* instead of E_s");
    eval->add_option("--truncate", ea.truncate, "Evaluate the series truncated at height T");
    eval->add_flag("--check-functional-equation", ea.check_fe, "Print xi(2s)E_s and xi(2-2s)E_{1-s}");

    ClassifyArgs ca;
    auto* cls = app.add_subcommand("classify", "Regime, subtraction plan and boundary verdict for (alpha, beta)");
    cls->alias("plan");
    cls->add_option("--alpha", ca.alpha)->capture_default_str();
    cls->add_option("--beta", ca.beta)->capture_default_str();

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Run an identity suite against the numerical oracles");
    ver->add_option("suite", va.suite, "maass-selberg | functional-equation | residue | unwinding | truncation-limit")
        ->required();
    ver->add_option("--grid", va.grid, "Grid size for maass-selberg")->capture_default_str();
    ver->add_option("--T", va.T, "Truncation height for maass-selberg")->capture_default_str();
    ver->add_option("--alpha", va.alpha)->capture_default_str();
    ver->add_option("--beta", va.beta)->capture_default_str();
    ver->add_option("--s", va.s, "Critical-line point for truncation-limit")->capture_default_str();
    ver->add_option("--T-list", va.T_list, "Heights for truncation-limit")->capture_default_str();
    ver->add_option("--cases", va.cases, "Random cases for functional-equation")->capture_default_str();
    ver->add_option("--seed", va.seed)->capture_default_str();
    ver->add_option("--tol", va.tol, "Override the suite tolerance");

    SolveArgs sa;
    auto* sol = app.add_subcommand("solve", "Solve (Delta - lambda_w) u = E_alpha E_beta and report residuals");
    sol->add_option("--alpha", sa.alpha)->capture_default_str();
    sol->add_option("--beta", sa.beta)->capture_default_str();
    sol->add_option("--w", sa.w)->capture_default_str();
    sol->add_flag("--continued", sa.continued, "Use the continued formula (Re w != 1/2)");
    sol->add_option("--point", sa.points, "Evaluation point x,y (repeatable)");
    sol->add_option("--T-spec", sa.T_spec, "Cut-off of the spectral integral")->capture_default_str();
    sol->add_option("--fd-step", sa.fd_step, "Finite-difference step of the residual")->capture_default_str();
    sol->add_option("--forms", sa.forms, "Use only the first N cusp forms");
    sol->add_flag("!--no-residuals", sa.residuals, "Skip residual checks");

    ScanArgs sc;
    auto* scan = app.add_subcommand("scan-boundary", "Scan |c_alpha| along a solvability boundary");
    scan->add_option("--line", sc.line, "re34 (alpha = beta = 3/4 + it) or sum32 (alpha = a + it, beta = 3/2 - a - it)")
        ->capture_default_str();
    scan->add_option("--from", sc.from)->capture_default_str();
    scan->add_option("--to", sc.to)->capture_default_str();
    scan->add_option("--step", sc.step)->capture_default_str();
    scan->add_option("--tol", sc.tol, "Zero-candidate threshold on |c|")->capture_default_str();
    scan->add_option("--re-alpha", sc.re_alpha, "Re alpha on the sum32 line")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Usage;
    }

    const auto fmt = [&](const char* def) { return format.empty() ? std::string(def) : format; };
    try {
        if (*eval) return cmd_eval(ea, fmt("json"));
        if (*cls) return cmd_classify(ca, fmt("json"));
        if (*ver) return cmd_verify(va, fmt("json"));
        if (*sol) {
            sa.cuspforms = cuspforms;
            return cmd_solve(sa, fmt("json"));
        }
        if (*scan) return cmd_scan(sc, fmt("csv"));
    } catch (const UsageError& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return Usage;
    } catch (const DataError& e) {
        std::cerr << json{{"error", "data"}, {"message", e.what()}}.dump() << "\n";
        return Usage;
    } catch (const MathError& e) {
        std::string kind = "MathError";
        if (dynamic_cast<const PoleError*>(&e)) kind = "PoleError";
        else if (dynamic_cast<const EigenvalueCollision*>(&e)) kind = "EigenvalueCollision";
        else if (dynamic_cast<const UnsolvableBoundary*>(&e)) kind = "UnsolvableBoundary";
        else if (dynamic_cast<const DomainError*>(&e)) kind = "DomainError";
        else if (dynamic_cast<const NonConvergence*>(&e)) kind = "NonConvergence";
        else if (dynamic_cast<const DegenerateEigenvalue*>(&e)) kind = "DegenerateEigenvalue";
        else if (dynamic_cast<const InsufficientCoefficients*>(&e)) kind = "InsufficientCoefficients";
        std::cerr << json{{"error", kind}, {"message", e.what()}}.dump() << "\n";
        return Math;
    }
    return Usage;
}
