#include "modsurf/cuspform_data.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "modsurf/special_functions.hpp"

#ifndef MODSURF_DATA_DIR
#define MODSURF_DATA_DIR "data"
#endif

namespace modsurf {

cplx CuspFormRecord::coefficient(long long n) const {
    if (n == 0) throw DomainError("cusp forms have no constant coefficient");
    const long long m = std::llabs(n);
    if (m > count()) throw InsufficientCoefficients("coefficient c_" + std::to_string(m) + " not available");
    const cplx c = coefficients[std::size_t(m - 1)];
    return (n < 0 && parity == Parity::Odd) ? -c : c;
}

void validate_record(const CuspFormRecord& f) {
    if (!(f.R > 0)) throw ValidationError("cusp form needs R > 0");
    if (f.coefficients.empty()) throw ValidationError("cusp form has no coefficients");
    if (f.normalization == "hecke_c1_equals_1" && std::abs(f.coefficients[0] - 1.0) > 1e-12)
        throw ValidationError("hecke normalization requires c_1 = 1");
}

namespace {

double parse_double(const std::string& tok, int line) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ParseError("line " + std::to_string(line) + ": not a number: '" + tok + "'");
    return v;
}

cplx parse_complex(const std::string& tok, int line) {
    const auto comma = tok.find(',');
    if (comma == std::string::npos) return parse_double(tok, line);
    return {parse_double(tok.substr(0, comma), line), parse_double(tok.substr(comma + 1), line)};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<CuspFormRecord> parse_cuspforms(const std::string& text) {
    std::vector<CuspFormRecord> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        CuspFormRecord f;
        f.R = parse_double(tok, lineno);
        std::string parity;
        if (!(ls >> parity)) throw ParseError("line " + std::to_string(lineno) + ": missing parity");
        if (parity == "even") f.parity = Parity::Even;
        else if (parity == "odd") f.parity = Parity::Odd;
        else throw ParseError("line " + std::to_string(lineno) + ": parity must be even or odd");
        std::string ntok;
        if (!(ls >> ntok)) throw ParseError("line " + std::to_string(lineno) + ": missing coefficient count");
        const double nd = parse_double(ntok, lineno);
        if (nd < 0 || nd != std::floor(nd)) throw ParseError("line " + std::to_string(lineno) + ": bad count");
        const auto N = static_cast<std::size_t>(nd);
        while (ls >> tok) f.coefficients.push_back(parse_complex(tok, lineno));
        if (f.coefficients.size() != N)
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(N) + " coefficients, got " +
                             std::to_string(f.coefficients.size()));
        validate_record(f);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<CuspFormRecord> load_cuspforms(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open cusp-form file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cuspforms(ss.str());
}

std::string format_cuspform(const CuspFormRecord& f) {
    std::string s = fmt(f.R) + (f.parity == Parity::Even ? " even " : " odd ") + std::to_string(f.coefficients.size());
    for (const auto& c : f.coefficients) {
        s += ' ';
        s += fmt(c.real());
        if (c.imag() != 0.0) s += "," + fmt(c.imag());
    }
    return s;
}

void save_cuspforms(const std::string& path, const std::vector<CuspFormRecord>& forms, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write cusp-form file: " + path);
    if (!header.empty()) out << header;
    for (const auto& f : forms) out << format_cuspform(f) << '\n';
}

std::string default_cuspform_path() {
    if (const char* p = std::getenv("MODSURF_CUSPFORMS")) return p;
    return std::string(MODSURF_DATA_DIR) + "/cuspforms.txt";
}

FourierRow cuspform_row(const CuspFormRecord& f, double y) {
    if (!(y > 0)) throw DomainError("cusp form row needs y > 0");
    FourierRow row;
    const cplx nu(0.0, f.R);
    double peak = 0;
    bool settled = false;
    for (long long n = 1; n <= f.count(); ++n) {
        const double x = 2 * pi * double(n) * y;
        const double m = 2 * std::sqrt(y) * bessel_k(nu, x).real();
        peak = std::max(peak, std::abs(m));
        const cplx c = f.coefficients[std::size_t(n - 1)];
        if (f.parity == Parity::Even) row.cos.push_back(2.0 * c * m);
        else row.sin.push_back(cplx(0, 2) * c * m);
        if (x > f.R && std::abs(m) < 1e-18 * peak) {
            settled = true;
            break;
        }
    }
    if (!settled) {
        const double x = 2 * pi * double(f.count() + 1) * y;
        const double next = 2 * std::sqrt(y) * std::abs(bessel_k(nu, x).real());
        if (x <= f.R || next > 1e-15 * peak)
            throw InsufficientCoefficients("cusp form needs more coefficients at height " + fmt(y));
    }
    return row;
}

Field cuspform_field(const CuspFormRecord& f) {
    Field F;
    F.row = [f](double y) { return cuspform_row(f, y); };
    return F;
}

cplx cuspform_eval_raw(const CuspFormRecord& f, UpperHalfPoint z) { return cuspform_row(f, z.y).eval(z.x); }

cplx cuspform_eval(const CuspFormRecord& f, UpperHalfPoint z, const EisensteinEvalConfig&) {
    return cuspform_eval_raw(f, reduce_to_fundamental_domain(z).z);
}

CuspValidationReport validate_cuspform(const CuspFormRecord& f, const CuspValidationConfig& cfg) {
    CuspValidationReport rep;
    const cplx lambda = f.eigenvalue();

    // Stencils centred on the arc |z| = 1 mix two Fourier representations
    // after reduction, so the residual sees automorphy defects as well.
    const ScalarField F = [&](UpperHalfPoint z) { return cuspform_eval(f, z); };
    std::vector<UpperHalfPoint> arc;
    for (double x : {0.07, 0.19, 0.31, 0.43}) arc.push_back({x, std::sqrt(1 - x * x)});
    arc.push_back({0.2, 1.3});
    double scale = 0;
    std::vector<cplx> vals;
    for (auto z : arc) {
        vals.push_back(F(z));
        scale = std::max(scale, std::abs(vals.back()));
    }
    // Odd forms vanish on the arc, so small values are measured against the
    // sample scale instead.
    for (std::size_t i = 0; i < arc.size(); ++i) {
        const cplx r = hyperbolic_laplacian_fd(F, arc[i], cfg.fd_step) - lambda * vals[i];
        const double den = std::max(std::abs(vals[i]), 0.1 * scale);
        rep.eigenvalue_residual = std::max(rep.eigenvalue_residual, std::abs(r) / den);
    }

    const std::vector<UpperHalfPoint> inside = {{0.3, 0.9}, {-0.2, 0.95}, {0.1, 0.88}, {0.42, 0.82}};
    double ascale = 0, adiff = 0;
    for (auto z : inside) {
        const cplx a = cuspform_eval_raw(f, z);
        const cplx b = cuspform_eval_raw(f, apply(Mat2{0, -1, 1, 0}, z));
        ascale = std::max(ascale, std::abs(a));
        adiff = std::max(adiff, std::abs(a - b));
    }
    rep.automorphy_residual = ascale > 0 ? adiff / ascale : 0.0;

    auto c = [&](int n) { return n <= f.count() ? f.coefficients[std::size_t(n - 1)] : cplx(0.0); };
    if (f.count() >= 12) {
        const cplx checks[] = {c(6) - c(2) * c(3), c(10) - c(2) * c(5), c(12) - c(3) * c(4),
                               c(4) - (c(2) * c(2) - 1.0), c(9) - (c(3) * c(3) - 1.0)};
        for (auto d : checks) rep.hecke_residual = std::max(rep.hecke_residual, std::abs(d));
    }
    rep.ok = rep.eigenvalue_residual < cfg.tolerance && rep.automorphy_residual < cfg.tolerance;
    return rep;
}

void flag_invalid(std::vector<CuspFormRecord>& forms, const CuspValidationConfig& cfg) {
    for (auto& f : forms) f.flagged = !validate_cuspform(f, cfg).ok;
}

}  // namespace modsurf
