#include "modsurf/eisenstein.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

#include "modsurf/special_functions.hpp"

namespace modsurf {

void validate(const EisensteinEvalConfig& cfg) {
    if (cfg.fourier_terms < 0) throw DomainError("fourier_terms must be >= 1 (or 0 for automatic)");
    if (cfg.oracle_lattice_bound < 1) throw DomainError("lattice bound must be >= 1");
    validate(cfg.quadrature);
}

namespace {

bool is_pole_of_gamma(cplx s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real());
}

// pi^s / (Gamma(s) zeta(2s)); zero where Gamma has a pole.
cplx phi_prefactor(cplx s) {
    if (is_pole_of_gamma(s)) return 0.0;
    if (s == cplx(0.5)) throw PoleError("phi has a pole at s = 1/2 (zeta(2s) = zeta(1))");
    const cplx z = riemann_zeta(2.0 * s);
    if (z == cplx(0.0)) throw PoleError("phi has a pole where zeta(2s) vanishes");
    return std::exp(s * std::log(pi) - log_gamma(s)) / z;
}

}  // namespace

cplx phi_coefficient(long long n, SpectralParam s) {
    if (n == 0) throw DomainError("phi is defined for n != 0");
    const long long m = std::llabs(n);
    return phi_prefactor(s.s) * sigma_power(m, 2.0 * s.s - 1.0) * std::exp(-(s.s - 0.5) * std::log(double(m)));
}

std::vector<FourierCoefficient> phi_coefficients(SpectralParam s, int count) {
    std::vector<FourierCoefficient> out;
    const cplx P = phi_prefactor(s.s);
    for (long long n = 1; n <= count; ++n)
        out.push_back({n, P * sigma_power(n, 2.0 * s.s - 1.0) * std::exp(-(s.s - 0.5) * std::log(double(n)))});
    return out;
}

cplx fourier_mode(cplx s, long long n, double y) {
    const double ny = double(std::llabs(n)) * y;
    return 2.0 * std::sqrt(y) * bessel_k(s - 0.5, 2 * pi * ny);
}

int default_fourier_terms(cplx s, double y) {
    const int base = std::max(10, static_cast<int>(std::ceil(5.0 / y)));
    return base + static_cast<int>(std::ceil(std::abs(s.imag()) / (2 * pi * y)));
}

cplx constant_term(SpectralParam s, double y) {
    if (!(y > 0)) throw DomainError("constant term needs y > 0");
    if (s.s == cplx(1.0)) return y + e1star_constant() - eisenstein_residue * std::log(y);
    const double L = std::log(y);
    return std::exp(s.s * L) + c_coefficient(s.s) * std::exp((1.0 - s.s) * L);
}

CuspSeries constant_term_series(cplx s) {
    CuspSeries c;
    if (s == cplx(1.0)) {
        c.terms = {{1.0, 1.0, 0}, {e1star_constant(), 0.0, 0}, {-eisenstein_residue, 0.0, 1}};
    } else {
        c.terms = {{1.0, s, 0}, {c_coefficient(s), 1.0 - s, 0}};
    }
    c.simplify();
    return c;
}

FourierRow eisenstein_row(cplx s, double y, const EisensteinEvalConfig& cfg, double* tail) {
    if (s == cplx(1.0)) throw PoleError("E_s has a pole at s = 1");
    if (!(y > 0)) throw DomainError("Eisenstein row needs y > 0");
    FourierRow row;
    row.c0 = constant_term(s, y);
    const double q = std::exp(-2 * pi * y);
    if (s == cplx(0.5)) {
        // E_{1/2} vanishes identically.
        if (tail) *tail = 0;
        return row;
    }
    const cplx P = phi_prefactor(s);
    const cplx w = 2.0 * s - 1.0;
    auto coef = [&](long long n) {
        return 2.0 * P * sigma_power(n, w) * std::exp(-(s - 0.5) * std::log(double(n))) * fourier_mode(s, n, y);
    };

    if (cfg.fourier_terms > 0) {
        for (long long n = 1; n <= cfg.fourier_terms; ++n) row.cos.push_back(coef(n));
        if (tail) *tail = std::abs(coef(cfg.fourier_terms + 1)) / (1 - q);
        return row;
    }

    const int nmin = default_fourier_terms(s, y);
    double scale = std::abs(row.c0);
    int small = 0;
    for (long long n = 1; n <= 4000; ++n) {
        const cplx a = coef(n);
        row.cos.push_back(a);
        scale = std::max(scale, std::abs(a));
        small = std::abs(a) <= 1e-17 * scale ? small + 1 : 0;
        if (n >= nmin && small >= 2) {
            if (tail) *tail = std::abs(a) * q / (1 - q);
            row.trim(1e-19);
            return row;
        }
    }
    throw NonConvergence("Fourier expansion of E_s did not decay");
}

Field eisenstein_field(cplx s, const EisensteinEvalConfig& cfg) {
    if (s == cplx(1.0)) throw PoleError("E_s has a pole at s = 1");
    Field f;
    f.row = [s, cfg](double y) { return eisenstein_row(s, y, cfg); };
    f.cusp = constant_term_series(s);
    return f;
}

EvalResult eisenstein_eval_ex(SpectralParam s, UpperHalfPoint z, const EisensteinEvalConfig& cfg) {
    validate(cfg);
    const UpperHalfPoint r = reduce_to_fundamental_domain(z).z;
    EvalResult out;
    const FourierRow row = eisenstein_row(s.s, r.y, cfg, &out.tail_bound);
    out.value = row.eval(r.x);
    out.terms = static_cast<int>(row.cos.size());
    return out;
}

cplx eisenstein_eval(SpectralParam s, UpperHalfPoint z, const EisensteinEvalConfig& cfg) {
    return eisenstein_eval_ex(s, z, cfg).value;
}

EvalResult eisenstein_eval_direct(SpectralParam s, UpperHalfPoint z, const EisensteinEvalConfig& cfg) {
    validate(cfg);
    if (s.s.real() <= 1.0) throw DomainError("the coset sum converges only for Re s > 1");
    const UpperHalfPoint r = reduce_to_fundamental_domain(z).z;
    const long long B = cfg.oracle_lattice_bound;
    cplx sum = 0;
    for (long long c = -B; c <= B; ++c) {
        for (long long d = -B; d <= B; ++d) {
            if (std::gcd(c, d) != 1) continue;
            const double re = double(c) * r.x + double(d), im = double(c) * r.y;
            sum += std::exp(-s.s * std::log(re * re + im * im));
        }
    }
    EvalResult out;
    const double ys = std::pow(r.y, s.s.real());
    out.value = 0.5 * std::exp(s.s * std::log(r.y)) * sum;
    // Coprime pairs outside the box lie outside the disc of radius B*min(y, 1/2).
    const double r0 = double(B) * std::min(r.y, 0.5);
    const double sig = s.s.real();
    out.tail_bound = 0.5 * ys * (6 / (pi * pi)) * 2 * pi * std::pow(r0, 2 - 2 * sig) / ((2 * sig - 2) * r.y);
    out.terms = static_cast<int>(2 * B + 1);
    return out;
}

cplx eisenstein_lattice_disk(cplx s, UpperHalfPoint z, double radius) {
    if (s.real() <= 1.0) throw DomainError("the lattice sum converges only for Re s > 1");
    if (!(z.y > 0)) throw DomainError("point not in the upper half-plane");
    const double R2 = radius * radius;
    const long long cmax = static_cast<long long>(std::floor(radius / z.y));
    cplx sum = 0;
    for (long long c = -cmax; c <= cmax; ++c) {
        const double cy = double(c) * z.y;
        const double rem = R2 - cy * cy;
        if (rem < 0) continue;
        const double center = -double(c) * z.x, half = std::sqrt(rem);
        cplx row = 0;
        for (long long d = static_cast<long long>(std::ceil(center - half)); d <= std::floor(center + half); ++d) {
            if (c == 0 && d == 0) continue;
            const double re = double(c) * z.x + double(d);
            row += std::exp(-s * std::log(re * re + cy * cy));
        }
        sum += row;
    }
    // Points beyond the disc, replaced by their density 1/y per unit area.
    const cplx tail = 2 * pi * std::exp((2.0 - 2.0 * s) * std::log(radius)) / ((2.0 * s - 2.0) * z.y);
    return std::exp(s * std::log(z.y)) * (sum + tail) / (2.0 * riemann_zeta(2.0 * s));
}

double e1star_constant() {
    static std::once_flag once;
    static double C = 0;
    std::call_once(once, [] {
        const HoloFunction f = [](cplx s) { return (s - 1.0) * c_coefficient(s); };
        C = complex_derivative(f, 1.0).real();
    });
    return C;
}

FourierRow e1star_row(double y, const EisensteinEvalConfig& cfg) {
    if (!(y > 0)) throw DomainError("E_1* row needs y > 0");
    FourierRow row;
    row.c0 = constant_term(1.0, y);
    // phi(n,1) W_1(n y)/sqrt(n) = 6 sigma_1(n) exp(-2 pi n y) / (pi n)
    const int N = cfg.fourier_terms > 0 ? cfg.fourier_terms : 4000;
    for (long long n = 1; n <= N; ++n) {
        const double a = 12.0 * sigma_power(n, 1.0).real() * std::exp(-2 * pi * double(n) * y) / (pi * double(n));
        row.cos.push_back(a);
        if (cfg.fourier_terms == 0 && a < 1e-18 * std::abs(row.c0) && n >= 10) break;
    }
    return row;
}

Field e1star_field(const EisensteinEvalConfig& cfg) {
    Field f;
    f.row = [cfg](double y) { return e1star_row(y, cfg); };
    f.cusp = constant_term_series(1.0);
    return f;
}

cplx eisenstein_E1star(UpperHalfPoint z, const EisensteinEvalConfig& cfg) {
    validate(cfg);
    const UpperHalfPoint r = reduce_to_fundamental_domain(z).z;
    return e1star_row(r.y, cfg).eval(r.x);
}

ResidueEstimate residue_extrapolation(UpperHalfPoint z, int k_min, int k_max, const EisensteinEvalConfig& cfg) {
    if (k_min < 1 || k_max < k_min) throw DomainError("residue extrapolation needs 1 <= k_min <= k_max");
    ResidueEstimate out;
    for (int k = k_min; k <= k_max; ++k) {
        const double h = std::pow(10.0, -k);
        out.symmetric.push_back(0.5 * h * (eisenstein_eval(1.0 + h, z, cfg) - eisenstein_eval(1.0 - h, z, cfg)));
    }
    // The symmetric average is even in h, so each level removes one power of h^2 = 10^-2k.
    std::vector<cplx> t = out.symmetric;
    double ratio = 100.0;
    while (t.size() > 1) {
        std::vector<cplx> next;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) next.push_back((ratio * t[i + 1] - t[i]) / (ratio - 1.0));
        t = std::move(next);
        ratio *= 100.0;
    }
    out.value = t.front();
    out.spread = std::abs(out.value - out.symmetric.back());
    return out;
}

}  // namespace modsurf
