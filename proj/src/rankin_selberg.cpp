#include "modsurf/rankin_selberg.hpp"

#include <algorithm>
#include <cmath>

#include "modsurf/eisenstein.hpp"
#include "modsurf/special_functions.hpp"

namespace modsurf {

cplx phi_prefactor(cplx s) { return std::exp(s * std::log(pi) - log_gamma(s)) / riemann_zeta(2.0 * s); }

namespace {

// sigma_a(n) for n = 1..N by a divisor sieve; index 0 unused.
std::vector<cplx> sigma_table(cplx a, long long N) {
    std::vector<cplx> t(std::size_t(N + 1), 0.0);
    for (long long d = 1; d <= N; ++d) {
        const cplx p = std::exp(a * std::log(double(d)));
        for (long long m = d; m <= N; m += d) t[std::size_t(m)] += p;
    }
    return t;
}

std::vector<double> sigma_table_real(double a, long long N) {
    std::vector<double> t(std::size_t(N + 1), 0.0);
    for (long long d = 1; d <= N; ++d) {
        const double p = std::pow(double(d), a);
        for (long long m = d; m <= N; m += d) t[std::size_t(m)] += p;
    }
    return t;
}

// sum_n sigma_a(n) sigma_b(n) n^(-w) by Ramanujan's identity.
cplx ramanujan(cplx w, cplx a, cplx b) {
    return riemann_zeta(w) * riemann_zeta(w - a) * riemann_zeta(w - b) * riemann_zeta(w - a - b) /
           riemann_zeta(2.0 * w - a - b);
}

double ramanujan_real(double w, double a, double b) {
    return (riemann_zeta(w) * riemann_zeta(w - a) * riemann_zeta(w - b) * riemann_zeta(w - a - b) /
            riemann_zeta(2 * w - a - b))
        .real();
}

cplx dirichlet_exponent(cplx v, LNormalization norm) { return norm == LNormalization::Unfolded ? v : v - 1.0; }

cplx l_pair_closed(cplx v, cplx alpha, cplx beta, LNormalization norm) {
    const cplx w = dirichlet_exponent(v, norm) + alpha + beta - 1.0;
    return 2.0 * phi_prefactor(alpha) * phi_prefactor(beta) * ramanujan(w, 2.0 * alpha - 1.0, 2.0 * beta - 1.0);
}

cplx shifted_gamma_factor_continuous(cplx v, cplx alpha, cplx beta) {
    const cplx lg = (alpha + beta - v) * std::log(pi) - log_gamma(alpha) - log_gamma(beta) +
                    log_gamma((v + alpha - beta) / 2.0) + log_gamma((v - alpha + beta) / 2.0) +
                    log_gamma((v + 1.0 - alpha - beta) / 2.0) + log_gamma((v - 1.0 + alpha + beta) / 2.0) -
                    log_gamma(v);
    return 0.5 * std::exp(lg);
}

cplx shifted_gamma_factor_cuspidal(cplx alpha, cplx beta, cplx sbar) {
    const cplx lg = (beta + sbar - alpha) * std::log(pi) - log_gamma(beta) - log_gamma(sbar) +
                    log_gamma((alpha + beta - sbar) / 2.0) + log_gamma((alpha - beta + sbar) / 2.0) +
                    log_gamma((alpha + 1.0 - beta - sbar) / 2.0) + log_gamma((alpha - 1.0 + beta + sbar) / 2.0) -
                    log_gamma(alpha);
    return 0.5 * std::exp(lg);
}

double row_scale(const Field& F) {
    double m = 0;
    for (double y : {0.87, 1.0, 1.5, 3.0}) {
        const FourierRow r = F.row(y);
        double a = std::abs(r.c0);
        for (auto c : r.cos) a += std::abs(c);
        for (auto c : r.sin) a += std::abs(c);
        m = std::max(m, a);
    }
    return m;
}

}  // namespace

LPairValue L_eisenstein_pair_at(cplx v, cplx alpha, cplx beta, long long N, LNormalization norm) {
    if (N < 1) throw DomainError("L_eisenstein_pair needs N >= 1");
    const cplx a = 2.0 * alpha - 1.0, b = 2.0 * beta - 1.0;
    const cplx w = dirichlet_exponent(v, norm) + alpha + beta - 1.0;
    const cplx pre = 2.0 * phi_prefactor(alpha) * phi_prefactor(beta);

    LPairValue out;
    out.terms_used = N;
    out.closed_form = pre * ramanujan(w, a, b);

    const auto sa = sigma_table(a, N), sb = sigma_table(b, N);
    cplx partial = 0;
    for (long long n = N; n >= 1; --n) partial += sa[std::size_t(n)] * sb[std::size_t(n)] * std::exp(-w * std::log(double(n)));
    out.dirichlet_partial = pre * partial;

    // |sigma_a(n)| <= sigma_{Re a}(n), so the real series dominates the tail.
    const double rw = w.real(), ra = a.real(), rb = b.real();
    if (std::min({rw, rw - ra, rw - rb, rw - ra - rb}) <= 1.0) {
        out.tail_estimate = inf;
        return out;
    }
    const auto ta = sigma_table_real(ra, N), tb = sigma_table_real(rb, N);
    double partial_real = 0;
    for (long long n = N; n >= 1; --n) partial_real += ta[std::size_t(n)] * tb[std::size_t(n)] * std::pow(double(n), -rw);
    const double full = ramanujan_real(rw, ra, rb);
    out.tail_estimate = std::abs(pre) * (std::max(0.0, full - partial_real) + 1e-14 * full);
    return out;
}

LPairValue L_eisenstein_pair(cplx s, cplx alpha, cplx beta, long long N, LNormalization norm) {
    return L_eisenstein_pair_at(std::conj(s), alpha, beta, N, norm);
}

cplx Lambda_continuous_at(cplx v, cplx alpha, cplx beta, LNormalization norm) {
    const cplx L = l_pair_closed(v, alpha, beta, norm);
    if (norm == LNormalization::Unfolded) return L * mellin_WW(v, alpha, beta);
    return L * shifted_gamma_factor_continuous(v, alpha, beta);
}

cplx Lambda_continuous(cplx s, cplx alpha, cplx beta, LNormalization norm) {
    return Lambda_continuous_at(std::conj(s), alpha, beta, norm);
}

cplx cuspform_completed_L(const CuspFormRecord& f, cplx s) {
    if (f.parity != Parity::Even) throw DomainError("completed L-function implemented for even forms only");
    // f(iy) = 4 sqrt(y) sum lambda_n K_{iR}(2 pi n y) = sqrt(y) theta(y).
    const RealIntegrand g = [&](double y) {
        const cplx theta = cuspform_row(f, y).eval(0.0) / std::sqrt(y);
        return theta * (std::exp(s * std::log(y)) + std::exp((1.0 - s) * std::log(y))) / y;
    };
    QuadratureSpec q;
    q.rel_tol = 1e-13;
    q.abs_tol = 1e-300;
    q.max_subdivisions = 2000;
    q.truncation_height = 4.0;
    return integrate(g, 1.0, inf, q);
}

cplx cuspform_L(const CuspFormRecord& f, cplx s) {
    const cplx iR(0.0, f.R);
    const cplx gamma = std::exp(-s * std::log(pi) + log_gamma((s + iR) / 2.0) + log_gamma((s - iR) / 2.0));
    return cuspform_completed_L(f, s) / gamma;
}

cplx Lambda_cuspidal(cplx alpha, const CuspFormRecord& f, cplx beta, long long N, CuspidalMethod method) {
    const cplx sf = f.s();
    if (method == CuspidalMethod::Continued) {
        if (f.parity == Parity::Odd) return 0.0;  // c_n + c_{-n} = 0
        const cplx c1 = f.coefficients.empty() ? cplx(0.0) : f.coefficients[0];
        if (c1 == cplx(0.0)) {
            for (auto c : f.coefficients)
                if (c != cplx(0.0)) throw DomainError("continued cuspidal coefficient needs a multiple of a Hecke form");
            return 0.0;
        }
        // f = c_1 f0 with f0 Hecke normalized; the pairing is conjugate-linear in f.
        CuspFormRecord g = f;
        for (auto& c : g.coefficients) c = std::conj(c / c1);
        const cplx L = cuspform_L(g, alpha + beta - 0.5) * cuspform_L(g, alpha - beta + 0.5);
        return std::conj(c1) * 2.0 * phi_prefactor(beta) * L / riemann_zeta(2.0 * alpha) * mellin_WW(alpha, beta, sf);
    }

    if (N <= 0) N = f.count();
    if (N > f.count())
        throw InsufficientCoefficients("cuspidal partial sum needs " + std::to_string(N) + " coefficients, have " +
                                       std::to_string(f.count()));
    const cplx expo = method == CuspidalMethod::PartialSum ? -alpha : 1.0 - alpha;
    cplx sum = 0;
    for (long long n = N; n >= 1; --n) {
        const cplx both = std::conj(f.coefficient(n)) + std::conj(f.coefficient(-n));
        if (both == cplx(0.0)) continue;
        sum += phi_coefficient(n, beta) * both * std::exp(expo * std::log(double(n)));
    }
    if (method == CuspidalMethod::PartialSum) return sum * mellin_WW(alpha, beta, sf);
    return sum * shifted_gamma_factor_cuspidal(alpha, beta, std::conj(sf));
}

OracleResult inner_product_oracle_ex(const Field& F, const Field& G, double y_cap, const QuadratureSpec& spec) {
    validate(spec);
    const double Y = std::max({y_cap, F.cusp_from, G.cusp_from, 1.0});
    QuadratureSpec q = spec;
    q.abs_tol = std::max(spec.abs_tol, 1e-6 * spec.rel_tol * row_scale(F) * row_scale(G));

    // Below y = 1 the domain is {|x| >= sqrt(1 - y^2)}; y = cos(phi) removes
    // the square-root endpoint behaviour.
    const RealIntegrand curved = [&](double phi) {
        const double y = std::cos(phi), u = std::sin(phi);
        const FourierRow p = F.row(y) * G.row(y).conj();
        return p.integral_outside(u) * u / (y * y);
    };
    OracleResult out;
    out.value = integrate(curved, 0.0, pi / 6, q);

    std::vector<double> pts = {1.0};
    for (const auto* br : {&F.breaks, &G.breaks})
        for (double b : *br)
            if (b > 1.0 && b < Y) pts.push_back(b);
    pts.push_back(Y);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const RealIntegrand flat = [&](double y) { return mean_of_product(F.row(y), G.row(y).conj()) / (y * y); };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.value += integrate(flat, pts[i], pts[i + 1], q);

    const CuspSeries top = F.cusp * G.cusp.conj();
    out.value += top.integral_from(Y);
    // What the cusp series misses at Y decays at least like exp(-2 pi y).
    const double miss = std::abs(mean_of_product(F.row(Y), G.row(Y).conj()) - top.eval(Y));
    out.tail_estimate = miss / (2 * pi * Y * Y);
    return out;
}

cplx inner_product_oracle(const Field& F, const Field& G, double y_cap, const QuadratureSpec& spec) {
    return inner_product_oracle_ex(F, G, y_cap, spec).value;
}

cplx inner_product_pointwise(const ScalarField& F, const ScalarField& G, double y_cap, const QuadratureSpec& spec) {
    validate(spec);
    const RealIntegrand outer = [&](double x) {
        const RealIntegrand inner = [&](double y) {
            const UpperHalfPoint z{x, y};
            return F(z) * std::conj(G(z)) / (y * y);
        };
        return integrate(inner, std::sqrt(1 - x * x), y_cap, spec);
    };
    return integrate(outer, -0.5, 0.5, spec);
}

double cuspform_norm2(const CuspFormRecord& f) {
    const Field F = cuspform_field(f);
    return inner_product_oracle(F, F).real();
}

}  // namespace modsurf
