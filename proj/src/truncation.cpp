#include "modsurf/truncation.hpp"

#include <cmath>

#include "modsurf/rankin_selberg.hpp"
#include "modsurf/special_functions.hpp"

namespace modsurf {

TruncationHeight::TruncationHeight(double t) : T(t) {
    if (!(t > 1.0)) throw DomainError("truncation height must exceed 1");
}

cplx truncated_eisenstein(SpectralParam s, UpperHalfPoint z, TruncationHeight T, const EisensteinEvalConfig& cfg) {
    const UpperHalfPoint r = reduce_to_fundamental_domain(z).z;
    cplx v = eisenstein_eval(s, r, cfg);
    if (r.y >= T.T) v -= constant_term(s, r.y);
    return v;
}

Field truncated_eisenstein_field(cplx s, TruncationHeight T, const EisensteinEvalConfig& cfg) {
    Field f = eisenstein_field(s, cfg);
    auto row = f.row;
    const double t = T.T;
    f.row = [row, s, t](double y) {
        FourierRow r = row(y);
        if (y >= t) r.c0 -= constant_term(s, y);
        return r;
    };
    f.cusp = {};
    f.cusp_from = t;
    f.breaks = {t};
    return f;
}

namespace {

cplx tpow(double T, cplx e) { return std::exp(e * std::log(T)); }

}  // namespace

cplx maass_selberg_closed(cplx r, cplx s, TruncationHeight T) {
    if (r == cplx(1.0) || s == cplx(1.0)) throw PoleError("Maass-Selberg relation needs r, s != 1");
    if (std::abs(eigenvalue(r) - eigenvalue(s)) <= 1e-12 * (1 + std::abs(eigenvalue(r))))
        throw DegenerateEigenvalue("Maass-Selberg relation needs r(r-1) != s(s-1)");
    const cplx cr = c_coefficient(r), cs = c_coefficient(s);
    const double t = T.T;
    return tpow(t, r + s - 1.0) / (r + s - 1.0) + cr * tpow(t, s - r) / (s - r) + cs * tpow(t, r - s) / (r - s) +
           cr * cs * tpow(t, 1.0 - r - s) / (1.0 - r - s);
}

cplx maass_selberg_E1star(cplx s, TruncationHeight T) {
    const cplx v = std::conj(s);
    if (v == cplx(0.0) || v == cplx(1.0)) throw PoleError("E_1* pairing needs s(s-1) != 0");
    const double t = T.T, L = std::log(t);
    const double C = e1star_constant(), k = eisenstein_residue;
    const cplx below = tpow(t, v) / v + C * tpow(t, v - 1.0) / (v - 1.0) - k * tpow(t, v - 1.0) / (v - 1.0) * L +
                       k * tpow(t, v - 1.0) / ((v - 1.0) * (v - 1.0));
    const cplx above = tpow(t, 1.0 - v) / (1.0 - v) - C * tpow(t, -v) / v + k * tpow(t, -v) / v * L +
                       k * tpow(t, -v) / (v * v);
    return below + c_coefficient(v) * above;
}

cplx truncated_constant_pairing(cplx s, TruncationHeight T, cplx kappa) {
    const cplx v = std::conj(s);
    if (v == cplx(0.0) || v == cplx(1.0)) throw PoleError("constant pairing needs s != 0, 1");
    const double t = T.T;
    return kappa * (tpow(t, v - 1.0) / (v - 1.0) - c_coefficient(v) * tpow(t, -v) / v);
}

cplx truncated_pairing_EaEb(cplx s, cplx alpha, cplx beta, TruncationHeight T, long long N) {
    const cplx v = std::conj(s);
    const double t = T.T;
    const cplx ca = c_coefficient(alpha), cb = c_coefficient(beta), cv = c_coefficient(v);

    cplx poly = tpow(t, v + alpha + beta - 1.0) / (v + alpha + beta - 1.0) +
                ca * tpow(t, v - alpha + beta) / (v - alpha + beta) +
                cb * tpow(t, v + alpha - beta) / (v + alpha - beta) +
                ca * cb * tpow(t, v - alpha - beta + 1.0) / (v - alpha - beta + 1.0);
    poly += cv * (tpow(t, alpha + beta - v) / (alpha + beta - v) +
                  ca * tpow(t, 1.0 - v - alpha + beta) / (1.0 - v - alpha + beta) +
                  cb * tpow(t, 1.0 - v + alpha - beta) / (1.0 - v + alpha - beta) +
                  ca * cb * tpow(t, 2.0 - v - alpha - beta) / (2.0 - v - alpha - beta));

    // Mode n contributes over y <= T, i.e. u = n y <= n T after rescaling:
    // phi phi n^(-v) [M(v) - int_{nT}^inf], and above T
    // c_v phi phi n^(v-1) int_{nT}^inf u^(-1-v) W W du.
    cplx tail_low = 0, tail_high = 0;
    const long long cap = N > 0 ? N : 200;
    for (long long n = 1; n <= cap; ++n) {
        const cplx pp = phi_coefficient(n, alpha) * phi_coefficient(n, beta);
        const double ln = std::log(double(n));
        const cplx lo = pp * std::exp(-v * ln) * mellin_WW_range(v, alpha, beta, double(n) * t, inf);
        const cplx hi = pp * std::exp((v - 1.0) * ln) * mellin_WW_range(1.0 - v, alpha, beta, double(n) * t, inf);
        tail_low += lo;
        tail_high += hi;
        if (N <= 0 && std::abs(lo) + std::abs(hi) <= 1e-18 * (std::abs(tail_low) + std::abs(tail_high) + 1e-300))
            break;
    }
    const cplx L = Lambda_continuous_at(v, alpha, beta);  // 2 P P L-closed-form * M(v)
    return poly + L - 2.0 * tail_low - 2.0 * cv * tail_high;
}

cplx truncated_pairing_S(const SubtractionPlan& plan, cplx s, TruncationHeight T) {
    cplx v = truncated_pairing_EaEb(s, plan.alpha, plan.beta, T);
    for (const auto& term : plan.terms)
        v -= term.coef * (term.e1star ? maass_selberg_E1star(s, T) : maass_selberg_closed(term.param, std::conj(s), T));
    return v - truncated_constant_pairing(s, T, plan.constant);
}

std::vector<TruncationLimitRow> truncation_limit_check(cplx s, cplx alpha, cplx beta, const std::vector<double>& T_list) {
    if (std::abs(s.real() - 0.5) > 1e-12) throw DomainError("truncation_limit_check needs s on the critical line");
    const SubtractionPlan plan = subtraction_plan(alpha, beta);
    const Field S = s_field(plan);
    const cplx full = inner_product_oracle(S, eisenstein_field(s));
    const CuspSeries above = S.cusp * constant_term_series(s).conj();
    std::vector<TruncationLimitRow> out;
    for (double t : T_list) {
        const TruncationHeight T(t);
        const cplx trunc = inner_product_oracle(S, truncated_eisenstein_field(s, T));
        out.push_back({t, std::abs(trunc - full), std::abs(above.integral_from(t))});
    }
    return out;
}

}  // namespace modsurf
