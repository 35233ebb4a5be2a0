// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "modsurf/cuspform_data.hpp"
#include "modsurf/eisenstein.hpp"
#include "modsurf/rankin_selberg.hpp"
#include "modsurf/regimes.hpp"
#include "modsurf/spectral_solver.hpp"
#include "modsurf/special_functions.hpp"
#include "modsurf/truncation.hpp"

using namespace modsurf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void run(int n, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
}

const std::vector<CuspFormRecord>& bundled() {
    static const std::vector<CuspFormRecord> f = load_cuspforms(default_cuspform_path());
    return f;
}

std::vector<CuspFormRecord> first_forms(std::size_t k) {
    return {bundled().begin(), bundled().begin() + std::ptrdiff_t(std::min(k, bundled().size()))};
}

const std::vector<UpperHalfPoint> interior = {{0.1, 1.2}, {0.2, 1.3}, {-0.3, 1.1}, {0.0, 1.6}, {0.4, 2.0}};

std::shared_ptr<const SpectralExpansion> regime_one_expansion() {
    static const auto e = std::make_shared<const SpectralExpansion>(expand_S(0.6, 1.5, first_forms(3)));
    return e;
}

Outcome functional_equation() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> re(0.05, 0.95), im(-8.0, 8.0), x(-0.5, 0.5), y(0.5, 3.0);
    const auto t0 = Clock::now();
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        const cplx s(re(rng), im(rng));
        const UpperHalfPoint z{x(rng), y(rng)};
        const cplx lhs = completed_xi(2.0 * s) * eisenstein_eval(s, z);
        const cplx rhs = completed_xi(2.0 - 2.0 * s) * eisenstein_eval(1.0 - s, z);
        worst = std::max(worst, rel(lhs, rhs));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-8 && t < 30, "max rel " + fmt("%.2e", worst) + " over 50 cases, runtime " + fmt("%.2f", t) + " s"};
}

Outcome eigenfunction() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(0.05, 2.5), im(-6.0, 6.0), x(-0.5, 0.5), y(0.9, 2.5);
    double worst = 0, order_lo = 1e9, order_hi = -1e9;
    for (int k = 0; k < 20; ++k) {
        const cplx s(re(rng), im(rng));
        const UpperHalfPoint z{x(rng), y(rng)};
        const ScalarField E = [s](UpperHalfPoint p) { return eisenstein_eval(s, p); };
        const cplx target = eigenvalue(s) * E(z);
        const double e1 = std::abs(hyperbolic_laplacian_fd(E, z, 1e-3) - target);
        const double e2 = std::abs(hyperbolic_laplacian_fd(E, z, 5e-4) - target);
        worst = std::max(worst, e1 / std::abs(target));
        const double order = std::log2(e1 / e2);
        order_lo = std::min(order_lo, order);
        order_hi = std::max(order_hi, order);
    }
    const bool ok = worst <= 1e-4 && order_lo >= 1.7 && order_hi <= 2.3;
    return {ok, "max rel " + fmt("%.2e", worst) + " at h=1e-3, observed order in [" + fmt("%.3f", order_lo) + ", " +
                    fmt("%.3f", order_hi) + "]"};
}

Outcome lattice_oracle() {
    double worst = 0;
    for (cplx s : {cplx(2.0), cplx(3.0), cplx(2.5, 1.0)})
        for (UpperHalfPoint z : {UpperHalfPoint{0.0, 1.0}, UpperHalfPoint{0.3, 1.4}, UpperHalfPoint{-0.45, 0.9}})
            worst = std::max(worst, rel(eisenstein_eval(s, z), eisenstein_lattice_disk(s, z, 400)));
    return {worst <= 1e-8, "max rel " + fmt("%.2e", worst) + " over 9 cases (lattice disk radius 400)"};
}

Outcome residue() {
    double worst = 0;
    for (UpperHalfPoint z : {UpperHalfPoint{0.0, 1.0}, UpperHalfPoint{0.3, 1.7}, UpperHalfPoint{-0.2, 0.9}})
        worst = std::max(worst, std::abs(residue_extrapolation(z, 3, 6).value - eisenstein_residue));
    return {worst <= 1e-6, "max |limit - 3/pi| " + fmt("%.2e", worst) + " at 3 points"};
}

Outcome maass_selberg() {
    const TruncationHeight T(3.0);
    const std::vector<cplx> rs = {{2.0, 0.5}, {0.7, 1.0}, {1.5, 0.0}};
    const std::vector<cplx> ss = {{0.5, 3.0}, {0.8, -2.0}, {2.5, 0.3}};
    double grid = 0;
    for (cplx r : rs)
        for (cplx s : ss) {
            const cplx oracle =
                inner_product_oracle(truncated_eisenstein_field(r, T), truncated_eisenstein_field(std::conj(s), T));
            grid = std::max(grid, rel(maass_selberg_closed(r, s, T), oracle));
        }
    double other = 0;
    for (cplx s : {cplx(0.5, 2.0), cplx(0.7, -1.0)}) {
        const Field tE = truncated_eisenstein_field(s, T);
        other = std::max(other, rel(maass_selberg_E1star(s, T), inner_product_oracle(e1star_field(), tE)));
        const cplx k(0.4, -0.2);
        other = std::max(other, rel(truncated_constant_pairing(s, T, k), inner_product_oracle(constant_field(k), tE)));
    }
    return {grid <= 1e-5 && other <= 1e-4,
            "3x3 grid max rel " + fmt("%.2e", grid) + "; E_1* and constant pairings max rel " + fmt("%.2e", other)};
}

// int F conj(G) dx dy / y^2 over the fundamental domain below y_cap, by
// tensor Gauss-Legendre panels split at the truncation height. Independent
// of the Fourier-row oracle.
cplx pointwise_pairing(const ScalarField& F, const ScalarField& G, double T, double y_cap) {
    std::vector<double> xn, xw;
    panel_rule({-0.5, -0.25, 0.0, 0.25, 0.5}, 20, xn, xw);
    cplx total = 0;
    for (std::size_t i = 0; i < xn.size(); ++i) {
        const double y0 = std::sqrt(1 - xn[i] * xn[i]);
        std::vector<double> breaks;
        for (int k = 0; k <= 4; ++k) breaks.push_back(y0 + (T - y0) * k / 4);
        for (double y = T + 1; y < y_cap; y += 1) breaks.push_back(y);
        breaks.push_back(y_cap);
        std::vector<double> yn, yw;
        panel_rule(breaks, 20, yn, yw);
        cplx inner = 0;
        for (std::size_t j = 0; j < yn.size(); ++j) {
            const UpperHalfPoint z{xn[i], yn[j]};
            inner += yw[j] * F(z) * std::conj(G(z)) / (yn[j] * yn[j]);
        }
        total += xw[i] * inner;
    }
    return total;
}

Outcome one_factor_truncation() {
    const TruncationHeight T(2.5);
    const std::vector<std::pair<cplx, cplx>> pairs = {
        {{0.5, 2.0}, {0.5, 3.5}}, {{0.7, 1.0}, {0.5, 1.0}}, {2.0, {0.6, -0.4}}, {{1.3, 0.2}, 1.8}, {{0.5, 6.0}, {0.9, 0.0}}};
    double worst = 0;
    for (auto [r, s] : pairs) {
        const cplx sb = std::conj(s);
        const cplx both = inner_product_oracle(truncated_eisenstein_field(r, T), truncated_eisenstein_field(sb, T));
        const ScalarField Er = [r](UpperHalfPoint z) { return eisenstein_eval(r, z); };
        const ScalarField tEs = [sb, T](UpperHalfPoint z) { return truncated_eisenstein(sb, z, T); };
        const cplx one = pointwise_pairing(Er, tEs, T.T, 14.0);
        worst = std::max(worst, std::abs(both - one) / std::max(1.0, std::abs(both)));
    }
    return {worst <= 1e-6, "max difference " + fmt("%.2e", worst) + " over 5 pairs at T=2.5 (one side by pointwise quadrature)"};
}

Outcome unwinding() {
    double worst = 0;
    for (auto [a, b] : {std::pair<cplx, cplx>{0.6, 1.5}, {{0.7, 0.3}, {1.4, -0.5}}, {0.55, 2.2}}) {
        if (classify(a, b) != Regime::I) return {false, "test pair is not in regime I"};
        const Field F = eisenstein_field(a) * eisenstein_field(b) - eisenstein_field(a + b) -
                        c_coefficient(a) * eisenstein_field(1.0 - a + b);
        worst = std::max(worst, std::abs(inner_product_oracle(F, constant_field(1.0))));
    }
    return {worst <= 1e-4, "max |<S,1>| " + fmt("%.2e", worst) + " over 3 regime I pairs"};
}

Outcome residual_spectrum() {
    std::string detail;
    bool ok = true;
    for (auto [a, b] : {std::pair<double, double>{0.6, 1.5}, {0.8, 1.1}, {0.6, 0.7}, {0.8, 0.8}, {0.6, 0.6}}) {
        const SubtractionPlan p = subtraction_plan(a, b);
        const double v = std::abs(inner_product_oracle(s_field(p), constant_field(1.0))) / (pi / 3);
        ok = ok && v < 1e-4;
        detail += (detail.empty() ? "" : ", ") + to_string(p.regime) + " " + fmt("%.1e", v);
    }
    return {ok, detail};
}

Outcome continuous_coefficient() {
    const double a = 0.6, b = 1.5;
    const Field S = s_field(subtraction_plan(a, b));
    double unfolded = 0, shifted = 0;
    for (double t : {0.3, 1.0, 2.0, 4.5, -3.0}) {
        const cplx s(0.5, t);
        const cplx oracle = inner_product_oracle(S, eisenstein_field(s));
        unfolded = std::max(unfolded, rel(Lambda_continuous(s, a, b, LNormalization::Unfolded), oracle));
        shifted = std::max(shifted, rel(Lambda_continuous(s, a, b, LNormalization::ShiftedExponent), oracle));
    }
    const char* chosen = unfolded <= 1e-3 ? "unfolded" : (shifted <= 1e-3 ? "shifted" : "none");
    return {unfolded <= 1e-3, std::string("normalization ") + chosen + " (default); max rel " + fmt("%.2e", unfolded) +
                                  ", shifted alternative " + fmt("%.2e", shifted)};
}

Outcome cuspidal_coefficient() {
    const CuspFormRecord& f = bundled().front();
    const cplx oracle = inner_product_oracle(s_field(subtraction_plan(0.6, 1.5)), cuspform_field(f));
    const double r = rel(Lambda_cuspidal(0.6, f, 1.5), oracle);
    return {r <= 1e-2, "R=" + fmt("%.6f", f.R) + " rel " + fmt("%.2e", r)};
}

Outcome synthesis() {
    const auto e = regime_one_expansion();
    double worst = 0;
    for (auto z : interior) worst = std::max(worst, rel(synthesize(*e, z), s_eval(e->plan, z)));
    return {worst <= 0.02, "max rel " + fmt("%.2e", worst) + " at 5 points, 3 cusp forms, T_spec=30"};
}

Outcome solution_residual() {
    const SolutionHandle u = solve_u(regime_one_expansion(), 1.5);
    double worst = 0;
    bool monotone = true;
    std::string seq;
    for (auto z : interior) {
        const std::vector<double> r = residual_by_form_count(u, z, 1e-3);
        worst = std::max(worst, r.back());
        for (std::size_t k = 1; k < r.size(); ++k) monotone = monotone && r[k] < r[k - 1];
        if (seq.empty())
            for (double v : r) seq += (seq.empty() ? "" : " ") + fmt("%.3e", v);
    }
    return {worst < 0.05 && monotone, "max residual " + fmt("%.2e", worst) + "; strict decrease 0->3 forms " +
                                          (monotone ? "yes" : "no") + " (at (0.1,1.2): " + seq + ")"};
}

Outcome continuation() {
    const auto e = regime_one_expansion();
    const UpperHalfPoint z = interior[1];
    double sym = 0;
    for (cplx w : {cplx(0.3, 1.0), cplx(0.8, 2.5)}) {
        const cplx a = solve_u_continued(e, w).J(z), b = solve_u_continued(e, 1.0 - w).J(z);
        sym = std::max(sym, rel(a, b));
    }
    const cplx w(0.7, 1.0);
    const double agree = rel(solve_u_continued(e, w)(z), solve_u(e, w)(z));
    return {sym <= 1e-4 && agree <= 1e-4,
            "J_w vs J_(1-w) max rel " + fmt("%.2e", sym) + "; continued vs direct at w=0.7+1i rel " + fmt("%.2e", agree)};
}

Outcome zeta_zero_boundary() {
    const auto t0 = Clock::now();
    const BoundaryScanResult r = scan_boundary(BoundaryLine::ReThreeQuarters, 0.5, 10.0, 0.001);
    const double t = seconds_since(t0);
    if (r.minima.empty()) return {false, "no minimum found"};
    const double first = r.minima.front();
    const bool ok = std::abs(first - 7.0674) <= 1e-3 && t < 120;
    return {ok, "first minimum at Im alpha = " + fmt("%.6f", first) + " with |c| " + fmt("%.1e", r.minima_abs_c.front()) +
                    ", " + std::to_string(r.rows.size()) + " rows in " + fmt("%.2f", t) + " s"};
}

Outcome regime_limit() {
    std::string detail;
    bool ok = true;
    for (cplx a : {cplx(2.0), cplx(0.9, 1.0)}) {
        const double d1 = limit_consistency_check(a, 1e-4), d2 = limit_consistency_check(a, 5e-5);
        const double ratio = d1 / d2;
        ok = ok && d1 < 1e-3 && ratio >= 1.7 && ratio <= 2.3;
        detail += (detail.empty() ? "" : "; ") + std::string("alpha=") + fmt("%g", a.real()) +
                  (a.imag() != 0 ? "+" + fmt("%g", a.imag()) + "i" : "") + " d=" + fmt("%.2e", d1) +
                  " ratio " + fmt("%.3f", ratio);
    }
    const double info = limit_consistency_check(0.9, 1e-4);
    detail += "; informational alpha=0.9 d=" + fmt("%.2e", info);
    return {ok, detail};
}

}  // namespace

int main() {
    run(1, "functional equation", functional_equation);
    run(2, "eigenfunction (finite differences)", eigenfunction);
    run(3, "Fourier vs lattice sum", lattice_oracle);
    run(4, "residue at s=1", residue);
    run(5, "Maass-Selberg relations", maass_selberg);
    run(6, "truncating one factor", one_factor_truncation);
    run(7, "unwinding", unwinding);
    run(8, "residual spectrum", residual_spectrum);
    run(9, "continuous coefficient", continuous_coefficient);
    run(10, "cuspidal coefficient", cuspidal_coefficient);
    run(11, "spectral synthesis", synthesis);
    run(12, "solution residual", solution_residual);
    run(13, "continuation in w", continuation);
    run(14, "zeta-zero boundary scan", zeta_zero_boundary);
    run(15, "equal-parameter limit", regime_limit);
    std::printf("%d of 15 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
