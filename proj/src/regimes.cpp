#include "modsurf/regimes.hpp"

#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "modsurf/special_functions.hpp"

namespace modsurf {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::I: return "I";
        case Regime::IIa: return "IIa";
        case Regime::IIb: return "IIb";
        case Regime::IIIa: return "IIIa";
        case Regime::IIIb: return "IIIb";
        case Regime::BoundarySumThreeHalves: return "BoundarySumThreeHalves";
        case Regime::BoundaryReThreeQuarters: return "BoundaryReThreeQuarters";
        case Regime::BoundaryDiffHalf: return "BoundaryDiffHalf";
        case Regime::PoleAtOne: return "PoleAtOne";
        case Regime::NeedsReflection: return "NeedsReflection";
    }
    return "?";
}

bool is_boundary(Regime r) {
    return r == Regime::BoundarySumThreeHalves || r == Regime::BoundaryReThreeQuarters ||
           r == Regime::BoundaryDiffHalf;
}

namespace {

bool same(cplx a, cplx b) { return std::abs(a - b) <= regime_eps; }

struct Canonical {
    cplx alpha, beta;
    bool swapped;
};

Canonical canonical(cplx alpha, cplx beta) {
    if (beta.real() < alpha.real()) return {beta, alpha, true};
    return {alpha, beta, false};
}

}  // namespace

Regime classify(cplx alpha, cplx beta) {
    if (same(alpha, 1.0) || same(beta, 1.0)) return Regime::PoleAtOne;
    if (alpha.real() < 0.5 - regime_eps || beta.real() < 0.5 - regime_eps) return Regime::NeedsReflection;
    const auto [a, b, sw] = canonical(alpha, beta);
    (void)sw;
    const bool equal = same(a, b);
    if (equal && std::abs(a.real() - 0.75) <= regime_eps) return Regime::BoundaryReThreeQuarters;
    if (std::abs((a + b).real() - 1.5) <= regime_eps) return Regime::BoundarySumThreeHalves;
    if (std::abs(b.real() - a.real() - 0.5) <= regime_eps) return Regime::BoundaryDiffHalf;
    if (b.real() > a.real() + 0.5) return Regime::I;
    if (equal) return a.real() > 0.75 ? Regime::IIIa : Regime::IIIb;
    return (a + b).real() > 1.5 ? Regime::IIa : Regime::IIb;
}

cplx equal_parameter_constant(cplx alpha) { return eisenstein_residue * c_derivative(alpha); }

BoundaryVerdict solvability_on_boundary(cplx alpha, cplx beta, double tol) {
    const Regime r = classify(alpha, beta);
    if (!is_boundary(r)) throw DomainError("(alpha, beta) is not on a solvability boundary");
    const auto [a, b, sw] = canonical(alpha, beta);
    (void)sw;
    BoundaryVerdict v;
    const double ca = std::abs(c_coefficient(a));
    if (r == Regime::BoundarySumThreeHalves) {
        const double cb = std::abs(c_coefficient(b));
        v.min_abs_c = std::min(ca, cb);
        if (v.min_abs_c < tol) {
            v.solvable = true;
            v.witness = ca <= cb ? a : b;
        }
        return v;
    }
    // On Re alpha = 3/4 with alpha = beta, and on Re beta = Re alpha + 1/2,
    // only c_alpha can vanish usefully.
    v.min_abs_c = ca;
    if (ca < tol) {
        v.solvable = true;
        v.witness = a;
    }
    return v;
}

SubtractionPlan subtraction_plan(cplx alpha, cplx beta, double witness_tol) {
    SubtractionPlan p;
    p.regime = classify(alpha, beta);
    if (p.regime == Regime::PoleAtOne) throw PoleError("PoleAtOne: E_s has a pole at s = 1");
    if (p.regime == Regime::NeedsReflection)
        throw DomainError("NeedsReflection: rewrite E_s = c_s E_{1-s} so that Re alpha, Re beta >= 1/2");
    const auto [a, b, sw] = canonical(alpha, beta);
    p.alpha = a;
    p.beta = b;
    p.swapped = sw;

    if (is_boundary(p.regime)) {
        const BoundaryVerdict v = solvability_on_boundary(a, b, witness_tol);
        if (!v.solvable) throw UnsolvableBoundary("no zeta-zero witness on the " + to_string(p.regime) + " line");
        if (p.regime == Regime::BoundaryReThreeQuarters) {
            const cplx ca = c_coefficient(a);
            p.terms = {{1.0, 2.0 * a}, {2.0 * ca, 1.0, true}};
            p.constant = -equal_parameter_constant(a);
        } else if (*v.witness == a) {
            p.terms = {{1.0, a + b}, {c_coefficient(b), 1.0 + a - b}};
        } else {
            p.terms = {{1.0, a + b}, {c_coefficient(a), 1.0 - a + b}};
        }
        return p;
    }

    const cplx ca = c_coefficient(a);
    switch (p.regime) {
        case Regime::I: p.terms = {{1.0, a + b}, {ca, 1.0 - a + b}}; break;
        case Regime::IIa: p.terms = {{1.0, a + b}, {ca, 1.0 - a + b}, {c_coefficient(b), 1.0 + a - b}}; break;
        case Regime::IIb: {
            const cplx cb = c_coefficient(b);
            p.terms = {{1.0, a + b}, {ca, 1.0 - a + b}, {cb, 1.0 + a - b}, {ca * cb, 2.0 - a - b}};
            break;
        }
        case Regime::IIIa:
            p.terms = {{1.0, 2.0 * a}, {2.0 * ca, 1.0, true}};
            p.constant = -equal_parameter_constant(a);
            break;
        case Regime::IIIb:
            p.terms = {{1.0, 2.0 * a}, {2.0 * ca, 1.0, true}, {ca * ca, 2.0 - 2.0 * a}};
            p.constant = -equal_parameter_constant(a);
            break;
        default: break;
    }
    return p;
}

double limit_consistency_check(cplx alpha, double delta, UpperHalfPoint z) {
    if (same(alpha, 1.0)) throw PoleError("alpha = 1 is a pole");
    const cplx beta = alpha + delta;
    const cplx lhs = c_coefficient(alpha) * eisenstein_eval(1.0 - alpha + beta, z) +
                     c_coefficient(beta) * eisenstein_eval(1.0 + alpha - beta, z);
    const cplx rhs = 2.0 * c_coefficient(alpha) * eisenstein_E1star(z) - equal_parameter_constant(alpha);
    return std::abs(lhs - rhs);
}

BoundaryScanResult scan_boundary(BoundaryLine line, double t0, double t1, double step, double tol,
                                 double sum_line_re_alpha) {
    if (!(step > 0) || !(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1))
        throw DomainError("scan needs step > 0 and t0 <= t1");
    const double a_re = line == BoundaryLine::ReThreeQuarters ? 0.75 : sum_line_re_alpha;
    const auto abs_c = [&](double t) {
        const double ca = std::abs(c_coefficient(cplx(a_re, t)));
        if (line == BoundaryLine::ReThreeQuarters) return ca;
        return std::min(ca, std::abs(c_coefficient(cplx(1.5 - a_re, -t))));
    };

    BoundaryScanResult out;
    const long long n = static_cast<long long>(std::floor((t1 - t0) / step + 1e-9));
    for (long long i = 0; i <= n; ++i) {
        const double t = t0 + double(i) * step;
        const double c = abs_c(t);
        out.rows.push_back({t, c, c < tol, false});
    }
    for (std::size_t i = 1; i + 1 < out.rows.size(); ++i) {
        const auto &l = out.rows[i - 1], &m = out.rows[i], &r = out.rows[i + 1];
        if (!(m.abs_c <= l.abs_c && m.abs_c < r.abs_c)) continue;
        // |c|^2 is smooth at a simple zero, |c| is not.
        const auto sq = [&](double t) { return abs_c(t) * abs_c(t); };
        const auto [tm, c2] = boost::math::tools::brent_find_minima(sq, l.t, r.t, 52);
        const double c = std::sqrt(c2);
        out.minima.push_back(tm);
        out.minima_abs_c.push_back(c);
        if (c < tol) {
            out.rows[i].zero_candidate = true;
            out.zero_candidates.push_back(tm);
        }
    }
    return out;
}

Field plan_field(const SubtractionPlan& plan, const EisensteinEvalConfig& cfg) {
    Field f = constant_field(plan.constant);
    for (const auto& t : plan.terms)
        f = f + t.coef * (t.e1star ? e1star_field(cfg) : eisenstein_field(t.param, cfg));
    return f;
}

Field s_field(const SubtractionPlan& plan, const EisensteinEvalConfig& cfg) {
    return eisenstein_field(plan.alpha, cfg) * eisenstein_field(plan.beta, cfg) - plan_field(plan, cfg);
}

cplx plan_eval(const SubtractionPlan& plan, UpperHalfPoint z, const EisensteinEvalConfig& cfg) {
    cplx v = plan.constant;
    for (const auto& t : plan.terms)
        v += t.coef * (t.e1star ? eisenstein_E1star(z, cfg) : eisenstein_eval(t.param, z, cfg));
    return v;
}

cplx s_eval(const SubtractionPlan& plan, UpperHalfPoint z, const EisensteinEvalConfig& cfg) {
    return eisenstein_eval(plan.alpha, z, cfg) * eisenstein_eval(plan.beta, z, cfg) - plan_eval(plan, z, cfg);
}

}  // namespace modsurf
