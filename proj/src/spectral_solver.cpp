#include "modsurf/spectral_solver.hpp"

#include <algorithm>
#include <cmath>

#include "modsurf/rankin_selberg.hpp"
#include "modsurf/special_functions.hpp"

namespace modsurf {

namespace {

cplx line_point(double t) { return {0.5, t}; }

cplx density_at(const SubtractionPlan& plan, double t) { return Lambda_continuous(line_point(t), plan.alpha, plan.beta); }

std::vector<double> uniform_breaks(double T, double width) {
    const int panels = std::max(1, int(std::ceil(2 * T / width - 1e-9)));
    std::vector<double> b;
    for (int i = 0; i <= panels; ++i) b.push_back(-T + 2 * T * double(i) / panels);
    return b;
}

// Adds breaks at c, c +- d, c +- 2d, ... up to the base width, so Gauss rules
// stay accurate near a singularity at distance d from the real t-axis.
void grade_towards(std::vector<double>& breaks, double c, double d, double width, double T) {
    if (!(d < width) || c < -T - width || c > T + width) return;
    d = std::max(d, 1e-6);
    breaks.push_back(c);
    for (double h = d; h < width; h *= 2) {
        breaks.push_back(c - h);
        breaks.push_back(c + h);
    }
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return b < -T || b > T; }), breaks.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 breaks.end());
}

// Poles of the density in v = 1/2 - it coming from the zeta and Gamma
// factors (the zeros of zeta(2v) sit at distance 1/4 and are covered by
// the base width).
std::vector<cplx> density_poles(cplx a, cplx b) {
    std::vector<cplx> v = {2.0 - a - b, 1.0 + a - b, 1.0 - a + b, a + b};
    for (int k = 0; k < 8; ++k) {
        const double m = 2.0 * k;
        for (cplx p : {1.0 - a - b - m, -a + b - m, a - b - m, a + b - 1.0 - m}) v.push_back(p);
    }
    return v;
}

std::vector<double> spectral_breaks(const SubtractionPlan& plan, const SpectralConfig& cfg) {
    std::vector<double> br = uniform_breaks(cfg.T_spec, cfg.panel_width);
    for (cplx p : density_poles(plan.alpha, plan.beta))
        grade_towards(br, -p.imag(), std::abs(p.real() - 0.5), cfg.panel_width, cfg.T_spec);
    return br;
}

}  // namespace

SpectralExpansion expand_S(cplx alpha, cplx beta, const std::vector<CuspFormRecord>& forms, const SpectralConfig& cfg) {
    if (!(cfg.T_spec > 0)) throw DomainError("T_spec must be positive");
    validate(cfg.eisenstein);
    SpectralExpansion e;
    e.plan = subtraction_plan(alpha, beta);
    e.T_spec = cfg.T_spec;
    e.config = cfg;

    if (cfg.residual_diagnostic) {
        const Field S = s_field(e.plan, cfg.eisenstein);
        e.residual_diagnostic = std::abs(inner_product_oracle(S, constant_field(1.0))) / (pi / 3);
    }

    for (const auto& f : forms) {
        if (f.flagged && !cfg.allow_flagged)
            throw ValidationError("cusp form R = " + std::to_string(f.R) + " failed validation");
        e.cuspidal.push_back({f, Lambda_cuspidal(e.plan.alpha, f, e.plan.beta), cuspform_norm2(f)});
    }

    if (!(cfg.panel_width > 0)) throw DomainError("panel width must be positive");
    panel_rule(spectral_breaks(e.plan, cfg), cfg.panel_order, e.t_nodes, e.t_weights);
    e.density.reserve(e.t_nodes.size());
    for (double t : e.t_nodes) e.density.push_back(density_at(e.plan, t));
    // The density decays at least like exp(-pi |t| / 2) past T_spec.
    e.density_tail = (std::abs(density_at(e.plan, cfg.T_spec)) + std::abs(density_at(e.plan, -cfg.T_spec))) * (2 / pi) /
                     (4 * pi);
    return e;
}

cplx synthesize(const SpectralExpansion& e, UpperHalfPoint z) {
    cplx v = e.residual_constant;
    for (const auto& c : e.cuspidal) v += c.coefficient / c.norm2 * cuspform_eval(c.form, z);
    cplx cont = 0;
    for (std::size_t k = 0; k < e.t_nodes.size(); ++k)
        cont += e.t_weights[k] * e.density[k] * eisenstein_eval(line_point(e.t_nodes[k]), z, e.config.eisenstein);
    return v + cont / (4 * pi);
}

cplx SolutionParts::total() const {
    cplx v = discrete + continuous;
    for (auto c : cuspidal) v += c;
    return v;
}

SolutionHandle::SolutionHandle(std::shared_ptr<const SpectralExpansion> e, cplx w, bool continued)
    : exp_(std::move(e)), w_(w), lw_(eigenvalue(w)), continued_(continued) {
    const SpectralExpansion& ex = *exp_;
    const double tol = ex.config.collision_tol;
    auto check = [&](cplx lambda, const std::string& what) {
        if (std::abs(lambda - lw_) < tol) throw EigenvalueCollision("lambda_w collides with the eigenvalue of " + what);
    };
    for (const auto& t : ex.plan.terms) check(t.e1star ? cplx(0.0) : eigenvalue(t.param), "a subtracted Eisenstein term");
    if (ex.plan.constant != cplx(0.0)) check(0.0, "the constant function");
    for (const auto& c : ex.cuspidal) check(c.form.eigenvalue(), "a cusp form");

    const double off = w.real() - 0.5;
    if (continued) {
        if (std::abs(off) < 1e-12) throw DomainError("continued solution excludes Re w = 1/2");
        nodes_ = ex.t_nodes;
        weights_ = ex.t_weights;
        density_ = ex.density;
        return;
    }
    if (off <= 0) throw DomainError("direct solution needs Re w > 1/2; use solve_u_continued");

    // 1/(lambda_s - lambda_w) has poles at t = +-Im w -+ i (Re w - 1/2); the
    // grid is graded towards them when they approach the line.
    if (off < ex.config.panel_width) {
        std::vector<double> breaks = spectral_breaks(ex.plan, ex.config);
        for (double c : {w.imag(), -w.imag()}) grade_towards(breaks, c, off, ex.config.panel_width, ex.T_spec);
        panel_rule(breaks, ex.config.panel_order, nodes_, weights_);
        for (double t : nodes_) density_.push_back(density_at(ex.plan, t));
    } else {
        nodes_ = ex.t_nodes;
        weights_ = ex.t_weights;
        density_ = ex.density;
    }
}

cplx SolutionHandle::discrete(UpperHalfPoint z) const {
    const SpectralExpansion& ex = *exp_;
    const auto& cfg = ex.config.eisenstein;
    const cplx d1 = -lw_;  // lambda_1 - lambda_w
    cplx v = (ex.plan.constant + ex.residual_constant) / d1;
    for (const auto& t : ex.plan.terms) {
        if (t.e1star) {
            // Delta E_1* = 3/pi, so the E_1* component needs a constant correction.
            v += t.coef * (eisenstein_E1star(z, cfg) / d1 - eisenstein_residue / (d1 * d1));
        } else {
            v += t.coef * eisenstein_eval(t.param, z, cfg) / (eigenvalue(t.param) - lw_);
        }
    }
    return v;
}

cplx SolutionHandle::continuous_direct(UpperHalfPoint z) const {
    const auto& cfg = exp_->config.eisenstein;
    cplx v = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const cplx s = line_point(nodes_[k]);
        v += weights_[k] * density_[k] * eisenstein_eval(s, z, cfg) / (eigenvalue(s) - lw_);
    }
    return v / (4 * pi);
}

cplx SolutionHandle::continuous_subtracted(UpperHalfPoint z) const {
    const SpectralExpansion& ex = *exp_;
    const auto& cfg = ex.config.eisenstein;
    const cplx a = ex.plan.alpha, b = ex.plan.beta;
    const HoloFunction N = [&](cplx s) { return Lambda_continuous_at(1.0 - s, a, b) * eisenstein_eval(s, z, cfg); };
    const cplx Nw = N(w_);
    const double r = ex.config.taylor_radius;

    cplx v = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const cplx s = line_point(nodes_[k]);
        cplx q;
        if (std::abs(s - w_) < r) {
            q = complex_derivative(N, w_) / (2.0 * w_ - 1.0);
        } else if (std::abs(s - (1.0 - w_)) < r) {
            q = complex_derivative(N, 1.0 - w_) / (1.0 - 2.0 * w_);
        } else {
            q = (density_[k] * eisenstein_eval(s, z, cfg) - Nw) / (eigenvalue(s) - lw_);
        }
        v += weights_[k] * q;
    }
    // The subtracted term -Nw / (lambda_s - lambda_w) = Nw / (t^2 + (w - 1/2)^2)
    // decays only like 1/t^2; its part beyond T_spec is added exactly.
    cplx am = w_ - 0.5;
    if (am.real() < 0) am = -am;
    v += Nw * 2.0 * std::atan(am / ex.T_spec) / am;
    return v / (4 * pi);
}

SolutionParts SolutionHandle::parts(UpperHalfPoint z) const {
    const SpectralExpansion& ex = *exp_;
    SolutionParts p;
    p.discrete = discrete(z);
    for (const auto& c : ex.cuspidal)
        p.cuspidal.push_back(c.coefficient / c.norm2 * cuspform_eval(c.form, z) / (c.form.eigenvalue() - lw_));
    if (!continued_) {
        p.continuous = continuous_direct(z);
    } else {
        const cplx Nw = Lambda_continuous_at(1.0 - w_, ex.plan.alpha, ex.plan.beta) *
                        eisenstein_eval(w_, z, ex.config.eisenstein);
        p.continuous = continuous_subtracted(z) + Nw / (2.0 * (1.0 - 2.0 * w_));
    }
    return p;
}

cplx SolutionHandle::J(UpperHalfPoint z) const {
    if (!continued_) throw DomainError("J_w is defined for the continued evaluation");
    const SpectralExpansion& ex = *exp_;
    cplx v = discrete(z) + continuous_subtracted(z);
    for (const auto& c : ex.cuspidal) v += c.coefficient / c.norm2 * cuspform_eval(c.form, z) / (c.form.eigenvalue() - lw_);
    return v;
}

SolutionHandle solve_u(std::shared_ptr<const SpectralExpansion> e, SpectralParam w) {
    return SolutionHandle(std::move(e), w.s, false);
}

SolutionHandle solve_u(cplx alpha, cplx beta, SpectralParam w, const std::vector<CuspFormRecord>& forms,
                       const SpectralConfig& cfg) {
    if (w.s.real() <= 0.5) throw DomainError("direct solution needs Re w > 1/2; use solve_u_continued");
    return solve_u(std::make_shared<const SpectralExpansion>(expand_S(alpha, beta, forms, cfg)), w);
}

SolutionHandle solve_u_continued(std::shared_ptr<const SpectralExpansion> e, SpectralParam w) {
    return SolutionHandle(std::move(e), w.s, true);
}

SolutionHandle solve_u_continued(cplx alpha, cplx beta, SpectralParam w, const std::vector<CuspFormRecord>& forms,
                                 const SpectralConfig& cfg) {
    if (std::abs(w.s.real() - 0.5) < 1e-12) throw DomainError("continued solution excludes Re w = 1/2");
    return solve_u_continued(std::make_shared<const SpectralExpansion>(expand_S(alpha, beta, forms, cfg)), w);
}

namespace {

// Evaluates the solution parts once per stencil point.
struct PartsCache {
    const SolutionHandle& h;
    std::vector<std::pair<UpperHalfPoint, SolutionParts>> memo;

    const SolutionParts& at(UpperHalfPoint z) {
        for (const auto& [p, v] : memo)
            if (p.x == z.x && p.y == z.y) return v;
        memo.emplace_back(z, h.parts(z));
        return memo.back().second;
    }
};

cplx rhs(const SolutionHandle& h, UpperHalfPoint z) {
    const auto& ex = h.expansion();
    return eisenstein_eval(ex.plan.alpha, z, ex.config.eisenstein) * eisenstein_eval(ex.plan.beta, z, ex.config.eisenstein);
}

}  // namespace

double residual_check(const SolutionHandle& h, UpperHalfPoint z, double fd_step) {
    return residual_by_form_count(h, z, fd_step).back();
}

std::vector<double> residual_by_form_count(const SolutionHandle& h, UpperHalfPoint z, double fd_step) {
    PartsCache cache{h, {}};
    const cplx f = rhs(h, z);
    const cplx lw = eigenvalue(h.w());
    const std::size_t nf = h.expansion().cuspidal.size();
    std::vector<double> out;
    for (std::size_t k = 0; k <= nf; ++k) {
        const ScalarField u = [&](UpperHalfPoint p) {
            const SolutionParts& s = cache.at(p);
            cplx v = s.discrete + s.continuous;
            for (std::size_t j = 0; j < k; ++j) v += s.cuspidal[j];
            return v;
        };
        out.push_back(std::abs(hyperbolic_laplacian_fd(u, z, fd_step) - lw * u(z) - f) / std::abs(f));
    }
    return out;
}

}  // namespace modsurf
