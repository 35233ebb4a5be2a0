#pragma once

#include <memory>
#include <vector>

#include "modsurf/cuspform_data.hpp"
#include "modsurf/eisenstein.hpp"
#include "modsurf/regimes.hpp"

namespace modsurf {

struct SpectralConfig {
    double T_spec = 30.0;
    double panel_width = 0.25;  // base panel width on the spectral line
    int panel_order = 10;       // Gauss-Legendre nodes per panel
    bool allow_flagged = false;
    bool residual_diagnostic = true;
    double collision_tol = 1e-8;
    double taylor_radius = 1e-4;
    EisensteinEvalConfig eisenstein;
};

struct CuspidalComponent {
    CuspFormRecord form;
    cplx coefficient;  // <S, f>
    double norm2;      // <f, f>
};

struct SpectralExpansion {
    SubtractionPlan plan;
    cplx residual_constant = 0.0;     // <S,1>/<1,1>, zero by theory
    double residual_diagnostic = 0.0;  // |oracle <S,1>| / <1,1>
    std::vector<CuspidalComponent> cuspidal;
    double T_spec = 30.0;
    std::vector<double> t_nodes, t_weights;
    std::vector<cplx> density;  // <S, E_{1/2+it}> at t_nodes
    double density_tail = 0.0;  // bound on (1/4pi) int_{|t|>T_spec} |density| dt
    SpectralConfig config;
};

SpectralExpansion expand_S(cplx alpha, cplx beta, const std::vector<CuspFormRecord>& forms,
                           const SpectralConfig& cfg = {});

// cuspidal + residual + (1/4pi) int density(t) E_{1/2+it}(z) dt.
cplx synthesize(const SpectralExpansion& e, UpperHalfPoint z);

struct SolutionParts {
    cplx discrete;                 // plan terms, E_1* and constant
    std::vector<cplx> cuspidal;    // one entry per cusp form
    cplx continuous;
    cplx total() const;
};

class SolutionHandle {
public:
    SolutionHandle(std::shared_ptr<const SpectralExpansion> e, cplx w, bool continued);

    cplx operator()(UpperHalfPoint z) const { return parts(z).total(); }
    SolutionParts parts(UpperHalfPoint z) const;
    // Continued evaluation only: the J_w part alone.
    cplx J(UpperHalfPoint z) const;

    const SpectralExpansion& expansion() const { return *exp_; }
    cplx w() const { return w_; }
    bool continued() const { return continued_; }

private:
    cplx continuous_direct(UpperHalfPoint z) const;
    cplx continuous_subtracted(UpperHalfPoint z) const;
    cplx discrete(UpperHalfPoint z) const;

    std::shared_ptr<const SpectralExpansion> exp_;
    cplx w_;
    cplx lw_;
    bool continued_;
    std::vector<double> nodes_, weights_;
    std::vector<cplx> density_;
};

// Re w > 1/2.
SolutionHandle solve_u(cplx alpha, cplx beta, SpectralParam w, const std::vector<CuspFormRecord>& forms,
                       const SpectralConfig& cfg = {});
SolutionHandle solve_u(std::shared_ptr<const SpectralExpansion> e, SpectralParam w);
// Re w != 1/2; evaluates J_w + Lambda(1-w) E_w / (2(1-2w)).
SolutionHandle solve_u_continued(cplx alpha, cplx beta, SpectralParam w, const std::vector<CuspFormRecord>& forms,
                                 const SpectralConfig& cfg = {});
SolutionHandle solve_u_continued(std::shared_ptr<const SpectralExpansion> e, SpectralParam w);

// |(Delta_fd - lambda_w) u(z) - E_alpha E_beta(z)| / |E_alpha E_beta(z)|.
double residual_check(const SolutionHandle& h, UpperHalfPoint z, double fd_step);
// Residuals with the first k cusp forms included, k = 0..number of forms.
std::vector<double> residual_by_form_count(const SolutionHandle& h, UpperHalfPoint z, double fd_step);

}  // namespace modsurf
