#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modsurf/eisenstein.hpp"
#include "modsurf/types.hpp"

namespace modsurf {

enum class Regime {
    I,
    IIa,
    IIb,
    IIIa,
    IIIb,
    BoundarySumThreeHalves,
    BoundaryReThreeQuarters,
    BoundaryDiffHalf,
    PoleAtOne,
    NeedsReflection,
};

std::string to_string(Regime r);
bool is_boundary(Regime r);

inline constexpr double regime_eps = 1e-9;
inline constexpr double zero_witness_tol = 1e-6;

// coef * E_param, or coef * E_1* when e1star is set.
struct PlanTerm {
    cplx coef;
    cplx param;
    bool e1star = false;
};

// S = E_alpha E_beta - (sum of terms + constant).
struct SubtractionPlan {
    Regime regime = Regime::I;
    cplx alpha, beta;  // after the canonical swap, Re alpha <= Re beta
    std::vector<PlanTerm> terms;
    cplx constant = 0.0;
    bool swapped = false;
};

Regime classify(cplx alpha, cplx beta);
SubtractionPlan subtraction_plan(cplx alpha, cplx beta, double witness_tol = zero_witness_tol);

struct BoundaryVerdict {
    bool solvable = false;
    std::optional<cplx> witness;  // the parameter whose c vanishes
    double min_abs_c = 0.0;
};

BoundaryVerdict solvability_on_boundary(cplx alpha, cplx beta, double tol = zero_witness_tol);

enum class BoundaryLine {
    ReThreeQuarters,  // alpha = beta = 3/4 + it
    SumThreeHalves,   // alpha = a + it, beta = 3/2 - a - it
};

struct BoundaryScanRow {
    double t;
    double abs_c;  // |c_alpha|, or min(|c_alpha|, |c_beta|) on the sum line
    bool solvable;
    bool zero_candidate;  // grid-local minimum whose refinement drops below tol
};

struct BoundaryScanResult {
    std::vector<BoundaryScanRow> rows;
    std::vector<double> minima;         // refined t of every grid-local minimum
    std::vector<double> minima_abs_c;   // |c| at those t
    std::vector<double> zero_candidates;
};

// Scans t over [t0, t1] in steps of `step`; each local minimum of |c| on the
// grid is refined by Brent's method within its neighbouring grid cells.
BoundaryScanResult scan_boundary(BoundaryLine line, double t0, double t1, double step, double tol = zero_witness_tol,
                                 double sum_line_re_alpha = 0.75);

// |c_a E_{1-a+b}(z) + c_b E_{1+a-b}(z) - (2 c_a E_1*(z) - (3/pi) C_a)| at b = a + delta.
double limit_consistency_check(cplx alpha, double delta, UpperHalfPoint z = {0.0, 1.0});

// The constant the residue at s = 1 contributes when alpha = beta.
cplx equal_parameter_constant(cplx alpha);

Field plan_field(const SubtractionPlan& plan, const EisensteinEvalConfig& cfg = {});
Field s_field(const SubtractionPlan& plan, const EisensteinEvalConfig& cfg = {});
cplx plan_eval(const SubtractionPlan& plan, UpperHalfPoint z, const EisensteinEvalConfig& cfg = {});
cplx s_eval(const SubtractionPlan& plan, UpperHalfPoint z, const EisensteinEvalConfig& cfg = {});

}  // namespace modsurf
