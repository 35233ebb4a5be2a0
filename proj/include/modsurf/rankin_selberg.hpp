#pragma once

#include "modsurf/cuspform_data.hpp"
#include "modsurf/fourier_field.hpp"
#include "modsurf/numerics.hpp"
#include "modsurf/types.hpp"

namespace modsurf {

// Which power of n the Rankin-Selberg Dirichlet series carries.
//   Unfolded:        sum phi(n,a) phi(n,b) n^(-v), the exponent produced by
//                    unfolding with the fourier_mode normalization. Default.
//   ShiftedExponent: sum phi(n,a) phi(n,b) n^(1-v) with the Gamma factor that
//                    goes with phi(n,s) W_s(|n| y) modes; kept for comparison.
enum class LNormalization { Unfolded, ShiftedExponent };

struct LPairValue {
    cplx dirichlet_partial;  // 2 sum_{n=1..N} phi(n,a) phi(n,b) n^(-e)
    cplx closed_form;        // zeta-quotient value of the full series
    long long terms_used = 0;
    double tail_estimate = 0.0;  // bound on the omitted terms; inf outside absolute convergence
};

// P_s = pi^s / (Gamma(s) zeta(2s)), so phi(n,s) = P_s sigma_{2s-1}(n) n^(1/2-s).
cplx phi_prefactor(cplx s);

// v plays the role of conj(s).
LPairValue L_eisenstein_pair_at(cplx v, cplx alpha, cplx beta, long long N,
                                LNormalization norm = LNormalization::Unfolded);
LPairValue L_eisenstein_pair(cplx s, cplx alpha, cplx beta, long long N,
                             LNormalization norm = LNormalization::Unfolded);

// <S, E_s> for any S = E_alpha E_beta - (Eisenstein combination in L^2):
// the L closed form times the archimedean factor, evaluated at v = conj(s).
cplx Lambda_continuous_at(cplx v, cplx alpha, cplx beta, LNormalization norm = LNormalization::Unfolded);
cplx Lambda_continuous(cplx s, cplx alpha, cplx beta, LNormalization norm = LNormalization::Unfolded);

// Completed and finite L-function of an even Hecke form,
//   Lambda_f(s) = int_1^inf theta(y) (y^s + y^(1-s)) dy / y,
//   theta(y) = 4 sum lambda_n K_{iR}(2 pi n y).
cplx cuspform_completed_L(const CuspFormRecord& f, cplx s);
cplx cuspform_L(const CuspFormRecord& f, cplx s);

enum class CuspidalMethod {
    Continued,    // L(f, a+b-1/2) L(f, a-b+1/2) / zeta(2a), valid for all (a, b)
    PartialSum,   // sum over |n| <= N, convergent only for large Re alpha
    ShiftedExponent  // partial sum with n^(1-alpha) and the matching Gamma factor
};

// <E_alpha E_beta, f> = Lambda(alpha, conj(f) x E_beta). N = 0 uses every
// stored coefficient.
cplx Lambda_cuspidal(cplx alpha, const CuspFormRecord& f, cplx beta, long long N = 0,
                     CuspidalMethod method = CuspidalMethod::Continued);

inline QuadratureSpec oracle_quadrature() {
    QuadratureSpec q;
    q.rel_tol = 1e-10;
    q.max_subdivisions = 2000;
    return q;
}

struct OracleResult {
    cplx value;
    double tail_estimate = 0.0;
};

// <F, G> = int_{fundamental domain} F conj(G) dx dy / y^2. The region below
// max(y_cap, cusp_from) is integrated from Fourier rows; above it the
// product of the cusp series is integrated in closed form. An absolute
// tolerance scaled by the sizes of F and G is added to spec.abs_tol so
// that pairings which vanish still terminate.
OracleResult inner_product_oracle_ex(const Field& F, const Field& G, double y_cap = 8.0,
                                     const QuadratureSpec& spec = oracle_quadrature());
cplx inner_product_oracle(const Field& F, const Field& G, double y_cap = 8.0,
                          const QuadratureSpec& spec = oracle_quadrature());

// Same pairing for fields known only pointwise; the integrand must vanish
// (or be negligible) above y_cap.
cplx inner_product_pointwise(const ScalarField& F, const ScalarField& G, double y_cap,
                             const QuadratureSpec& spec = oracle_quadrature());

// <f, f>.
double cuspform_norm2(const CuspFormRecord& f);

}  // namespace modsurf
