#pragma once

#include "modsurf/numerics.hpp"
#include "modsurf/types.hpp"

namespace modsurf {

cplx log_gamma(cplx s);
cplx gamma_fn(cplx s);

cplx riemann_zeta(cplx s);
// Euler-Maclaurin summation used directly, without reflection. Accurate for
// Re s > -1; exposed so the functional equation can be checked independently.
cplx zeta_euler_maclaurin(cplx s);
// zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s), with zeta(1-s)
// taken from zeta_euler_maclaurin.
cplx zeta_via_reflection(cplx s);

cplx completed_xi(cplx s);

// c_s = xi(2-2s)/xi(2s); equals -1 at s = 1/2.
cplx c_coefficient(cplx s);
cplx c_derivative(cplx alpha);

cplx sigma_power(long long n, cplx w);

// K_nu(x) for real x > 0 and complex order.
cplx bessel_k(cplx nu, double x);

// W_s(y) = sqrt(y) * int_0^inf t^(s-1/2) exp(-(t+1/t) pi y) dt/t = 2 sqrt(y) K_{s-1/2}(2 pi y).
cplx whittaker_W(cplx s, double y);

// int_0^inf y^v W_a(y) W_b(y) dy / y^2.
enum class MellinMethod { ClosedForm, Quadrature };
cplx mellin_WW(cplx v, cplx a, cplx b, MellinMethod method = MellinMethod::ClosedForm);

// Same integral restricted to [y0, y1] (y1 may be inf), always by quadrature.
cplx mellin_WW_range(cplx v, cplx a, cplx b, double y0, double y1);

}  // namespace modsurf
