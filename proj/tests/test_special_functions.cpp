#include "modsurf/special_functions.hpp"
#include "test_support.hpp"

using namespace modsurf;

TEST_SUITE("special_functions") {

TEST_CASE("zeta against mpmath") {
    CHECK_REL(riemann_zeta(2.0), cplx(1.6449340668482264), 1e-14);
    CHECK_REL(riemann_zeta({0.5, 10}), cplx(1.5448952202967528, -0.11533646527127338), 1e-13);
    CHECK_REL(riemann_zeta({0.3, -4.5}), cplx(0.62159400268598109, -0.18364159271594341), 1e-13);
    CHECK_REL(riemann_zeta({-2.5, 1}), cplx(0.023593610586379649, 0.0014077996058383770), 1e-12);
    CHECK_REL(riemann_zeta({1.2, 30}), cplx(0.55354916654558519, -0.43449679354775523), 1e-12);
    CHECK_REL(riemann_zeta(3.7), cplx(1.1062882414646793), 1e-14);
    CHECK_THROWS_AS(riemann_zeta(1.0), PoleError);
}

TEST_CASE("zeta: reflection and direct summation agree") {
    for (cplx s : {cplx(0.3, 2.0), cplx(-0.5, 7.0), cplx(0.8, -12.0)})
        CHECK_REL(zeta_via_reflection(s), zeta_euler_maclaurin(s), 1e-11);
}

TEST_CASE("gamma against mpmath") {
    CHECK_REL(gamma_fn({0.3, 2}), cplx(0.057465337569588035, -0.074984912582646138), 1e-13);
    CHECK_REL(gamma_fn({10, -5}), cplx(47216.412071952250, 91467.537666754996), 1e-13);
    CHECK_REL(gamma_fn({-2.5, 0.5}), cplx(-0.33387520352243234, -0.20645730796360841), 1e-13);
    CHECK_REL(gamma_fn({0.5, 40}), cplx(9.5295510494311588e-28, 8.7375682018384418e-28), 1e-11);
}

TEST_CASE("K-Bessel of complex order against mpmath") {
    CHECK_REL(bessel_k({0.2, 13}, 3.0), cplx(-4.3455567549426878e-10, 2.7806959833336489e-10), 1e-9);
    CHECK_REL(bessel_k({0, 13.78}, 1.5), cplx(2.4262392258266133e-10, 0), 1e-9);
    CHECK_REL(bessel_k(1.5, 0.7), cplx(1.8065736127788278), 1e-13);
    CHECK_REL(bessel_k({2, 0.5}, 10.0), cplx(2.1162750424131001e-05, 2.0164352062965937e-06), 1e-12);
    CHECK_REL(bessel_k({0.1, 2}, 0.05), cplx(0.079886235119740200, 0.0026122501786340468), 1e-11);
}

TEST_CASE("scattering coefficient and xi") {
    CHECK_REL(c_coefficient({0.7, 1.3}), cplx(0.72300875730266355, -0.80998644442017047), 1e-12);
    CHECK_REL(c_coefficient(2.0), cplx(1.7445680821312560), 1e-13);
    CHECK_REL(c_coefficient({0.25, 3}), cplx(0.81305634060786173, -0.58460850036162590), 1e-12);
    CHECK_REL(c_coefficient(0.5), cplx(-1.0), 1e-12);
    CHECK_REL(completed_xi({0.3, 2}), cplx(-0.20717261339322476, 0.043375669082548637), 1e-12);
    // c_s c_{1-s} = 1
    const cplx s(0.37, 4.1);
    CHECK_REL(c_coefficient(s) * c_coefficient(1.0 - s), cplx(1.0), 1e-12);
}

TEST_CASE("Whittaker function and its Mellin transform") {
    CHECK_REL(whittaker_W(2.0, 0.7), 2.0 * std::sqrt(0.7) * bessel_k(1.5, 2 * pi * 0.7), 1e-14);
    const cplx q1 = mellin_WW({2, -1}, 0.6, 1.5);
    CHECK_REL(q1, cplx(-0.053895638541198971, 0.0040077083093984879), 1e-12);
    const cplx q2 = mellin_WW({1.7, 0.5}, {0.7, 1}, 1.2);
    CHECK_REL(q2, cplx(0.048265784184678253, -0.052399328023654840), 1e-12);
    CHECK_REL(mellin_WW({1.7, 0.5}, {0.7, 1}, 1.2, MellinMethod::Quadrature), q2, 1e-9);
    // outside the range of absolute convergence only the closed form applies
    CHECK_REL(mellin_WW({0.5, -2}, 0.6, 1.5), cplx(0.022727328962327797, 0.17238885596504034), 1e-12);
}

TEST_CASE("divisor power sums") {
    CHECK_REL(sigma_power(12, 1.0), cplx(28.0), 1e-15);
    CHECK_REL(sigma_power(9, 0.0), cplx(3.0), 1e-15);
    CHECK_THROWS_AS(sigma_power(0, 1.0), DomainError);
}

}
