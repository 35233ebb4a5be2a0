#include <cmath>

#include "modsurf/numerics.hpp"
#include "test_support.hpp"

using namespace modsurf;

TEST_SUITE("numerics") {

TEST_CASE("reduction lands in the fundamental domain and records gamma") {
    for (UpperHalfPoint z : {UpperHalfPoint{3.7, 0.01}, UpperHalfPoint{-0.49, 0.2}, UpperHalfPoint{0.1, 0.5},
                             UpperHalfPoint{12.3, 4.0}, UpperHalfPoint{0.3, 0.999}}) {
        const Reduction r = reduce_to_fundamental_domain(z);
        CHECK(in_fundamental_domain(r.z));
        CHECK(r.gamma.det() == 1);
        const UpperHalfPoint g = apply(r.gamma, z);
        CHECK(std::abs(g.x - r.z.x) < 1e-10);
        CHECK(std::abs(g.y - r.z.y) < 1e-10);
    }
}

TEST_CASE("points already reduced are left alone") {
    const Reduction r = reduce_to_fundamental_domain({0.2, 1.3});
    CHECK(r.gamma.is_identity());
    CHECK(r.z.x == doctest::Approx(0.2));
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    for (int n : {4, 10, 20, 64}) {
        const GaussRule& g = gauss_legendre(n);
        double s = 0;
        for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 2 * n - 2);
        CHECK(s == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gauss_legendre(7), DomainError);
}

TEST_CASE("adaptive integration on finite and infinite ranges") {
    // int_0^inf sqrt(x) e^-x dx = Gamma(3/2) = sqrt(pi)/2
    const cplx v = integrate([](double x) { return cplx(std::sqrt(x) * std::exp(-x)); }, 0.0, inf);
    CHECK_REL(v, cplx(std::sqrt(pi) / 2), 1e-11);
    const cplx w = integrate([](double x) { return std::exp(cplx(0, 5 * x)); }, 0.0, 1.0);
    CHECK_REL(w, (std::exp(cplx(0, 5)) - 1.0) / cplx(0, 5), 1e-13);
    const cplx t = integrate([](double x) { return cplx(1.0 / std::sqrt(x)); }, 0.0, 1.0,
                             QuadratureSpec{Scheme::TanhSinh, 1e-12, 0.0, 400, 8.0});
    CHECK_REL(t, cplx(2.0), 1e-10);
}

TEST_CASE("invalid quadrature specs are rejected") {
    QuadratureSpec q;
    q.rel_tol = -1;
    CHECK_THROWS_AS(validate(q), DomainError);
}

TEST_CASE("complex derivative of an entire function") {
    const cplx d = complex_derivative([](cplx s) { return std::exp(2.0 * s); }, cplx(0.3, 0.4));
    CHECK_REL(d, 2.0 * std::exp(cplx(0.6, 0.8)), 1e-9);
}

TEST_CASE("finite-difference Laplacian of y^s is second order") {
    const cplx s(0.7, 2.0);
    const ScalarField f = [s](UpperHalfPoint z) { return std::exp(s * std::log(z.y)); };
    const UpperHalfPoint z{0.1, 1.3};
    const cplx exact = s * (s - 1.0) * f(z);
    const double e1 = std::abs(hyperbolic_laplacian_fd(f, z, 1e-2) - exact);
    const double e2 = std::abs(hyperbolic_laplacian_fd(f, z, 5e-3) - exact);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
    CHECK_THROWS_AS(hyperbolic_laplacian_fd(f, {0, 0.001}, 0.01), DomainError);
}

}
