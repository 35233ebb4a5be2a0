#include <cmath>

#include "modsurf/eisenstein.hpp"
#include "modsurf/special_functions.hpp"
#include "test_support.hpp"

using namespace modsurf;

TEST_SUITE("eisenstein") {

TEST_CASE("Fourier coefficients") {
    CHECK_REL(phi_coefficient(1, 1.0), cplx(6 / pi), 1e-13);
    CHECK_REL(phi_coefficient(-5, cplx(0.7, 2)), phi_coefficient(5, cplx(0.7, 2)), 1e-15);
    const cplx s(0.8, 1.7);
    const cplx ratio = (1.0 + std::pow(cplx(2.0), 2.0 * s - 1.0)) / std::pow(cplx(2.0), s - 0.5);
    CHECK_REL(phi_coefficient(2, s) / phi_coefficient(1, s), ratio, 1e-13);
}

TEST_CASE("values against an mpmath Fourier summation") {
    CHECK_REL(eisenstein_eval(cplx(0.7, 1.3), {0.2, 1.4}), cplx(1.4908099325131805, -0.61385076508515470), 1e-12);
    CHECK_REL(eisenstein_eval(2.0, {0, 1}), cplx(2.7842015453307912), 1e-13);
    // z = -0.3 + 0.95i lies below the unit circle, so this also exercises reduction
    CHECK_REL(eisenstein_eval(cplx(0.5, 5), {-0.3, 0.95}), cplx(2.0197077908917176, -0.84128991722683244), 1e-11);
    CHECK_REL(eisenstein_eval(3.0, {0.5, 2}), cplx(8.3000604696161377), 1e-13);
    CHECK_REL(eisenstein_eval(cplx(2.5, 1), {0.1, 1.05}), cplx(2.2505321497581667, -0.30359839813488754), 1e-12);
}

TEST_CASE("automorphy") {
    const cplx s(0.6, 3.2);
    for (UpperHalfPoint z : {UpperHalfPoint{0.13, 0.7}, UpperHalfPoint{-0.4, 1.2}}) {
        const cplx v = eisenstein_eval(s, z);
        CHECK_REL(eisenstein_eval(s, {z.x + 1, z.y}), v, 1e-10);
        const double r2 = z.x * z.x + z.y * z.y;
        CHECK_REL(eisenstein_eval(s, {-z.x / r2, z.y / r2}), v, 1e-10);
    }
}

TEST_CASE("functional equation") {
    const cplx s(0.7, 1.3);
    const UpperHalfPoint z{0.2, 1.4};
    CHECK_REL(completed_xi(2.0 * s) * eisenstein_eval(s, z),
              completed_xi(2.0 - 2.0 * s) * eisenstein_eval(1.0 - s, z), 1e-10);
}

TEST_CASE("eigenfunction of the Laplacian") {
    const cplx s(0.8, 2.5);
    const UpperHalfPoint z{0.15, 1.1};
    const ScalarField E = [s](UpperHalfPoint p) { return eisenstein_eval(s, p); };
    CHECK_REL(hyperbolic_laplacian_fd(E, z, 1e-3), s * (s - 1.0) * E(z), 1e-4);
}

TEST_CASE("lattice sums") {
    EisensteinEvalConfig cfg;
    double previous = inf;
    for (int bound : {50, 100, 200}) {
        cfg.oracle_lattice_bound = bound;
        const EvalResult r = eisenstein_eval_direct(2.0, {0, 1}, cfg);
        const double err = std::abs(r.value - 2.7842015453307912);
        CHECK(err < previous);
        CHECK(err <= r.tail_bound);
        previous = err;
    }
    CHECK_REL(eisenstein_lattice_disk(3.0, {0.5, 2}, 400), cplx(8.3000604696161377), 1e-9);
    CHECK_THROWS_AS(eisenstein_eval_direct(cplx(0.9, 1), {0, 1}), DomainError);
}

TEST_CASE("pole at s = 1 and E_1*") {
    CHECK_THROWS_AS(eisenstein_eval(1.0, {0, 1}), PoleError);
    CHECK(e1star_constant() == doctest::Approx(0.86713242772066456).epsilon(1e-10));
    CHECK_REL(eisenstein_E1star({0.1, 1.1}), cplx(1.8791983211262997), 1e-10);
    const UpperHalfPoint z{0.3, 0.8};
    const double r2 = z.x * z.x + z.y * z.y;
    CHECK_REL(eisenstein_E1star({-z.x / r2, z.y / r2}), eisenstein_E1star(z), 1e-9);
}

TEST_CASE("residue 3/pi and the Laurent constant") {
    const ResidueEstimate r = residue_extrapolation({0.2, 1.25});
    CHECK_ABS(r.value, cplx(3 / pi), 1e-6);
    const double h = 1e-4;
    const UpperHalfPoint z{-0.1, 1.6};
    const cplx sym = 0.5 * (eisenstein_eval(1.0 + h, z) + eisenstein_eval(1.0 - h, z));
    CHECK_ABS(sym, eisenstein_E1star(z), 1e-6);
}

TEST_CASE("constant term") {
    CHECK_REL(constant_term(2.0, 1.0), 1.0 + c_coefficient(2.0), 1e-15);
    const cplx s(0.5, 4.0);
    CHECK(std::abs(std::abs(std::pow(cplx(3.0), s)) - std::sqrt(3.0)) < 1e-14);
    // the non-constant modes decay like exp(-2 pi y)
    const cplx t(0.9, 0.4);
    double d[3];
    for (int i = 0; i < 3; ++i) d[i] = std::abs(eisenstein_eval(t, {0, 3.0 + i}) - constant_term(t, 3.0 + i));
    CHECK(std::log(d[0] / d[1]) >= 6.0);
    CHECK(std::log(d[1] / d[2]) >= 6.0);
}

TEST_CASE("more Fourier terms never raise the tail bound") {
    EisensteinEvalConfig cfg;
    double last = inf;
    for (int n : {4, 8, 16, 32}) {
        cfg.fourier_terms = n;
        const EvalResult r = eisenstein_eval_ex(cplx(0.6, 8), {0.1, 0.9}, cfg);
        CHECK(r.tail_bound <= last);
        last = r.tail_bound;
    }
}

}
