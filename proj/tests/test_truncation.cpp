#include "modsurf/rankin_selberg.hpp"
#include "modsurf/regimes.hpp"
#include "modsurf/special_functions.hpp"
#include "modsurf/truncation.hpp"
#include "test_support.hpp"

using namespace modsurf;

TEST_SUITE("truncation") {

TEST_CASE("heights at or below 1 are rejected") {
    CHECK_THROWS_AS(TruncationHeight(1.0), DomainError);
    CHECK_NOTHROW(TruncationHeight(1.01));
}

TEST_CASE("truncation removes the constant term above T only") {
    const cplx s(0.5, 3.0);
    const TruncationHeight T(2.0);
    CHECK_REL(truncated_eisenstein(s, {0.1, 1.5}, T), eisenstein_eval(s, {0.1, 1.5}), 1e-15);
    const cplx high = truncated_eisenstein(s, {0.1, 4.0}, T);
    CHECK_ABS(high, eisenstein_eval(s, {0.1, 4.0}) - constant_term(s, 4.0), 1e-14);
    CHECK(std::abs(high) < 1e-8);
}

TEST_CASE("Maass-Selberg closed form against mpmath") {
    CHECK_REL(maass_selberg_closed({2, 0.5}, {0.5, 3}, TruncationHeight(3)),
              cplx(-2.4404048864866544, -0.66075810176509829), 1e-12);
    CHECK_REL(maass_selberg_closed({0.7, 1}, {0.8, -2}, TruncationHeight(4)),
              cplx(1.3285928607636748, -0.75832054643773747), 1e-12);
    CHECK_THROWS_AS(maass_selberg_closed(1.0, 2.0, TruncationHeight(3)), PoleError);
    CHECK_THROWS_AS(maass_selberg_closed(0.3, 0.7, TruncationHeight(3)), DegenerateEigenvalue);
}

TEST_CASE("Maass-Selberg closed form against the fundamental-domain integral") {
    const TruncationHeight T(3.0);
    const cplx r(0.7, 1.0), s(0.8, -2.0);
    const cplx oracle = inner_product_oracle(truncated_eisenstein_field(r, T), truncated_eisenstein_field(std::conj(s), T));
    CHECK_REL(maass_selberg_closed(r, s, T), oracle, 1e-9);
}

TEST_CASE("E_1* and constant pairings") {
    const cplx s(0.5, 2.0);
    CHECK_REL(maass_selberg_E1star(s, TruncationHeight(3)), cplx(0.59733912521869532, 0.21122757285849022), 1e-9);
    CHECK_REL(truncated_constant_pairing(s, TruncationHeight(4), {0.4, -0.2}),
              cplx(0.058268062418769404, -0.0072481032973886025), 1e-12);
    const cplx e1 = inner_product_oracle(e1star_field(), truncated_eisenstein_field(s, TruncationHeight(3)));
    CHECK_REL(maass_selberg_E1star(s, TruncationHeight(3)), e1, 1e-8);
    const cplx k = inner_product_oracle(constant_field({0.4, -0.2}), truncated_eisenstein_field(s, TruncationHeight(4)));
    CHECK_REL(truncated_constant_pairing(s, TruncationHeight(4), {0.4, -0.2}), k, 1e-8);
}

TEST_CASE("pairing of E_a E_b and of S with a truncated series") {
    const cplx s(0.5, 2.0);
    const TruncationHeight T(3.0);
    const Field tE = truncated_eisenstein_field(s, T);
    const cplx ab = inner_product_oracle(eisenstein_field(0.6) * eisenstein_field(1.5), tE);
    CHECK_REL(truncated_pairing_EaEb(s, 0.6, 1.5, T), ab, 1e-8);
    const SubtractionPlan p = subtraction_plan(0.6, 1.5);
    CHECK_REL(truncated_pairing_S(p, s, T), inner_product_oracle(s_field(p), tE), 1e-8);
}

TEST_CASE("truncating one factor is enough") {
    const TruncationHeight T(2.5);
    for (auto [r, s] : {std::pair<cplx, cplx>{{0.5, 2}, {0.5, 3.5}}, {{0.7, 1}, {0.5, 1}}}) {
        const Field ts = truncated_eisenstein_field(std::conj(s), T);
        const cplx both = inner_product_oracle(truncated_eisenstein_field(r, T), ts);
        const cplx one = inner_product_oracle(eisenstein_field(r), ts);
        CHECK_ABS(both, one, 1e-6);
    }
}

TEST_CASE("the truncated pairing converges as the constant term predicts") {
    const auto rows = truncation_limit_check({0.5, 2}, 0.6, 1.5, {2, 4, 8, 16});
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) CHECK(std::abs(r.discrepancy - r.predicted) < 1e-9);
    // The leftover constant term of S decays only like a power of T and
    // oscillates with Im s, so the discrepancy is not monotone here.
    CHECK(rows[2].discrepancy > rows[1].discrepancy);
    CHECK_THROWS_AS(truncation_limit_check({0.6, 2}, 0.6, 1.5, {2}), DomainError);
}

}
