#pragma once

#include <vector>

#include "modsurf/eisenstein.hpp"
#include "modsurf/fourier_field.hpp"
#include "modsurf/regimes.hpp"

namespace modsurf {

// Truncation height; T > 1 keeps at most one translate above height T on
// the fundamental domain.
struct TruncationHeight {
    double T;
    explicit TruncationHeight(double t);
};

cplx truncated_eisenstein(SpectralParam s, UpperHalfPoint z, TruncationHeight T, const EisensteinEvalConfig& cfg = {});
Field truncated_eisenstein_field(cplx s, TruncationHeight T, const EisensteinEvalConfig& cfg = {});

// int trunc E_r * trunc E_s (no conjugation).
cplx maass_selberg_closed(cplx r, cplx s, TruncationHeight T);

// The following are pairings against trunc E_s, i.e. int trunc E_{conj s} * X:
// X = E_1*,
cplx maass_selberg_E1star(cplx s, TruncationHeight T);
// X = kappa (a constant),
cplx truncated_constant_pairing(cplx s, TruncationHeight T, cplx kappa);
// X = E_alpha E_beta. Modes n <= N enter the two height-dependent sums;
// N = 0 sums until the terms are negligible.
cplx truncated_pairing_EaEb(cplx s, cplx alpha, cplx beta, TruncationHeight T, long long N = 0);

// <S, trunc E_s> for the subtraction plan's S, assembled from the closed forms.
cplx truncated_pairing_S(const SubtractionPlan& plan, cplx s, TruncationHeight T);

struct TruncationLimitRow {
    double T;
    double discrepancy;  // |<S, trunc E_s> - <S, E_s>| by the oracle
    double predicted;    // the same difference from S's constant term above T
};

// s on the critical line.
std::vector<TruncationLimitRow> truncation_limit_check(cplx s, cplx alpha, cplx beta, const std::vector<double>& T_list);

}  // namespace modsurf
