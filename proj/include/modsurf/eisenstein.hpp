#pragma once

#include "modsurf/fourier_field.hpp"
#include "modsurf/numerics.hpp"
#include "modsurf/types.hpp"

namespace modsurf {

struct EisensteinEvalConfig {
    int fourier_terms = 0;  // 0: choose from the reduced height and Im s
    QuadratureSpec quadrature;
    int oracle_lattice_bound = 400;
};

void validate(const EisensteinEvalConfig& cfg);

struct FourierCoefficient {
    long long n;
    cplx phi;
};

struct EvalResult {
    cplx value;
    double tail_bound = 0.0;
    int terms = 0;
};

// pi^s sigma_{2s-1}(|n|) / (Gamma(s) zeta(2s) |n|^(s-1/2)).
cplx phi_coefficient(long long n, SpectralParam s);
std::vector<FourierCoefficient> phi_coefficients(SpectralParam s, int count);

// The n-th Fourier mode amplitude 2 sqrt(y) K_{s-1/2}(2 pi |n| y), i.e.
// W_s(|n| y) / sqrt(|n|). With phi_coefficient this reproduces E_s.
cplx fourier_mode(cplx s, long long n, double y);

int default_fourier_terms(cplx s, double y);

// Fourier row of E_s at height y (no reduction). tail receives a bound on
// the dropped modes.
FourierRow eisenstein_row(cplx s, double y, const EisensteinEvalConfig& cfg = {}, double* tail = nullptr);
Field eisenstein_field(cplx s, const EisensteinEvalConfig& cfg = {});

EvalResult eisenstein_eval_ex(SpectralParam s, UpperHalfPoint z, const EisensteinEvalConfig& cfg = {});
cplx eisenstein_eval(SpectralParam s, UpperHalfPoint z, const EisensteinEvalConfig& cfg = {});

// (1/2) sum over coprime (c, d) with |c|, |d| <= cfg.oracle_lattice_bound of
// y^s / |cz + d|^(2s); tail_bound estimates the omitted pairs.
EvalResult eisenstein_eval_direct(SpectralParam s, UpperHalfPoint z, const EisensteinEvalConfig& cfg = {});

// Sum over all lattice points with |cz + d| <= radius plus the continuum
// tail beyond, divided by 2 zeta(2s). Much faster convergence than the box.
cplx eisenstein_lattice_disk(cplx s, UpperHalfPoint z, double radius);

// Constant C of E_1* = y + C - (3/pi) log y + ..., from d/ds ((s-1) c_s) at 1.
double e1star_constant();
FourierRow e1star_row(double y, const EisensteinEvalConfig& cfg = {});
Field e1star_field(const EisensteinEvalConfig& cfg = {});
cplx eisenstein_E1star(UpperHalfPoint z, const EisensteinEvalConfig& cfg = {});

// y^s + c_s y^(1-s); at s = 1 the E_1* constant term.
cplx constant_term(SpectralParam s, double y);
CuspSeries constant_term_series(cplx s);

inline constexpr double eisenstein_residue = 3.0 / pi;

struct ResidueEstimate {
    cplx value;                    // extrapolated limit of (s-1) E_s(z)
    std::vector<cplx> symmetric;   // (h/2)(E_{1+h} - E_{1-h}) for h = 10^-k_min .. 10^-k_max
    double spread = 0.0;           // |value - finest symmetric average|
};

// Richardson extrapolation of (s-1) E_s(z) over s = 1 +- 10^-k, k = k_min..k_max.
ResidueEstimate residue_extrapolation(UpperHalfPoint z, int k_min = 3, int k_max = 6,
                                      const EisensteinEvalConfig& cfg = {});

}  // namespace modsurf
