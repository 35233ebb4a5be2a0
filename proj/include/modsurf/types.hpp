#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace modsurf {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Errors that CLI callers map to exit code 3.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : MathError {
    using MathError::MathError;
};
struct DomainError : MathError {
    using MathError::MathError;
};
struct NonConvergence : MathError {
    using MathError::MathError;
};
struct DegenerateEigenvalue : MathError {
    using MathError::MathError;
};
struct EigenvalueCollision : MathError {
    using MathError::MathError;
};
struct UnsolvableBoundary : MathError {
    using MathError::MathError;
};
struct InsufficientCoefficients : MathError {
    using MathError::MathError;
};

// Data-file problems.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : DataError {
    using DataError::DataError;
};
struct ValidationError : DataError {
    using DataError::DataError;
};

struct SpectralParam {
    cplx s;
    cplx lambda;

    SpectralParam() : s(0.0), lambda(0.0) {}
    SpectralParam(cplx s_) : s(s_), lambda(s_ * (s_ - 1.0)) {}
    SpectralParam(double s_) : SpectralParam(cplx(s_)) {}
};

inline cplx eigenvalue(cplx s) { return s * (s - 1.0); }

}  // namespace modsurf
