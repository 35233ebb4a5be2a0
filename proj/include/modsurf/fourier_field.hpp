#pragma once

#include <functional>
#include <vector>

#include "modsurf/types.hpp"

namespace modsurf {

// A 1-periodic function of x at fixed height:
//   c0 + sum_{n>=1} cos[n-1] cos(2 pi n x) + sin[n-1] sin(2 pi n x).
struct FourierRow {
    cplx c0 = 0.0;
    std::vector<cplx> cos, sin;

    cplx eval(double x) const;
    FourierRow conj() const;
    // Integral over {u <= |x| <= 1/2}.
    cplx integral_outside(double u) const;
    // Drops trailing modes below rel * (largest coefficient).
    void trim(double rel = 1e-18);

    FourierRow& operator+=(const FourierRow& o);
    FourierRow& operator-=(const FourierRow& o);
    FourierRow& operator*=(cplx k);
};

FourierRow operator+(FourierRow a, const FourierRow& b);
FourierRow operator-(FourierRow a, const FourierRow& b);
FourierRow operator*(FourierRow a, cplx k);
FourierRow operator*(cplx k, FourierRow a);
FourierRow operator*(const FourierRow& a, const FourierRow& b);
// Constant coefficient of a * b without forming the product.
cplx mean_of_product(const FourierRow& a, const FourierRow& b);

// coef * y^power * (log y)^log_power
struct CuspTerm {
    cplx coef;
    cplx power;
    int log_power = 0;
};

// Finite sum of CuspTerms; used for the constant term high in the cusp.
struct CuspSeries {
    std::vector<CuspTerm> terms;

    cplx eval(double y) const;
    CuspSeries conj() const;
    void simplify();
    // int_Y^inf (series) dy / y^2; DomainError if it diverges.
    cplx integral_from(double Y) const;

    CuspSeries& operator+=(const CuspSeries& o);
    CuspSeries& operator*=(cplx k);
};

CuspSeries operator+(CuspSeries a, const CuspSeries& b);
CuspSeries operator-(CuspSeries a, const CuspSeries& b);
CuspSeries operator*(CuspSeries a, cplx k);
CuspSeries operator*(cplx k, CuspSeries a);
CuspSeries operator*(const CuspSeries& a, const CuspSeries& b);

// An automorphic function described through its Fourier rows on the
// fundamental domain. Above `cusp_from` the constant coefficient of row(y)
// equals cusp.eval(y) up to terms decaying like exp(-2 pi y), and so do the
// other modes.
struct Field {
    std::function<FourierRow(double)> row;
    CuspSeries cusp;
    double cusp_from = 1.0;
    std::vector<double> breaks;  // heights where row(y) is not smooth

    cplx eval(double x, double y) const { return row(y).eval(x); }
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(cplx k, const Field& a);
Field conj(const Field& a);
Field constant_field(cplx k);

}  // namespace modsurf
