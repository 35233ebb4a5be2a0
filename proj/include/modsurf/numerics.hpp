#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "modsurf/types.hpp"

namespace modsurf {

struct UpperHalfPoint {
    double x = 0.0;
    double y = 1.0;
};

// Integer matrix [[a, b], [c, d]] acting by z -> (az+b)/(cz+d).
struct Mat2 {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
};

Mat2 operator*(const Mat2& l, const Mat2& r);
UpperHalfPoint apply(const Mat2& g, UpperHalfPoint z);

struct Reduction {
    UpperHalfPoint z;
    Mat2 gamma;  // gamma applied to the input gives z
};

inline constexpr double fd_eps = 1e-12;

Reduction reduce_to_fundamental_domain(UpperHalfPoint z);
bool in_fundamental_domain(UpperHalfPoint z, double eps = fd_eps);

enum class Scheme { GaussLegendre, TanhSinh };

struct QuadratureSpec {
    Scheme scheme = Scheme::GaussLegendre;
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int max_subdivisions = 400;
    double truncation_height = 8.0;
};

void validate(const QuadratureSpec& spec);

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Supported orders: 4, 6, 8, 10, 12, 16, 20, 24, 32, 40, 48, 64.
const GaussRule& gauss_legendre(int n);

// Nodes and weights of n-point Gauss-Legendre rules on each of the panels
// [breaks[i], breaks[i+1]].
void panel_rule(const std::vector<double>& breaks, int n, std::vector<double>& nodes,
                std::vector<double>& weights);

using RealIntegrand = std::function<cplx(double)>;

struct IntegrationResult {
    cplx value;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// b may be +infinity; the range beyond spec.truncation_height is covered by
// doubling panels until they stop contributing.
IntegrationResult integrate_ex(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec);
cplx integrate(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec = {});

using HoloFunction = std::function<cplx(cplx)>;

struct DerivativeSpec {
    double radius = 1e-3;
    int nodes = 32;
    double rel_tol = 1e-7;
};

cplx complex_derivative(const HoloFunction& f, cplx s0, const DerivativeSpec& spec = {});

using ScalarField = std::function<cplx(UpperHalfPoint)>;

cplx hyperbolic_laplacian_fd(const ScalarField& F, UpperHalfPoint z, double h);

inline constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace modsurf
