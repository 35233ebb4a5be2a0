#include "modsurf/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace modsurf {

Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

UpperHalfPoint apply(const Mat2& g, UpperHalfPoint z) {
    const cplx w(z.x, z.y);
    const cplx r = (double(g.a) * w + double(g.b)) / (double(g.c) * w + double(g.d));
    return {r.real(), r.imag()};
}

bool in_fundamental_domain(UpperHalfPoint z, double eps) {
    return z.y > 0 && std::abs(z.x) <= 0.5 + eps && z.x * z.x + z.y * z.y >= 1.0 - eps;
}

Reduction reduce_to_fundamental_domain(UpperHalfPoint z) {
    if (!(z.y > 0)) throw DomainError("point not in the upper half-plane");
    Mat2 g;
    for (int iter = 0; iter < 100000; ++iter) {
        if (std::abs(z.x) > 0.5 + fd_eps) {
            const double n = std::round(z.x);
            z.x -= n;
            g = Mat2{1, -static_cast<long long>(n), 0, 1} * g;
        }
        const double r2 = z.x * z.x + z.y * z.y;
        if (r2 < 1.0 - fd_eps) {
            z = {-z.x / r2, z.y / r2};
            g = Mat2{0, -1, 1, 0} * g;
            continue;
        }
        if (std::abs(z.x) <= 0.5 + fd_eps) break;
    }
    return {z, g};
}

void validate(const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0)) throw DomainError("quadrature tolerance must be positive");
    if (spec.max_subdivisions < 1) throw DomainError("max subdivisions must be at least 1");
    if (!(spec.truncation_height > 0)) throw DomainError("truncation height must be positive");
}

namespace {

template <unsigned N>
GaussRule make_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    GaussRule r;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            r.x.push_back(0.0);
            r.w.push_back(w[i]);
        } else {
            r.x.push_back(a[i]);
            r.w.push_back(w[i]);
            r.x.push_back(-a[i]);
            r.w.push_back(w[i]);
        }
    }
    return r;
}

GaussRule build_rule(int n) {
    switch (n) {
        case 4: return make_rule<4>();
        case 6: return make_rule<6>();
        case 8: return make_rule<8>();
        case 10: return make_rule<10>();
        case 12: return make_rule<12>();
        case 16: return make_rule<16>();
        case 20: return make_rule<20>();
        case 24: return make_rule<24>();
        case 32: return make_rule<32>();
        case 40: return make_rule<40>();
        case 48: return make_rule<48>();
        case 64: return make_rule<64>();
        default: throw DomainError("unsupported Gauss-Legendre order " + std::to_string(n));
    }
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

void panel_rule(const std::vector<double>& breaks, int n, std::vector<double>& nodes,
                std::vector<double>& weights) {
    const GaussRule& g = gauss_legendre(n);
    nodes.clear();
    weights.clear();
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (std::size_t k = 0; k < g.x.size(); ++k) {
            nodes.push_back(c + h * g.x[k]);
            weights.push_back(h * g.w[k]);
        }
    }
}

namespace {

struct Panel {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

constexpr int kPanelOrder = 10;

cplx gl_panel(const RealIntegrand& f, double a, double b, int& evals) {
    const GaussRule& g = gauss_legendre(kPanelOrder);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0;
    for (std::size_t k = 0; k < g.x.size(); ++k) s += g.w[k] * f(c + h * g.x[k]);
    evals += static_cast<int>(g.x.size());
    return h * s;
}

Panel make_panel(const RealIntegrand& f, double a, double b, int& evals) {
    const double m = 0.5 * (a + b);
    const cplx whole = gl_panel(f, a, b, evals);
    const cplx halves = gl_panel(f, a, m, evals) + gl_panel(f, m, b, evals);
    return {a, b, halves, std::abs(halves - whole)};
}

IntegrationResult adaptive_gl(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    IntegrationResult res;
    std::priority_queue<Panel> heap;
    heap.push(make_panel(f, a, b, res.evaluations));
    cplx total = heap.top().value;
    double err = heap.top().err;
    int splits = 0;
    while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (splits >= spec.max_subdivisions)
            throw NonConvergence("adaptive quadrature exhausted its subdivision budget");
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        Panel l = make_panel(f, p.a, m, res.evaluations);
        Panel r = make_panel(f, m, p.b, res.evaluations);
        total += l.value + r.value - p.value;
        err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        ++splits;
        if (err < 0) err = 0;
    }
    // Resum to avoid drift from the running updates.
    total = 0;
    err = 0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().err;
        heap.pop();
    }
    res.value = total;
    res.error_estimate = err;
    return res;
}

// Tanh-sinh on a finite interval; robust to integrable endpoint singularities.
IntegrationResult tanh_sinh(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    IntegrationResult res;
    const double h2 = 0.5 * (b - a);
    auto node = [&](double t, cplx& acc) {
        const double u = 0.5 * pi * std::sinh(t);
        const double ch = std::cosh(u);
        const double x = std::tanh(u);
        const double w = 0.5 * pi * std::cosh(t) / (ch * ch);
        // distance to the nearer endpoint, computed without cancellation
        const double d = 1.0 / (std::exp(2 * std::abs(u)) + 1.0) * 2.0;
        const double xx = x > 0 ? b - h2 * d : a + h2 * d;
        if (xx <= a || xx >= b || w < 1e-300) return;
        acc += w * f(xx);
        ++res.evaluations;
    };
    double h = 0.5;
    // Far enough out that the nodes reach the endpoints to working precision;
    // nodes that round onto an endpoint are skipped.
    const double tmax = 6.5;
    cplx sum = 0;
    for (double t = -tmax; t <= tmax + 1e-12; t += h) node(t, sum);
    cplx prev = sum * h;
    for (int level = 0; level < 10; ++level) {
        h *= 0.5;
        for (double t = -tmax + h; t <= tmax; t += 2 * h) node(t, sum);
        const cplx cur = sum * h;
        if (std::abs(cur - prev) <= std::max(spec.abs_tol / h2, spec.rel_tol * std::abs(cur)) && level > 1) {
            res.value = h2 * cur;
            res.error_estimate = h2 * std::abs(cur - prev);
            return res;
        }
        prev = cur;
    }
    throw NonConvergence("tanh-sinh quadrature did not converge");
}

IntegrationResult finite(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    if (spec.scheme == Scheme::TanhSinh) return tanh_sinh(f, a, b, spec);
    return adaptive_gl(f, a, b, spec);
}

}  // namespace

IntegrationResult integrate_ex(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    validate(spec);
    if (a == b) return {};
    if (a > b) {
        IntegrationResult r = integrate_ex(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    if (std::isfinite(b)) return finite(f, a, b, spec);

    const double H = std::max(spec.truncation_height, a + spec.truncation_height);
    IntegrationResult res = finite(f, a, H, spec);
    QuadratureSpec tail = spec;
    tail.scheme = Scheme::GaussLegendre;
    double lo = H, width = std::max(1.0, H - a);
    for (int k = 0; k < 200; ++k) {
        tail.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value)) * 0.25;
        IntegrationResult seg = adaptive_gl(f, lo, lo + width, tail);
        res.value += seg.value;
        res.error_estimate += seg.error_estimate;
        res.evaluations += seg.evaluations;
        if (std::abs(seg.value) <= std::max(spec.abs_tol, 0.1 * spec.rel_tol * std::abs(res.value))) return res;
        lo += width;
        width *= 2;
    }
    throw NonConvergence("tail of half-infinite integral does not decay");
}

cplx integrate(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_ex(f, a, b, spec).value;
}

cplx complex_derivative(const HoloFunction& f, cplx s0, const DerivativeSpec& spec) {
    if (spec.nodes < 4 || spec.nodes % 2) throw DomainError("circle rule needs an even node count >= 4");
    const int n = spec.nodes;
    cplx full = 0, half = 0;
    double scale = 0;
    for (int k = 0; k < n; ++k) {
        const cplx e = std::polar(1.0, 2 * pi * k / n);
        const cplx v = f(s0 + spec.radius * e);
        scale = std::max(scale, std::abs(v));
        full += v / e;
        if (k % 2 == 0) half += v / e;
    }
    full /= n * spec.radius;
    half /= (n / 2) * spec.radius;
    const double floor = 1e-13 * scale / spec.radius;
    if (std::abs(full - half) > spec.rel_tol * std::abs(full) + floor)
        throw NonConvergence("Cauchy-circle derivative did not settle");
    return full;
}

cplx hyperbolic_laplacian_fd(const ScalarField& F, UpperHalfPoint z, double h) {
    if (!(h > 0)) throw DomainError("finite-difference step must be positive");
    if (z.y - h <= 0) throw DomainError("finite-difference stencil leaves the upper half-plane");
    const cplx c = F(z);
    const cplx sum = F({z.x + h, z.y}) + F({z.x - h, z.y}) + F({z.x, z.y + h}) + F({z.x, z.y - h});
    return z.y * z.y * (sum - 4.0 * c) / (h * h);
}

}  // namespace modsurf
