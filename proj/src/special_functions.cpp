#include "modsurf/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace modsurf {

namespace {

// Bit-exact memo keyed by a complex argument.
class ComplexMemo {
public:
    template <class F>
    cplx get(cplx s, F&& compute) {
        const Key k = key(s);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(k);
            if (it != map_.end()) return it->second;
        }
        const cplx v = compute(s);
        std::lock_guard<std::mutex> lock(mu_);
        if (map_.size() > 4000000) map_.clear();
        map_.emplace(k, v);
        return v;
    }

private:
    struct Key {
        std::uint64_t re, im;
        bool operator==(const Key& o) const { return re == o.re && im == o.im; }
    };
    struct Hash {
        std::size_t operator()(const Key& k) const { return k.re * 0x9E3779B97F4A7C15ull ^ (k.im + (k.re >> 7)); }
    };
    static Key key(cplx s) {
        Key k;
        const double r = s.real(), i = s.imag();
        std::memcpy(&k.re, &r, sizeof r);
        std::memcpy(&k.im, &i, sizeof i);
        return k;
    }
    std::mutex mu_;
    std::unordered_map<Key, cplx, Hash> map_;
};

ComplexMemo& gamma_memo() {
    static ComplexMemo m;
    return m;
}
ComplexMemo& zeta_memo() {
    static ComplexMemo m;
    return m;
}

constexpr std::array<double, 15> kLanczos = {
    1.000000000000000007405727,       676.5203681218835372087395,       -1259.13921672228177389344,
    771.3234287754377065164444,       -176.6150291459897810877191,      12.50734322502874532697338,
    -0.1385710323332822431295777,     0.00001009112629473137286227944,  -0.0000003434584225253104608054195,
    0.0000008359337835712596538246431, -0.0000008597755644539608755436647, 0.0000006046497338494928107833457,
    -0.0000002911328727890613713860013, 8.589129313568226855860868e-8,   -1.164606563986785152934326e-8,
};
constexpr double kLanczosG = 7.0;

// B_{2k}/(2k)! for k = 1..12.
constexpr std::array<double, 12> kBernoulliRatio = {
    1.0 / 12,
    -1.0 / 720,
    1.0 / 30240,
    -1.0 / 1209600,
    1.0 / 47900160,
    -691.0 / 1307674368000,
    1.0 / 74724249600,
    -3617.0 / 10670622842880000,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
};

bool is_nonpositive_integer(cplx s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real());
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    const cplx I(0, 1);
    if (std::abs(z.imag()) < 20) return std::log(std::sin(pi * z));
    if (z.imag() > 0) return -I * pi * z + std::log((std::exp(2.0 * I * pi * z) - 1.0) / (2.0 * I));
    return I * pi * z + std::log((1.0 - std::exp(-2.0 * I * pi * z)) / (2.0 * I));
}

cplx log_gamma_lanczos(cplx s) {
    const cplx z = s - 1.0;
    cplx sum = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) sum += kLanczos[k] / (z + double(k));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

cplx log_gamma_uncached(cplx s) {
    if (is_nonpositive_integer(s)) throw PoleError("Gamma has a pole at a non-positive integer");
    if (s.real() < 0.5) return std::log(pi) - log_sin_pi(s) - log_gamma_lanczos(1.0 - s);
    return log_gamma_lanczos(s);
}

}  // namespace

cplx log_gamma(cplx s) { return gamma_memo().get(s, log_gamma_uncached); }

cplx gamma_fn(cplx s) { return std::exp(log_gamma(s)); }

cplx zeta_euler_maclaurin(cplx s) {
    if (s == cplx(1.0)) throw PoleError("zeta has a pole at s = 1");
    const int N = static_cast<int>(2 * std::abs(s.imag()) + 20);
    cplx sum = 0;
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
    const double logN = std::log(double(N));
    const cplx Ns = std::exp(-s * logN);
    sum += double(N) * Ns / (s - 1.0) + 0.5 * Ns;
    cplx poch = s;
    cplx Npow = Ns / double(N);
    for (std::size_t k = 0; k < kBernoulliRatio.size(); ++k) {
        sum += kBernoulliRatio[k] * poch * Npow;
        const double j = 2.0 * k + 1;
        poch *= (s + j) * (s + j + 1.0);
        Npow /= double(N) * double(N);
    }
    return sum;
}

cplx zeta_via_reflection(cplx s) {
    if (s == cplx(0.0)) return -0.5;
    const cplx logf = s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_sin_pi(0.5 * s) + log_gamma(1.0 - s);
    return std::exp(logf) * zeta_euler_maclaurin(1.0 - s);
}

cplx riemann_zeta(cplx s) {
    if (s == cplx(1.0)) throw PoleError("zeta has a pole at s = 1");
    if (s == cplx(0.0)) return -0.5;
    return zeta_memo().get(s, [](cplx a) {
        if (a.real() >= 0.5) return zeta_euler_maclaurin(a);
        // Trivial zeros: sin(pi a/2) vanishes exactly.
        if (is_nonpositive_integer(a) && std::fmod(a.real(), 2.0) == 0.0) return cplx(0.0);
        return zeta_via_reflection(a);
    });
}

cplx completed_xi(cplx s) {
    if (s == cplx(0.0) || s == cplx(1.0)) throw PoleError("xi has poles at 0 and 1");
    if (s.real() < 0.5) s = 1.0 - s;
    return std::exp(-0.5 * s * std::log(pi) + log_gamma(0.5 * s)) * riemann_zeta(s);
}

cplx c_coefficient(cplx s) {
    if (s == cplx(0.5)) return -1.0;
    if (s == cplx(0.0) || s == cplx(1.0)) throw PoleError("c_s is undefined at s = 0 and s = 1");
    const cplx den = completed_xi(2.0 * s);
    if (den == cplx(0.0)) throw PoleError("c_s has a pole where xi(2s) vanishes");
    return completed_xi(2.0 - 2.0 * s) / den;
}

cplx c_derivative(cplx alpha) { return complex_derivative(c_coefficient, alpha); }

cplx sigma_power(long long n, cplx w) {
    if (n < 1) throw DomainError("divisor sums need n >= 1");
    cplx sum = 0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        sum += std::exp(w * std::log(double(d)));
        const long long e = n / d;
        if (e != d) sum += std::exp(w * std::log(double(e)));
    }
    return sum;
}

// K_nu(x) = 1/2 int exp(-x cosh t + nu t) dt along the line Im t = theta, by
// the trapezoid rule. theta sits at the saddle when Im nu < x and just below
// pi/2 otherwise, which keeps cancellation in the oscillatory regime mild.
cplx bessel_k(cplx nu, double x) {
    if (!(x > 0)) throw DomainError("K-Bessel needs x > 0");
    if (nu.real() < 0) nu = -nu;
    const bool flip = nu.imag() < 0;
    if (flip) nu = std::conj(nu);
    const double a = nu.real(), b = nu.imag();

    double theta = 0;
    if (b > 0) {
        const double delta = std::clamp(3.0 / b, 0.05, 0.5);
        theta = b < x ? std::min(std::asin(b / x), 0.5 * pi - delta) : 0.5 * pi - delta;
    }
    const double ct = std::cos(theta), st = std::sin(theta);
    const double xc = x * ct;

    auto re_exponent = [&](double u) { return -xc * std::cosh(u) + a * u; };
    const double ustar = a > 0 ? std::asinh(a / xc) : 0.0;
    const double e0 = re_exponent(ustar);
    double U = ustar + 0.25;
    while (re_exponent(U) > e0 - 46.0) U += 0.25;

    const double shift = e0 - b * theta;
    if (shift < -740.0) return 0.0;

    auto term = [&](double u) {
        const double eu = std::exp(u), ch = 0.5 * (eu + 1 / eu), sh = 0.5 * (eu - 1 / eu);
        const double re = -xc * ch + a * u - b * theta - shift;
        const double im = -x * sh * st + a * theta + b * u;
        return std::polar(std::exp(re), im);
    };

    double h = pi * (0.5 * pi - theta) / 25.0;
    for (int attempt = 0; attempt < 5; ++attempt, h *= 0.5) {
        const long K = static_cast<long>(std::ceil(U / h));
        cplx s_even = 0, s_odd = 0;
        double mag = 0;
        for (long k = -K; k <= K; ++k) {
            const cplx t = term(k * h);
            mag += std::abs(t);
            if (k % 2 == 0) s_even += t;
            else s_odd += t;
        }
        const cplx fine = h * (s_even + s_odd);
        const cplx coarse = 2 * h * s_even;
        if (std::abs(fine - coarse) <= 1e-7 * h * mag) {
            const cplx r = 0.5 * fine * std::exp(shift);
            return flip ? std::conj(r) : r;
        }
    }
    throw NonConvergence("K-Bessel trapezoid rule did not settle");
}

cplx whittaker_W(cplx s, double y) {
    if (!(y > 0)) throw DomainError("Whittaker function needs y > 0");
    return 2.0 * std::sqrt(y) * bessel_k(s - 0.5, 2 * pi * y);
}

namespace {

cplx mellin_closed(cplx v, cplx a, cplx b) {
    const cplx lg = log_gamma(0.5 * (v + a + b - 1.0)) + log_gamma(0.5 * (v + a - b)) + log_gamma(0.5 * (v - a + b)) +
                    log_gamma(0.5 * (v - a - b + 1.0)) - log_gamma(v);
    return 0.5 * std::exp(lg - v * std::log(pi));
}

struct PowerTerm {
    cplx coef;
    cplx power;
};

// Small-y expansion of W_a(y) = 2 sqrt(y) K_mu(2 pi y), mu = a - 1/2, as
// sum coef * y^power.
std::vector<PowerTerm> whittaker_series(cplx a, int kmax) {
    const cplx mu = a - 0.5;
    cplx gp, gm;
    try {
        gp = gamma_fn(mu);
        gm = gamma_fn(-mu);
    } catch (const PoleError&) {
        throw DomainError("small-y Whittaker series needs a non-integer Bessel order");
    }
    std::vector<PowerTerm> out;
    cplx pm = 1.0, pp = 1.0;  // Pochhammer (1-mu)_k, (1+mu)_k
    double fact = 1.0;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) {
            pm *= double(k) - mu;
            pp *= double(k) + mu;
            fact *= k;
        }
        const cplx e1 = 2.0 * k - mu, e2 = 2.0 * k + mu;
        out.push_back({gp * std::exp(e1 * std::log(pi)) / (fact * pm), 0.5 + e1});
        out.push_back({gm * std::exp(e2 * std::log(pi)) / (fact * pp), 0.5 + e2});
    }
    return out;
}

constexpr double kSeriesCut = 0.05;

}  // namespace

cplx mellin_WW_range(cplx v, cplx a, cplx b, double y0, double y1) {
    if (!(y0 > 0) || !(y1 > y0)) throw DomainError("Mellin range needs 0 < y0 < y1");
    const RealIntegrand f = [&](double y) {
        return std::exp((v - 2.0) * std::log(y)) * whittaker_W(a, y) * whittaker_W(b, y);
    };
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.max_subdivisions = 2000;
    spec.truncation_height = std::max(4.0, y0 + 1.0);
    return integrate(f, y0, y1, spec);
}

cplx mellin_WW(cplx v, cplx a, cplx b, MellinMethod method) {
    if (method == MellinMethod::ClosedForm) return mellin_closed(v, a, b);

    // Series on (0, kSeriesCut], integrated term by term (continued
    // analytically where the integral diverges), quadrature beyond.
    const auto sa = whittaker_series(a, 10), sb = whittaker_series(b, 10);
    cplx head = 0;
    for (const auto& p : sa) {
        for (const auto& q : sb) {
            const cplx e = v - 1.0 + p.power + q.power;  // exponent of y after integration
            if (std::abs(e) < 1e-12) throw DomainError("Mellin integral has a pole at this parameter");
            head += p.coef * q.coef * std::exp(e * std::log(kSeriesCut)) / e;
        }
    }
    return head + mellin_WW_range(v, a, b, kSeriesCut, inf);
}

}  // namespace modsurf
