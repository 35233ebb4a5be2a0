#include "modsurf/fourier_field.hpp"

#include <algorithm>
#include <cmath>

namespace modsurf {

cplx FourierRow::eval(double x) const {
    cplx v = c0;
    for (std::size_t k = 0; k < cos.size(); ++k) v += cos[k] * std::cos(2 * pi * double(k + 1) * x);
    for (std::size_t k = 0; k < sin.size(); ++k) v += sin[k] * std::sin(2 * pi * double(k + 1) * x);
    return v;
}

FourierRow FourierRow::conj() const {
    FourierRow r;
    r.c0 = std::conj(c0);
    r.cos.reserve(cos.size());
    r.sin.reserve(sin.size());
    for (auto v : cos) r.cos.push_back(std::conj(v));
    for (auto v : sin) r.sin.push_back(std::conj(v));
    return r;
}

cplx FourierRow::integral_outside(double u) const {
    // Sine modes are odd and cancel; 2 int_u^{1/2} cos(2 pi n x) dx = -sin(2 pi n u)/(pi n).
    cplx v = c0 * (1.0 - 2.0 * u);
    for (std::size_t k = 0; k < cos.size(); ++k) {
        const double n = double(k + 1);
        v -= cos[k] * std::sin(2 * pi * n * u) / (pi * n);
    }
    return v;
}

namespace {

void trim_vec(std::vector<cplx>& v, double floor) {
    while (!v.empty() && std::abs(v.back()) <= floor) v.pop_back();
}

void add_at(std::vector<cplx>& v, std::size_t k, cplx x) {
    if (v.size() <= k) v.resize(k + 1, 0.0);
    v[k] += x;
}

}  // namespace

void FourierRow::trim(double rel) {
    double m = std::abs(c0);
    for (auto v : cos) m = std::max(m, std::abs(v));
    for (auto v : sin) m = std::max(m, std::abs(v));
    trim_vec(cos, rel * m);
    trim_vec(sin, rel * m);
}

FourierRow& FourierRow::operator+=(const FourierRow& o) {
    c0 += o.c0;
    for (std::size_t k = 0; k < o.cos.size(); ++k) add_at(cos, k, o.cos[k]);
    for (std::size_t k = 0; k < o.sin.size(); ++k) add_at(sin, k, o.sin[k]);
    return *this;
}

FourierRow& FourierRow::operator-=(const FourierRow& o) {
    c0 -= o.c0;
    for (std::size_t k = 0; k < o.cos.size(); ++k) add_at(cos, k, -o.cos[k]);
    for (std::size_t k = 0; k < o.sin.size(); ++k) add_at(sin, k, -o.sin[k]);
    return *this;
}

FourierRow& FourierRow::operator*=(cplx k) {
    c0 *= k;
    for (auto& v : cos) v *= k;
    for (auto& v : sin) v *= k;
    return *this;
}

FourierRow operator+(FourierRow a, const FourierRow& b) { return a += b; }
FourierRow operator-(FourierRow a, const FourierRow& b) { return a -= b; }
FourierRow operator*(FourierRow a, cplx k) { return a *= k; }
FourierRow operator*(cplx k, FourierRow a) { return a *= k; }

FourierRow operator*(const FourierRow& a, const FourierRow& b) {
    FourierRow r;
    // frequency k >= 0 for cosines (0 is the constant), signed k for sines
    auto add_cos = [&](long k, cplx v) {
        k = std::labs(k);
        if (k == 0) r.c0 += v;
        else add_at(r.cos, std::size_t(k - 1), v);
    };
    auto add_sin = [&](long k, cplx v) {
        if (k == 0) return;
        if (k < 0) add_at(r.sin, std::size_t(-k - 1), -v);
        else add_at(r.sin, std::size_t(k - 1), v);
    };
    const std::size_t na = std::max(a.cos.size(), a.sin.size());
    const std::size_t nb = std::max(b.cos.size(), b.sin.size());
    r.cos.assign(na + nb, 0.0);
    r.sin.assign(na + nb, 0.0);

    r.c0 = a.c0 * b.c0;
    for (std::size_t k = 0; k < b.cos.size(); ++k) r.cos[k] += a.c0 * b.cos[k];
    for (std::size_t k = 0; k < b.sin.size(); ++k) r.sin[k] += a.c0 * b.sin[k];
    for (std::size_t k = 0; k < a.cos.size(); ++k) r.cos[k] += b.c0 * a.cos[k];
    for (std::size_t k = 0; k < a.sin.size(); ++k) r.sin[k] += b.c0 * a.sin[k];

    for (std::size_t i = 0; i < a.cos.size(); ++i) {
        const long n = long(i + 1);
        for (std::size_t j = 0; j < b.cos.size(); ++j) {
            const long m = long(j + 1);
            const cplx v = 0.5 * a.cos[i] * b.cos[j];
            add_cos(n - m, v);
            add_cos(n + m, v);
        }
        for (std::size_t j = 0; j < b.sin.size(); ++j) {
            const long m = long(j + 1);
            const cplx v = 0.5 * a.cos[i] * b.sin[j];
            add_sin(n + m, v);
            add_sin(m - n, v);
        }
    }
    for (std::size_t i = 0; i < a.sin.size(); ++i) {
        const long n = long(i + 1);
        for (std::size_t j = 0; j < b.cos.size(); ++j) {
            const long m = long(j + 1);
            const cplx v = 0.5 * a.sin[i] * b.cos[j];
            add_sin(n + m, v);
            add_sin(n - m, v);
        }
        for (std::size_t j = 0; j < b.sin.size(); ++j) {
            const long m = long(j + 1);
            const cplx v = 0.5 * a.sin[i] * b.sin[j];
            add_cos(n - m, v);
            add_cos(n + m, -v);
        }
    }
    r.trim(1e-20);
    return r;
}

cplx mean_of_product(const FourierRow& a, const FourierRow& b) {
    cplx v = a.c0 * b.c0;
    const std::size_t nc = std::min(a.cos.size(), b.cos.size());
    for (std::size_t k = 0; k < nc; ++k) v += 0.5 * a.cos[k] * b.cos[k];
    const std::size_t ns = std::min(a.sin.size(), b.sin.size());
    for (std::size_t k = 0; k < ns; ++k) v += 0.5 * a.sin[k] * b.sin[k];
    return v;
}

cplx CuspSeries::eval(double y) const {
    const double L = std::log(y);
    cplx v = 0;
    for (const auto& t : terms) v += t.coef * std::exp(t.power * L) * std::pow(L, t.log_power);
    return v;
}

CuspSeries CuspSeries::conj() const {
    CuspSeries r;
    for (const auto& t : terms) r.terms.push_back({std::conj(t.coef), std::conj(t.power), t.log_power});
    return r;
}

void CuspSeries::simplify() {
    // Terms that cancel to rounding level are dropped so that growth terms
    // removed by a subtraction do not survive as 1e-17 residue.
    std::vector<CuspTerm> out;
    std::vector<double> scale;
    for (const auto& t : terms) {
        auto it = std::find_if(out.begin(), out.end(), [&](const CuspTerm& o) {
            return o.log_power == t.log_power && std::abs(o.power - t.power) <= 1e-14 * (1 + std::abs(t.power));
        });
        if (it == out.end()) {
            out.push_back(t);
            scale.push_back(std::abs(t.coef));
        } else {
            it->coef += t.coef;
            auto& sc = scale[std::size_t(it - out.begin())];
            sc = std::max(sc, std::abs(t.coef));
        }
    }
    std::vector<CuspTerm> kept;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (std::abs(out[i].coef) > 1e-13 * scale[i]) kept.push_back(out[i]);
    terms = std::move(kept);
}

cplx CuspSeries::integral_from(double Y) const {
    const double L = std::log(Y);
    cplx total = 0;
    for (const auto& t : terms) {
        // int_Y^inf y^(q-1) L^m dy with q = power - 1, by the recursion
        // I_m = -Y^q L^m / q - (m/q) I_{m-1}.
        const cplx q = t.power - 1.0;
        if (q.real() >= 0) throw DomainError("cusp integral diverges");
        const cplx Yq = std::exp(q * L);
        cplx I = -Yq / q;
        for (int m = 1; m <= t.log_power; ++m) I = -Yq * std::pow(L, m) / q - (double(m) / q) * I;
        total += t.coef * I;
    }
    return total;
}

CuspSeries& CuspSeries::operator+=(const CuspSeries& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    simplify();
    return *this;
}

CuspSeries& CuspSeries::operator*=(cplx k) {
    for (auto& t : terms) t.coef *= k;
    simplify();
    return *this;
}

CuspSeries operator+(CuspSeries a, const CuspSeries& b) { return a += b; }
CuspSeries operator-(CuspSeries a, const CuspSeries& b) { return a += b * cplx(-1.0); }
CuspSeries operator*(CuspSeries a, cplx k) { return a *= k; }
CuspSeries operator*(cplx k, CuspSeries a) { return a *= k; }

CuspSeries operator*(const CuspSeries& a, const CuspSeries& b) {
    CuspSeries r;
    for (const auto& s : a.terms)
        for (const auto& t : b.terms) r.terms.push_back({s.coef * t.coef, s.power + t.power, s.log_power + t.log_power});
    r.simplify();
    return r;
}

namespace {

std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r = a;
    r.insert(r.end(), b.begin(), b.end());
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
    auto ra = a.row, rb = b.row;
    return {[ra, rb](double y) { return ra(y) + rb(y); }, a.cusp + b.cusp, std::max(a.cusp_from, b.cusp_from),
            merge_breaks(a.breaks, b.breaks)};
}

Field operator-(const Field& a, const Field& b) {
    auto ra = a.row, rb = b.row;
    return {[ra, rb](double y) { return ra(y) - rb(y); }, a.cusp - b.cusp, std::max(a.cusp_from, b.cusp_from),
            merge_breaks(a.breaks, b.breaks)};
}

Field operator*(const Field& a, const Field& b) {
    auto ra = a.row, rb = b.row;
    return {[ra, rb](double y) { return ra(y) * rb(y); }, a.cusp * b.cusp, std::max(a.cusp_from, b.cusp_from),
            merge_breaks(a.breaks, b.breaks)};
}

Field operator*(cplx k, const Field& a) {
    auto ra = a.row;
    return {[ra, k](double y) { return ra(y) * k; }, a.cusp * k, a.cusp_from, a.breaks};
}

Field conj(const Field& a) {
    auto ra = a.row;
    return {[ra](double y) { return ra(y).conj(); }, a.cusp.conj(), a.cusp_from, a.breaks};
}

Field constant_field(cplx k) {
    FourierRow r;
    r.c0 = k;
    CuspSeries c;
    if (k != cplx(0.0)) c.terms.push_back({k, 0.0, 0});
    return {[r](double) { return r; }, c, 1.0, {}};
}

}  // namespace modsurf
