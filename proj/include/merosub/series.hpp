#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "merosub/errors.hpp"

namespace merosub {

using Complex = std::complex<double>;

inline constexpr int default_order = 64;
inline constexpr double divide_floor = 1e-8;
inline constexpr double power_base_tol = 1e-9;
inline constexpr double pole_guard = 1e-3;

inline bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

/// Truncated Taylor series c_0 + c_1 z + ... + c_K z^K on |z| <= r_max.
class AnalyticSeries {
  public:
    explicit AnalyticSeries(std::vector<Complex> coeffs, double r_max = 1.0)
        : c_(std::move(coeffs)), r_max_(r_max) {
        if (c_.empty())
            throw UsageError("analytic series needs at least one coefficient");
        if (!(r_max_ > 0.0) || r_max_ > 1.0)
            throw UsageError("validity radius must lie in (0, 1]");
        for (const Complex& c : c_)
            if (!finite(c))
                throw NumericError("non-finite series coefficient");
    }

    static AnalyticSeries constant(Complex c, int order = default_order) {
        std::vector<Complex> v(static_cast<std::size_t>(order) + 1, Complex{});
        v[0] = c;
        return AnalyticSeries(std::move(v));
    }

    static AnalyticSeries identity(int order = default_order) {
        std::vector<Complex> v(static_cast<std::size_t>(order) + 1, Complex{});
        if (order >= 1)
            v[1] = 1.0;
        return AnalyticSeries(std::move(v));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double r_max() const { return r_max_; }
    const std::vector<Complex>& coeffs() const { return c_; }

    /// Coefficient of z^n; zero beyond the truncation order.
    Complex coeff(int n) const {
        return (n >= 0 && n < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(n)]
                                                           : Complex{};
    }

  private:
    std::vector<Complex> c_;
    double r_max_;
};

/// z^{-1} + a_1 z + ... + a_K z^K; the pole coefficient is fixed at 1.
class MeromorphicSeries {
  public:
    explicit MeromorphicSeries(std::vector<Complex> tail) : a_(std::move(tail)) {
        if (a_.empty())
            throw UsageError("meromorphic series needs at least one tail coefficient");
        for (const Complex& c : a_)
            if (!finite(c))
                throw NumericError("non-finite series coefficient");
    }

    static MeromorphicSeries pole(int order = default_order) {
        return MeromorphicSeries(std::vector<Complex>(static_cast<std::size_t>(order), Complex{}));
    }

    int order() const { return static_cast<int>(a_.size()); }
    const std::vector<Complex>& tail() const { return a_; }

    /// a_k for k = 1..K.
    Complex tail_coeff(int k) const {
        return (k >= 1 && k <= order()) ? a_[static_cast<std::size_t>(k - 1)] : Complex{};
    }

  private:
    std::vector<Complex> a_;
};

inline AnalyticSeries pad(const AnalyticSeries& s, int order) {
    if (s.order() >= order)
        return s;
    std::vector<Complex> c = s.coeffs();
    c.resize(static_cast<std::size_t>(order) + 1, Complex{});
    return AnalyticSeries(std::move(c), s.r_max());
}

inline AnalyticSeries
linear_combine(const std::vector<std::pair<Complex, AnalyticSeries>>& terms) {
    if (terms.empty())
        throw UsageError("linear_combine of an empty term list");
    int order = 0;
    double r = 1.0;
    for (const auto& [w, s] : terms) {
        order = std::max(order, s.order());
        r = std::min(r, s.r_max());
    }
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    for (const auto& [w, s] : terms)
        for (int n = 0; n <= s.order(); ++n)
            c[static_cast<std::size_t>(n)] += w * s.coeff(n);
    return AnalyticSeries(std::move(c), r);
}

inline AnalyticSeries multiply(const AnalyticSeries& s1, const AnalyticSeries& s2) {
    const int order = std::max(s1.order(), s2.order());
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    const int k1 = std::min(order, s1.order());
    for (int i = 0; i <= k1; ++i) {
        const Complex a = s1.coeff(i);
        if (a == Complex{})
            continue;
        const int jmax = std::min(order - i, s2.order());
        for (int j = 0; j <= jmax; ++j)
            c[static_cast<std::size_t>(i + j)] += a * s2.coeff(j);
    }
    return AnalyticSeries(std::move(c), std::min(s1.r_max(), s2.r_max()));
}

/// Long division: returns d with multiply(d, s2) == s1 up to the truncation order.
inline AnalyticSeries divide(const AnalyticSeries& s1, const AnalyticSeries& s2) {
    const double b0 = std::abs(s2.coeff(0));
    if (b0 < divide_floor)
        throw DegenerateDivision(b0);
    const int order = std::max(s1.order(), s2.order());
    std::vector<Complex> d(static_cast<std::size_t>(order) + 1, Complex{});
    for (int n = 0; n <= order; ++n) {
        Complex acc = s1.coeff(n);
        for (int j = 1; j <= n; ++j)
            acc -= s2.coeff(j) * d[static_cast<std::size_t>(n - j)];
        d[static_cast<std::size_t>(n)] = acc / s2.coeff(0);
    }
    return AnalyticSeries(std::move(d), std::min(s1.r_max(), s2.r_max()));
}

inline AnalyticSeries differentiate(const AnalyticSeries& s) {
    if (s.order() < 1)
        return AnalyticSeries::constant(0.0, 0);
    std::vector<Complex> c(static_cast<std::size_t>(s.order()), Complex{});
    for (int n = 0; n < s.order(); ++n)
        c[static_cast<std::size_t>(n)] = static_cast<double>(n + 1) * s.coeff(n + 1);
    return AnalyticSeries(std::move(c), s.r_max());
}

/// Multiplication by z, extending the truncation order by one.
inline AnalyticSeries shift_up(const AnalyticSeries& s) {
    std::vector<Complex> c(static_cast<std::size_t>(s.order()) + 2, Complex{});
    for (int n = 0; n <= s.order(); ++n)
        c[static_cast<std::size_t>(n + 1)] = s.coeff(n);
    return AnalyticSeries(std::move(c), s.r_max());
}

/// Principal log with log s(0) = 0; requires s(0) = 1.
inline AnalyticSeries log_series(const AnalyticSeries& s) {
    if (std::abs(s.coeff(0) - 1.0) > power_base_tol)
        throw BranchRisk(std::abs(s.coeff(0) - 1.0));
    const int order = s.order();
    std::vector<Complex> l(static_cast<std::size_t>(order) + 1, Complex{});
    // n c_n = n l_n + sum_{j=1..n-1} j l_j c_{n-j}, from s' = l' s with c_0 = 1.
    for (int n = 1; n <= order; ++n) {
        Complex acc = static_cast<double>(n) * s.coeff(n);
        for (int j = 1; j < n; ++j)
            acc -= static_cast<double>(j) * l[static_cast<std::size_t>(j)] * s.coeff(n - j);
        l[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
    }
    return AnalyticSeries(std::move(l), s.r_max());
}

inline AnalyticSeries exp_series(const AnalyticSeries& t) {
    const int order = t.order();
    std::vector<Complex> e(static_cast<std::size_t>(order) + 1, Complex{});
    e[0] = std::exp(t.coeff(0));
    // n e_n = sum_{j=1..n} j t_j e_{n-j}, from E' = t' E.
    for (int n = 1; n <= order; ++n) {
        Complex acc{};
        for (int j = 1; j <= n; ++j)
            acc += static_cast<double>(j) * t.coeff(j) * e[static_cast<std::size_t>(n - j)];
        e[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
    }
    return AnalyticSeries(std::move(e), t.r_max());
}

/// s^mu = exp(mu log s), principal branch anchored at s(0) = 1.
inline AnalyticSeries complex_power(const AnalyticSeries& s, Complex mu) {
    AnalyticSeries l = log_series(s);
    std::vector<Complex> scaled(l.coeffs());
    for (Complex& c : scaled)
        c *= mu;
    return exp_series(AnalyticSeries(std::move(scaled), l.r_max()));
}

inline Complex evaluate(const AnalyticSeries& s, Complex z) {
    if (std::abs(z) > s.r_max() + 1e-12)
        throw DomainError("|z| exceeds the validity radius");
    Complex acc = s.coeff(s.order());
    for (int n = s.order() - 1; n >= 0; --n)
        acc = acc * z + s.coeff(n);
    return acc;
}

inline Complex evaluate(const MeromorphicSeries& f, Complex z) {
    const double az = std::abs(z);
    if (az > 1.0 + 1e-12)
        throw DomainError("|z| exceeds the unit disk");
    if (az < pole_guard)
        throw DomainError("|z| below the pole guard");
    Complex acc{};
    for (int k = f.order(); k >= 1; --k)
        acc = acc * z + f.tail_coeff(k);
    return 1.0 / z + acc * z;
}

inline std::vector<Complex> circle_points(double r, int n) {
    std::vector<Complex> pts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * std::numbers::pi * j / n;
        pts[static_cast<std::size_t>(j)] = Complex{r * std::cos(t), r * std::sin(t)};
    }
    return pts;
}

/// Values at z_j = r e^{2 pi i j / N}, j = 0..N-1.
inline std::vector<Complex> sample_circle(const AnalyticSeries& s, double r, int n) {
    if (!(r > 0.0) || r > s.r_max() + 1e-12)
        throw DomainError("circle radius outside (0, r_max]");
    if (n < 1)
        throw UsageError("sample count must be positive");
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n));
    for (const Complex& z : circle_points(r, n))
        out.push_back(evaluate(s, z));
    return out;
}

/// Truncated composition s(w(z)) for a Schwarz function w.
inline AnalyticSeries compose_schwarz(const AnalyticSeries& s, const AnalyticSeries& w) {
    if (std::abs(w.coeff(0)) > power_base_tol)
        throw NotSchwarz("w(0) != 0");
    for (const Complex& v : sample_circle(w, w.r_max(), 128))
        if (std::abs(v) >= 1.0 - 1e-12)
            throw NotSchwarz("|w| reaches 1 on the boundary");
    const int order = std::max(s.order(), w.order());
    AnalyticSeries acc = AnalyticSeries::constant(s.coeff(s.order()), order);
    for (int n = s.order() - 1; n >= 0; --n) {
        acc = multiply(acc, w);
        acc = linear_combine({{1.0, acc}, {s.coeff(n), AnalyticSeries::constant(1.0, 0)}});
    }
    return AnalyticSeries(acc.coeffs(), std::min(s.r_max(), w.r_max()));
}

// Convenience arithmetic used by the theorem builders.
inline AnalyticSeries operator+(const AnalyticSeries& a, const AnalyticSeries& b) {
    return linear_combine({{1.0, a}, {1.0, b}});
}
inline AnalyticSeries operator-(const AnalyticSeries& a, const AnalyticSeries& b) {
    return linear_combine({{1.0, a}, {-1.0, b}});
}
inline AnalyticSeries operator*(Complex w, const AnalyticSeries& s) {
    return linear_combine({{w, s}});
}
inline AnalyticSeries operator*(const AnalyticSeries& a, const AnalyticSeries& b) {
    return multiply(a, b);
}
inline AnalyticSeries operator+(const AnalyticSeries& a, Complex c) {
    return a + AnalyticSeries::constant(c, 0);
}
inline AnalyticSeries operator+(Complex c, const AnalyticSeries& a) { return a + c; }
inline AnalyticSeries operator-(const AnalyticSeries& a, Complex c) { return a + (-c); }
inline AnalyticSeries operator-(Complex c, const AnalyticSeries& a) {
    return AnalyticSeries::constant(c, 0) - a;
}

} // namespace merosub
