#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "merosub/series.hpp"

namespace merosub {

inline constexpr double decision_tol = 1e-6;
inline constexpr double winding_guard = 1e-4;
inline constexpr double derivative_floor = 1e-8;

// Subordinate samples are pulled slightly inside the fixed outer curve so a
// function compared against itself lands strictly interior.
inline constexpr double outer_radius = 0.95;
inline constexpr double inner_cap = 0.93;

struct DiskGrid {
    std::vector<double> radii{0.3, 0.5, 0.7, 0.85, 0.95};
    int angular_count = 1024;

    void validate() const {
        if (radii.empty())
            throw UsageError("grid needs at least one radius");
        double prev = 0.0;
        for (double r : radii) {
            if (!(r > prev) || r > outer_radius + 1e-12)
                throw UsageError("grid radii must be ascending in (0, 0.95]");
            prev = r;
        }
        if (angular_count < 256)
            throw UsageError("grid needs at least 256 angular samples");
    }
};

enum class Status { Fails, Inconclusive, Holds };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::Fails: return "Fails";
    case Status::Inconclusive: return "Inconclusive";
    default: return "Holds";
    }
}

struct Witness {
    Complex z;
    Complex value;
};

struct Verdict {
    Status status = Status::Inconclusive;
    double margin = 0.0;
    std::optional<Witness> witness;

    static Verdict holds(double margin) { return {Status::Holds, margin, std::nullopt}; }
    static Verdict fails(double margin, Witness w) { return {Status::Fails, margin, w}; }
    static Verdict inconclusive(double margin, std::optional<Witness> w = std::nullopt) {
        return {Status::Inconclusive, margin, w};
    }
};

/// Signed margin against the decision band: Holds above, Fails below.
inline Verdict verdict_from_margin(double margin, Complex z, Complex value) {
    if (margin > decision_tol)
        return Verdict::holds(margin);
    if (margin < -decision_tol)
        return Verdict::fails(margin, Witness{z, value});
    return Verdict::inconclusive(margin, Witness{z, value});
}

/// Associative meet with Fails < Inconclusive < Holds.
inline Verdict meet(const Verdict& a, const Verdict& b) {
    const Verdict& worse = (static_cast<int>(a.status) < static_cast<int>(b.status)) ? a
                           : (static_cast<int>(b.status) < static_cast<int>(a.status))
                               ? b
                               : (a.margin <= b.margin ? a : b);
    Verdict out = worse;
    out.margin = std::min(a.margin, b.margin);
    return out;
}

inline std::pair<double, Complex> min_real_on_disk(const AnalyticSeries& s,
                                                   const DiskGrid& grid) {
    grid.validate();
    double best = std::numeric_limits<double>::infinity();
    Complex argmin{};
    for (double r : grid.radii) {
        const double rr = std::min(r, s.r_max());
        const auto pts = circle_points(rr, grid.angular_count);
        for (const Complex& z : pts) {
            const double re = evaluate(s, z).real();
            if (re < best) {
                best = re;
                argmin = z;
            }
        }
    }
    return {best, argmin};
}

namespace detail {

inline double point_segment_distance(Complex w, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0)
        return std::abs(w - a);
    double t = ((w.real() - a.real()) * ab.real() + (w.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(w - (a + t * ab));
}

struct WindingResult {
    int winding = 0;
    double distance = 0.0; // exact min distance from the query to the curve
};

// Signed-crossing winding number with a min-distance sweep in the same pass.
inline WindingResult winding_scan(std::span<const Complex> curve, Complex w) {
    WindingResult out;
    out.distance = std::numeric_limits<double>::infinity();
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = curve[i] - w;
        const Complex b = curve[(i + 1) % n] - w;
        const double cross = a.real() * b.imag() - a.imag() * b.real();
        if (a.imag() <= 0.0) {
            if (b.imag() > 0.0 && cross > 0.0)
                ++out.winding;
        } else {
            if (b.imag() <= 0.0 && cross < 0.0)
                --out.winding;
        }
        // Cheap reject before the exact point-segment distance: along each
        // axis a sign-constant segment keeps its endpoint minimum.
        const double lbx = (a.real() > 0.0) == (b.real() > 0.0)
                               ? std::min(std::abs(a.real()), std::abs(b.real()))
                               : 0.0;
        const double lby = (a.imag() > 0.0) == (b.imag() > 0.0)
                               ? std::min(std::abs(a.imag()), std::abs(b.imag()))
                               : 0.0;
        if (std::max(lbx, lby) > out.distance)
            continue;
        out.distance = std::min(out.distance,
                                point_segment_distance(w, curve[i], curve[(i + 1) % n]));
    }
    return out;
}

} // namespace detail

/// Total argument change of the closed curve about w, in turns.
inline int winding_number(std::span<const Complex> curve, Complex w) {
    if (curve.size() < 3)
        throw UsageError("winding number needs a closed curve of at least 3 points");
    const auto res = detail::winding_scan(curve, w);
    if (res.distance <= winding_guard)
        throw TooClose(res.distance);
    return res.winding;
}

/// Batched point-in-curve queries with an inscribed-disk fast accept and a
/// bounding-box fast reject around one reference interior point.
class CurveTester {
  public:
    CurveTester(std::vector<Complex> curve, Complex center)
        : curve_(std::move(curve)), center_(center) {
        if (curve_.size() < 3)
            throw UsageError("curve tester needs at least 3 points");
        lo_ = hi_ = curve_.front();
        for (const Complex& p : curve_) {
            lo_ = {std::min(lo_.real(), p.real()), std::min(lo_.imag(), p.imag())};
            hi_ = {std::max(hi_.real(), p.real()), std::max(hi_.imag(), p.imag())};
        }
        const auto scan = detail::winding_scan(curve_, center_);
        safe_radius_ = scan.distance;
        center_winding_ = scan.winding;
    }

    struct Query {
        int winding = 0;
        double distance = 0.0; // lower bound on the distance to the curve
    };

    Query query(Complex w) const {
        const double dc = std::abs(w - center_);
        if (dc < safe_radius_ - winding_guard)
            return {center_winding_, safe_radius_ - dc};
        const double dx = std::max({lo_.real() - w.real(), w.real() - hi_.real(), 0.0});
        const double dy = std::max({lo_.imag() - w.imag(), w.imag() - hi_.imag(), 0.0});
        const double outside = std::hypot(dx, dy);
        if (outside > winding_guard)
            return {0, outside};
        const auto scan = detail::winding_scan(curve_, w);
        return {scan.winding, scan.distance};
    }

    int center_winding() const { return center_winding_; }

  private:
    std::vector<Complex> curve_;
    Complex center_;
    Complex lo_, hi_;
    double safe_radius_ = 0.0;
    int center_winding_ = 0;
};

namespace detail {

// Near-duplicate detection among boundary samples via a uniform hash grid;
// only pairs at cyclic index distance >= gap count as collisions.
inline std::optional<std::pair<int, int>>
find_collision(const std::vector<Complex>& vals, double tol, int gap) {
    const int n = static_cast<int>(vals.size());
    const double cell = std::max(tol, 1e-300);
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    buckets.reserve(vals.size() * 2);
    const auto key = [&](long long ix, long long iy) {
        return static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ULL ^
               static_cast<std::uint64_t>(iy);
    };
    for (int i = 0; i < n; ++i) {
        const long long ix = static_cast<long long>(std::floor(vals[i].real() / cell));
        const long long iy = static_cast<long long>(std::floor(vals[i].imag() / cell));
        for (long long ax = ix - 1; ax <= ix + 1; ++ax)
            for (long long ay = iy - 1; ay <= iy + 1; ++ay) {
                auto it = buckets.find(key(ax, ay));
                if (it == buckets.end())
                    continue;
                for (int j : it->second) {
                    const int d = std::abs(i - j);
                    if (std::min(d, n - d) < gap)
                        continue;
                    if (std::abs(vals[i] - vals[j]) < tol)
                        return std::make_pair(j, i);
                }
            }
        buckets[key(ix, iy)].push_back(i);
    }
    return std::nullopt;
}

} // namespace detail

/// Numeric univalence proxy: boundary images on every grid radius must be
/// injective and wind exactly once around interior image samples.
inline Verdict univalence_probe(const AnalyticSeries& s, const DiskGrid& grid) {
    grid.validate();
    const Complex s0 = evaluate(s, Complex{});
    Verdict out = Verdict::holds(std::numeric_limits<double>::infinity());
    for (double r : grid.radii) {
        const double rr = std::min(r, s.r_max());
        const auto vals = sample_circle(s, rr, grid.angular_count);
        double scale = 0.0;
        for (const Complex& v : vals)
            scale = std::max(scale, std::abs(v - s0));
        if (scale < decision_tol)
            return Verdict::fails(-1.0, Witness{Complex{rr, 0.0}, vals.front()});
        const double tol = 1e-6 * (1.0 + scale);
        const int gap = std::max(4, grid.angular_count / 64);
        if (auto hit = detail::find_collision(vals, tol, gap)) {
            const Complex z = circle_points(rr, grid.angular_count)[
                static_cast<std::size_t>(hit->second)];
            return Verdict::fails(-tol, Witness{z, vals[static_cast<std::size_t>(hit->second)]});
        }
        CurveTester tester(vals, s0);
        std::vector<Complex> targets{s0};
        for (const Complex& z : circle_points(0.3 * rr, 4))
            targets.push_back(evaluate(s, z));
        for (const Complex& t : targets) {
            const auto q = tester.query(t);
            if (q.distance <= winding_guard) {
                out = meet(out, Verdict::inconclusive(q.distance, Witness{Complex{}, t}));
                continue;
            }
            if (q.winding != 1)
                return Verdict::fails(-q.distance, Witness{Complex{}, t});
            out.margin = std::min(out.margin, q.distance);
        }
    }
    return out;
}

/// Weaker injectivity proxy for expressions whose derivative vanishes at the
/// origin: the boundary image on every grid radius must be a simple curve.
/// Full univalence is not implied; interior valence is left to the winding
/// counts of the containment checks.
inline Verdict injective_boundary_probe(const AnalyticSeries& s, const DiskGrid& grid) {
    grid.validate();
    const Complex s0 = evaluate(s, Complex{});
    for (double r : grid.radii) {
        const double rr = std::min(r, s.r_max());
        const auto vals = sample_circle(s, rr, grid.angular_count);
        double scale = 0.0;
        for (const Complex& v : vals)
            scale = std::max(scale, std::abs(v - s0));
        if (scale < decision_tol)
            return Verdict::fails(-1.0, Witness{Complex{rr, 0.0}, vals.front()});
        const double tol = 1e-6 * (1.0 + scale);
        const int gap = std::max(4, grid.angular_count / 64);
        if (auto hit = detail::find_collision(vals, tol, gap)) {
            const Complex z = circle_points(rr, grid.angular_count)[
                static_cast<std::size_t>(hit->second)];
            return Verdict::fails(-tol, Witness{z, vals[static_cast<std::size_t>(hit->second)]});
        }
    }
    return Verdict::holds(1.0);
}

/// Re(z s'(z) / s(z)) > 0 over the grid.
inline Verdict starlike_probe(const AnalyticSeries& s, const DiskGrid& grid) {
    grid.validate();
    const AnalyticSeries d = differentiate(s);
    double scale = 0.0;
    for (const Complex& c : s.coeffs())
        scale = std::max(scale, std::abs(c));
    if (scale == 0.0)
        throw UsageError("starlike probe on the zero series");
    Verdict out = Verdict::holds(std::numeric_limits<double>::infinity());
    for (double r : grid.radii) {
        const double rr = std::min(r, s.r_max());
        for (const Complex& z : circle_points(rr, grid.angular_count)) {
            const Complex sv = evaluate(s, z);
            if (std::abs(sv) < 1e-12 * scale)
                return Verdict::fails(-1.0, Witness{z, sv});
            const double re = (z * evaluate(d, z) / sv).real();
            out = meet(out, verdict_from_margin(re, z, sv));
            if (out.status == Status::Fails)
                return out;
        }
    }
    return out;
}

/// Re(1 + z s''(z) / s'(z)) > 0 over the grid.
inline Verdict convex_probe(const AnalyticSeries& s, const DiskGrid& grid) {
    grid.validate();
    const AnalyticSeries d1 = differentiate(s);
    const AnalyticSeries d2 = differentiate(d1);
    Verdict out = Verdict::holds(std::numeric_limits<double>::infinity());
    for (double r : grid.radii) {
        const double rr = std::min(r, s.r_max());
        for (const Complex& z : circle_points(rr, grid.angular_count)) {
            const Complex dv = evaluate(d1, z);
            if (std::abs(dv) < derivative_floor)
                throw DegenerateDerivative(std::abs(dv));
            const double re = 1.0 + (z * evaluate(d2, z) / dv).real();
            out = meet(out, verdict_from_margin(re, z, evaluate(s, z)));
            if (out.status == Status::Fails)
                return out;
        }
    }
    return out;
}

/// Range-containment subordination: g(0) = f(0) and every sampled g value is
/// attained by f, i.e. the outer curve f(0.95 e^{i theta}) winds at least
/// once around it. For univalent f the winding is 0 or 1 and this is exact;
/// for multivalent f it verifies range inclusion only.
inline Verdict subordination_probe(const AnalyticSeries& g, const AnalyticSeries& f,
                                   const DiskGrid& grid) {
    grid.validate();
    const Complex g0 = evaluate(g, Complex{});
    const Complex f0 = evaluate(f, Complex{});
    if (std::abs(g0 - f0) > decision_tol)
        return Verdict::fails(-std::abs(g0 - f0), Witness{Complex{}, g0});

    const double ro = std::min(outer_radius, f.r_max());
    CurveTester tester(sample_circle(f, ro, grid.angular_count), f0);
    Verdict out = Verdict::holds(std::numeric_limits<double>::infinity());
    for (double r : grid.radii) {
        const double rr = std::min({r, inner_cap, g.r_max()});
        const auto pts = circle_points(rr, grid.angular_count);
        for (const Complex& z : pts) {
            const Complex v = evaluate(g, z);
            const auto q = tester.query(v);
            if (q.distance <= winding_guard) {
                out = meet(out, Verdict::inconclusive(q.distance, Witness{z, v}));
                continue;
            }
            if (q.winding < 1)
                return Verdict::fails(-q.distance, Witness{z, v});
            out.margin = std::min(out.margin, q.distance);
        }
    }
    if (out.status == Status::Holds && out.margin <= decision_tol)
        out.status = Status::Inconclusive;
    return out;
}

} // namespace merosub
