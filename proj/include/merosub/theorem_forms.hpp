#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "merosub/disk.hpp"
#include "merosub/lashin.hpp"
#include "merosub/series.hpp"

namespace merosub {

enum class BaseMode { AsWritten, ConvexCombination };

inline const char* to_string(BaseMode m) {
    return m == BaseMode::AsWritten ? "as-written" : "convex";
}

struct TheoremParams {
    LashinParams lashin{1.0, 1.0};
    Complex lambda{1.0, 0.0};
    Complex mu{1.0, 0.0};
    Complex gamma{0.0, 0.0};
    Complex eta{0.0, 0.0};
    Complex delta{0.0, 0.0};
    Complex m{0.0, 0.0};
    Complex ell{1.0, 0.0};
    double sigma = 1.0;
};

inline void require_nonzero(Complex v, const char* name) {
    if (v == Complex{})
        throw UsageError(std::string(name) + " must be nonzero");
}

/// Requires gamma real and positive; the quadratic-form theorems assume it.
inline double positive_gamma(const TheoremParams& prm) {
    if (prm.gamma.imag() != 0.0 || !(prm.gamma.real() > 0.0))
        throw UsageError("this theorem path requires real gamma > 0");
    return prm.gamma.real();
}

/// z P^{alpha+shift} f as an analytic series; the pole contributes the
/// constant term.
inline AnalyticSeries z_lashin(const MeromorphicSeries& f, const TheoremParams& prm,
                               double shift) {
    const MeromorphicSeries p = lashin_exponent(f, prm.lashin.beta, prm.lashin.alpha + shift);
    std::vector<Complex> c(static_cast<std::size_t>(p.order()) + 2, Complex{});
    c[0] = 1.0;
    for (int k = 1; k <= p.order(); ++k)
        c[static_cast<std::size_t>(k + 1)] = p.tail_coeff(k);
    return AnalyticSeries(std::move(c));
}

/// (1-lambda) z P^{alpha-1} f + lambda z P^alpha f, divided by lambda in
/// AsWritten mode. The convex combination has constant term exactly 1.
inline AnalyticSeries base_series(const MeromorphicSeries& f, const TheoremParams& prm,
                                  BaseMode mode) {
    require_nonzero(prm.lambda, "lambda");
    AnalyticSeries combo = linear_combine({{1.0 - prm.lambda, z_lashin(f, prm, -1.0)},
                                           {prm.lambda, z_lashin(f, prm, 0.0)}});
    if (mode == BaseMode::AsWritten)
        combo = (1.0 / prm.lambda) * combo;
    if (std::abs(combo.coeff(0)) < divide_floor)
        throw DegenerateBase(std::abs(combo.coeff(0)));
    return combo;
}

/// base^mu; in AsWritten mode the constant 1/lambda is factored out and
/// raised through the principal power so the branch stays anchored.
inline AnalyticSeries k_series(const MeromorphicSeries& f, const TheoremParams& prm,
                               BaseMode mode) {
    require_nonzero(prm.mu, "mu");
    const AnalyticSeries base = base_series(f, prm, mode);
    if (mode == BaseMode::ConvexCombination)
        return complex_power(base, prm.mu);
    const Complex c0 = base.coeff(0);
    return std::pow(c0, prm.mu) * complex_power((1.0 / c0) * base, prm.mu);
}

/// (z P^alpha f)^mu, the lambda = 1 power.
inline AnalyticSeries p_series(const MeromorphicSeries& f, const TheoremParams& prm) {
    require_nonzero(prm.mu, "mu");
    return complex_power(z_lashin(f, prm, 0.0), prm.mu);
}

/// P^{alpha-1} f / P^alpha f as an analytic series.
inline AnalyticSeries ratio_series(const MeromorphicSeries& f, const TheoremParams& prm) {
    return divide(z_lashin(f, prm, -1.0), z_lashin(f, prm, 0.0));
}

namespace detail {

// Numerator lambda P^a + (1-2 lambda) P^{a-1} + (lambda-1) P^{a-2}, times z.
// The pole coefficients cancel, so the constant term is 0.
inline AnalyticSeries numerator_z(const MeromorphicSeries& f, const TheoremParams& prm) {
    return linear_combine({{prm.lambda, z_lashin(f, prm, 0.0)},
                           {1.0 - 2.0 * prm.lambda, z_lashin(f, prm, -1.0)},
                           {prm.lambda - 1.0, z_lashin(f, prm, -2.0)}});
}

} // namespace detail

/// The subordinate side of the log-derivative theorem, as printed:
/// 1 + gamma beta mu (lambda P^a + (1-2l) P^{a-1} + (l-1) P^{a-2}) /
/// ((l-1) P^{a-1} - l P^a). Mode only affects the power expressions, not this
/// ratio, so it is accepted for interface symmetry.
inline AnalyticSeries lhs_31(const MeromorphicSeries& f, const TheoremParams& prm,
                             BaseMode /*mode*/) {
    require_nonzero(prm.lambda, "lambda");
    require_nonzero(prm.mu, "mu");
    const AnalyticSeries num = detail::numerator_z(f, prm);
    const AnalyticSeries den = linear_combine({{prm.lambda - 1.0, z_lashin(f, prm, -1.0)},
                                               {-prm.lambda, z_lashin(f, prm, 0.0)}});
    if (std::abs(den.coeff(0)) < divide_floor)
        throw DegenerateBase(std::abs(den.coeff(0)));
    return 1.0 + (prm.gamma * prm.lashin.beta * prm.mu) * divide(num, den);
}

/// psi = p (delta p + gamma mu beta (ratio - 1) + eta) with p = (z P^a f)^mu.
inline AnalyticSeries psi_series(const MeromorphicSeries& f, const TheoremParams& prm) {
    const AnalyticSeries p = p_series(f, prm);
    const AnalyticSeries inner =
        prm.delta * p + (prm.gamma * prm.mu * prm.lashin.beta) * (ratio_series(f, prm) - 1.0) +
        prm.eta;
    return p * inner;
}

/// Phi = k [m + mu ell (numerator) / ((1-l) P^{a-1} + l P^a)].
inline AnalyticSeries phi_series(const MeromorphicSeries& f, const TheoremParams& prm,
                                 BaseMode mode) {
    require_nonzero(prm.ell, "ell");
    const AnalyticSeries num = detail::numerator_z(f, prm);
    const AnalyticSeries den = base_series(f, prm, BaseMode::ConvexCombination);
    const AnalyticSeries bracket = prm.m + (prm.mu * prm.ell) * divide(num, den);
    return k_series(f, prm, mode) * bracket;
}

enum class QKind { Exponential, HalfPlanePower, MacoveiMobius, Janowski };

inline const char* to_string(QKind k) {
    switch (k) {
    case QKind::Exponential: return "exponential";
    case QKind::HalfPlanePower: return "half-plane-power";
    case QKind::MacoveiMobius: return "macovei-mobius";
    default: return "janowski";
    }
}

struct QFamilySpec {
    QKind kind = QKind::Exponential;
    Complex tau{1.0, 0.0}; // Exponential
    double rho = 1.0;      // HalfPlanePower
    double A = 0.0;        // MacoveiMobius / Janowski
    double B = 0.0;        // Janowski

    void validate() const {
        switch (kind) {
        case QKind::Exponential:
            if (std::abs(tau) > 1.0)
                throw SpecError("exponential dominant requires |tau| <= 1");
            break;
        case QKind::HalfPlanePower:
            if (!(rho > 0.0) || rho > 1.0)
                throw SpecError("half-plane power requires rho in (0, 1]");
            break;
        case QKind::MacoveiMobius:
            if (!(A > -1.0 && A < 1.0) || A == 0.0)
                throw SpecError("Macovei dominant requires A in (-1,0) or (0,1)");
            break;
        case QKind::Janowski:
            if (!(-1.0 <= B && B < A && A <= 1.0))
                throw SpecError("Janowski dominant requires -1 <= B < A <= 1");
            break;
        }
    }
};

/// The four dominant families; q(0) = 1 for each.
inline AnalyticSeries q_family(const QFamilySpec& spec, int order = default_order) {
    spec.validate();
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    c[0] = 1.0;
    switch (spec.kind) {
    case QKind::Exponential: {
        Complex term{1.0, 0.0};
        for (int n = 1; n <= order; ++n) {
            term *= spec.tau / static_cast<double>(n);
            c[static_cast<std::size_t>(n)] = term;
        }
        break;
    }
    case QKind::HalfPlanePower: {
        std::vector<Complex> h(static_cast<std::size_t>(order) + 1, Complex{2.0, 0.0});
        h[0] = 1.0;
        return complex_power(AnalyticSeries(std::move(h)), Complex{spec.rho, 0.0});
    }
    case QKind::MacoveiMobius:
        // (1 + Az) / (1 - Az) = 1 + 2 sum (Az)^n
        for (int n = 1; n <= order; ++n)
            c[static_cast<std::size_t>(n)] = 2.0 * std::pow(spec.A, n);
        break;
    case QKind::Janowski:
        // (1 + Az) / (1 + Bz): c_n = (-B)^{n-1} (A - B)
        for (int n = 1; n <= order; ++n)
            c[static_cast<std::size_t>(n)] = std::pow(-spec.B, n - 1) * (spec.A - spec.B);
        break;
    }
    return AnalyticSeries(std::move(c));
}

enum class RhsKind { LogDeriv, Quadratic, Linear, Macovei };

/// Dominant-side expressions, always assembled from the theorem-level
/// formulas; corollary-printed expansions are not transcribed.
inline AnalyticSeries rhs_builder(RhsKind kind, const AnalyticSeries& q,
                                  const TheoremParams& prm) {
    const AnalyticSeries zq1 = shift_up(differentiate(q));
    switch (kind) {
    case RhsKind::LogDeriv:
        return 1.0 + prm.gamma * divide(zq1, q);
    case RhsKind::Quadratic:
        return prm.delta * (q * q) + prm.eta * q + prm.gamma * zq1;
    case RhsKind::Linear: {
        require_nonzero(prm.ell, "ell");
        return prm.m * q - (prm.ell / prm.lashin.beta) * zq1;
    }
    case RhsKind::Macovei:
        // The Macovei inequality's scalars bind to the delta/eta/sigma slots.
        return prm.delta * (q * q) + prm.eta * q + Complex{prm.sigma, 0.0} * zq1;
    }
    throw UsageError("unknown rhs kind");
}

enum class HypKind { Cond32, Cond318, Cond334, Cond41, Cond340 };

struct HypothesisSeries {
    AnalyticSeries value;
    double bound;
};

/// The Re(.) > bound integrand for each stated hypothesis condition.
inline HypothesisSeries hypothesis_value(HypKind kind, const AnalyticSeries& q,
                                         const TheoremParams& prm) {
    const AnalyticSeries d1 = differentiate(q);
    switch (kind) {
    case HypKind::Cond32: {
        if (std::abs(d1.coeff(0)) < derivative_floor)
            throw DegenerateDerivative(std::abs(d1.coeff(0)));
        const AnalyticSeries zq2 = shift_up(differentiate(d1));
        const AnalyticSeries zq1 = shift_up(d1);
        return {divide(zq2, d1) - divide(zq1, q) + 1.0, 0.0};
    }
    case HypKind::Cond318: {
        const Complex g = positive_gamma(prm);
        return {prm.eta / g + (2.0 * prm.delta / g) * q, 0.0};
    }
    case HypKind::Cond334: {
        if (std::abs(d1.coeff(0)) < derivative_floor)
            throw DegenerateDerivative(std::abs(d1.coeff(0)));
        require_nonzero(prm.ell, "ell");
        const AnalyticSeries zq2 = shift_up(differentiate(d1));
        const double bound =
            std::max(0.0, (prm.m * prm.lashin.beta / prm.ell).real());
        return {1.0 + divide(zq2, d1), bound};
    }
    case HypKind::Cond41: {
        const Complex g = positive_gamma(prm);
        return {(prm.eta / g + (2.0 * prm.delta / g) * q) * d1, 0.0};
    }
    case HypKind::Cond340: {
        // Corollary-printed variant (1 + 2 rho z + z^2) / (1 - z^2); used
        // only by the preset that states it this way.
        require_nonzero(prm.ell, "ell");
        const int order = q.order();
        std::vector<Complex> num(static_cast<std::size_t>(order) + 1, Complex{});
        std::vector<Complex> den(static_cast<std::size_t>(order) + 1, Complex{});
        num[0] = den[0] = 1.0;
        // rho rides in through sigma for this printed form.
        if (order >= 1)
            num[1] = 2.0 * prm.sigma;
        if (order >= 2) {
            num[2] = 1.0;
            den[2] = -1.0;
        }
        const double bound =
            std::max(0.0, (prm.m * prm.lashin.beta / prm.ell).real());
        return {divide(AnalyticSeries(std::move(num)), AnalyticSeries(std::move(den))), bound};
    }
    }
    throw UsageError("unknown hypothesis kind");
}

/// Scalar Macovei precondition, verbatim from its source (the repeated
/// factor included): (2 delta / sigma + eta / sigma) (1+A)/(1-A) > 0.
inline double macovei_condition(const QFamilySpec& spec, const TheoremParams& prm) {
    if (spec.kind != QKind::MacoveiMobius)
        throw UsageError("Macovei condition needs the Mobius dominant");
    if (!(prm.sigma > 0.0) || prm.sigma > 1.0)
        throw UsageError("Macovei condition requires sigma in (0, 1]");
    const double factor = (1.0 + spec.A) / (1.0 - spec.A);
    return (2.0 * prm.delta.real() / prm.sigma) * factor +
           (prm.eta.real() / prm.sigma) * factor;
}

struct Preset {
    std::string name;
    std::string theorem;
    QFamilySpec q;                  // conclusion dominant (q2 for sandwiches)
    std::optional<QFamilySpec> q1;  // subordinant side for sandwiches
    TheoremParams params;
    bool printed_340 = false; // use the corollary-printed (3.40) hypothesis
    int order = default_order; // truncation the preset was calibrated at
    std::string note;
};

inline const std::vector<Preset>& preset_registry() {
    static const std::vector<Preset> presets = [] {
        std::vector<Preset> v;
        const Complex i{0.0, 1.0};
        (void)i;

        // Subordination, log-derivative family.
        {
            Preset p{.name = "cor-3.2", .theorem = "3.1",
                     .q = {.kind = QKind::Exponential, .tau = {0.8, 0.0}}};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {0.7, 0.0};
            p.params.mu = {8.0, 0.0};
            p.params.gamma = {1.0, 0.0};
            p.note = "exponential dominant";
            v.push_back(p);
        }
        {
            Preset p{.name = "cor-3.3", .theorem = "3.1",
                     .q = {.kind = QKind::Exponential, .tau = {1.0, 0.0}}};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {1.0, 0.0};
            p.params.mu = {10.0, 0.0};
            p.params.gamma = {1.0, 0.0};
            p.note = "tau = lambda = 1 specialization";
            v.push_back(p);
        }
        {
            Preset p{.name = "cor-3.4", .theorem = "3.1",
                     .q = {.kind = QKind::HalfPlanePower, .rho = 0.8}};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {1.0, 0.0};
            p.params.mu = {8.0, 0.0};
            p.params.gamma = {1.0, 0.0};
            p.order = 256; // slow coefficient decay; the r = 0.95 circle needs the longer tail
            p.note = "half-plane power dominant at lambda = 1";
            v.push_back(p);
        }

        // Subordination, quadratic family.
        {
            Preset p{.name = "cor-3.6", .theorem = "3.5",
                     .q = {.kind = QKind::MacoveiMobius, .A = 0.4}};
            p.params.lashin = {0.9, 2.0};
            p.params.mu = {10.0, 0.0};
            p.params.gamma = {0.4, 0.0};
            p.params.eta = {1.0, 0.0};
            p.params.delta = {0.5, 0.0};
            p.note = "Mobius dominant";
            v.push_back(p);
        }
        {
            Preset p{.name = "cor-3.7", .theorem = "3.5",
                     .q = {.kind = QKind::Exponential, .tau = {0.8, 0.0}}};
            p.params.lashin = {0.9, 2.0};
            p.params.mu = {10.0, 0.0};
            p.params.gamma = {0.3, 0.0};
            p.params.eta = {1.0, 0.0};
            p.params.delta = {0.5, 0.0};
            p.note = "exponential dominant";
            v.push_back(p);
        }

        // Subordination, linear family.
        {
            Preset p{.name = "cor-3.9", .theorem = "3.8",
                     .q = {.kind = QKind::HalfPlanePower, .rho = 0.5}};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {1.0, 0.0};
            p.params.mu = {8.0, 0.0};
            p.params.m = {-1.0, 0.0};
            p.params.ell = {0.3, 0.0};
            p.params.sigma = 0.5; // rho carried into the printed (3.40) form
            p.printed_340 = true;
            p.note = "half-plane power dominant, printed hypothesis";
            v.push_back(p);
        }
        {
            Preset p{.name = "cor-3.10", .theorem = "3.8",
                     .q = {.kind = QKind::Janowski, .A = 0.2, .B = -0.2}};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {1.0, 0.0};
            p.params.mu = {8.0, 0.0};
            p.params.m = {-1.0, 0.0};
            p.params.ell = {0.3, 0.0};
            p.note = "Janowski dominant";
            v.push_back(p);
        }

        // Superordination family.
        {
            Preset p{.name = "cor-4.2", .theorem = "4.1",
                     .q = {.kind = QKind::Exponential, .tau = {0.02, 0.0}}};
            p.params.lashin = {0.9, 2.0};
            p.params.mu = {2.0, 0.0};
            p.params.gamma = {1.0, 0.0};
            p.params.eta = {1.0, 0.0};
            p.params.delta = {0.3, 0.0};
            p.note = "exponential subordinant";
            v.push_back(p);
        }
        {
            Preset p{.name = "cor-4.4", .theorem = "4.3",
                     .q = {.kind = QKind::Janowski, .A = 0.02, .B = -0.02}};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {1.0, 0.0};
            p.params.mu = {3.0, 0.0};
            p.params.m = {-1.0, 0.0};
            p.params.ell = {0.5, 0.0};
            p.note = "Janowski subordinant";
            v.push_back(p);
        }
        {
            Preset p{.name = "cor-4.5", .theorem = "4.3",
                     .q = {.kind = QKind::HalfPlanePower, .rho = 0.01}};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {1.0, 0.0};
            p.params.mu = {3.0, 0.0};
            p.params.m = {-1.0, 0.0};
            p.params.ell = {0.5, 0.0};
            p.note = "half-plane power subordinant";
            v.push_back(p);
        }

        // Sandwiches.
        {
            Preset p{.name = "thm-5.1", .theorem = "5.1",
                     .q = {.kind = QKind::Exponential, .tau = {1.0, 0.0}}};
            p.q1 = QFamilySpec{.kind = QKind::MacoveiMobius, .A = 0.01};
            p.params.lashin = {0.9, 2.0};
            p.params.mu = {2.0, 0.0};
            p.params.gamma = {1.0, 0.0};
            p.params.eta = {1.0, 0.0};
            p.params.delta = {0.3, 0.0};
            p.note = "quadratic sandwich";
            v.push_back(p);
        }
        {
            Preset p{.name = "thm-5.2", .theorem = "5.2",
                     .q = {.kind = QKind::HalfPlanePower, .rho = 0.5}};
            p.q1 = QFamilySpec{.kind = QKind::Janowski, .A = 0.01, .B = -0.01};
            p.params.lashin = {0.9, 2.0};
            p.params.lambda = {1.0, 0.0};
            p.params.mu = {3.0, 0.0};
            p.params.m = {-1.0, 0.0};
            p.params.ell = {0.5, 0.0};
            p.note = "linear sandwich";
            v.push_back(p);
        }

        // Macovei implication path.
        {
            Preset p{.name = "lem-2.6", .theorem = "2.6",
                     .q = {.kind = QKind::MacoveiMobius, .A = 0.4}};
            p.params.lashin = {0.9, 2.0};
            p.params.mu = {10.0, 0.0};
            p.params.eta = {1.0, 0.0};
            p.params.delta = {0.5, 0.0};
            p.params.sigma = 0.8;
            p.note = "Mobius implication trial";
            v.push_back(p);
        }
        return v;
    }();
    return presets;
}

inline const Preset* find_preset(std::string_view name) {
    for (const Preset& p : preset_registry())
        if (p.name == name)
            return &p;
    return nullptr;
}

} // namespace merosub
