#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "merosub/disk.hpp"
#include "merosub/rng.hpp"
#include "merosub/theorem_forms.hpp"

namespace merosub {

/// Seeded member of the meromorphic class: a_k = amplitude * c_k * 0.5^k with
/// |c_k| <= 1, re-sampled until the tail keeps z P f near 1 on the 0.95-disk.
inline MeromorphicSeries random_sigma_function(std::uint64_t seed, int order,
                                               double amplitude) {
    if (order < 8)
        throw UsageError("generator requires order >= 8");
    if (!(amplitude > 0.0) || amplitude > 0.5)
        throw UsageError("generator requires amplitude in (0, 0.5]");
    Rng rng(seed);
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::vector<Complex> tail(static_cast<std::size_t>(order));
        double decay = 0.5;
        for (int k = 1; k <= order; ++k) {
            tail[static_cast<std::size_t>(k - 1)] = amplitude * decay * rng.unit_disk();
            decay *= 0.5;
        }
        MeromorphicSeries f(std::move(tail));
        // z f(z) - 1 dominates z P f(z) - 1 since every multiplier is < 1.
        double worst = 0.0;
        for (const Complex& z : circle_points(0.95, 64)) {
            Complex acc{};
            for (int k = order; k >= 1; --k)
                acc = acc * z + f.tail_coeff(k);
            worst = std::max(worst, std::abs(acc * (z * z)));
        }
        if (worst <= 0.5)
            return f;
    }
    throw GeneratorStuck("amplitude too large for the tail constraint");
}

struct ConditionEntry {
    std::string id;
    double margin = 0.0;
    Complex argmin{};
    Verdict verdict;
};

struct HypothesisReport {
    std::vector<ConditionEntry> entries;

    bool any_fails() const {
        for (const auto& e : entries)
            if (e.verdict.status == Status::Fails)
                return true;
        return false;
    }
    bool any_inconclusive() const {
        for (const auto& e : entries)
            if (e.verdict.status == Status::Inconclusive)
                return true;
        return false;
    }
};

enum class Classification { Confirming, Vacuous, Counterexample, Inconclusive };

inline const char* to_string(Classification c) {
    switch (c) {
    case Classification::Confirming: return "Confirming";
    case Classification::Vacuous: return "Vacuous";
    case Classification::Counterexample: return "Counterexample";
    default: return "Inconclusive";
    }
}

struct TrialReport {
    std::string theorem;
    std::uint64_t seed = 0;
    std::string params_digest;
    HypothesisReport hypotheses;
    Verdict premise;
    Verdict conclusion;
    Classification classification = Classification::Inconclusive;
    std::string note;
};

struct FuzzSummary {
    int trials = 0;
    int confirming = 0;
    int vacuous = 0;
    int counterexamples = 0;
    int inconclusive = 0;
    std::vector<TrialReport> counterexample_reports;
    double wall_seconds = 0.0;
};

namespace detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_complex(Complex v) {
    if (v.imag() == 0.0)
        return format_real(v.real());
    return format_real(v.real()) + (v.imag() < 0 ? "" : "+") + format_real(v.imag()) + "i";
}

inline std::string params_digest(const TheoremParams& p) {
    return "alpha=" + format_real(p.lashin.alpha) + ",beta=" + format_real(p.lashin.beta) +
           ",lambda=" + format_complex(p.lambda) + ",mu=" + format_complex(p.mu) +
           ",gamma=" + format_complex(p.gamma) + ",eta=" + format_complex(p.eta) +
           ",delta=" + format_complex(p.delta) + ",m=" + format_complex(p.m) +
           ",ell=" + format_complex(p.ell) + ",sigma=" + format_real(p.sigma);
}

inline std::pair<double, Complex> min_abs_on_disk(const AnalyticSeries& s,
                                                  const DiskGrid& grid) {
    double best = std::abs(s.coeff(0)); // center value
    Complex argmin{};
    for (double r : grid.radii) {
        const double rr = std::min(r, s.r_max());
        for (const Complex& z : circle_points(rr, grid.angular_count)) {
            const double a = std::abs(evaluate(s, z));
            if (a < best) {
                best = a;
                argmin = z;
            }
        }
    }
    return {best, argmin};
}

} // namespace detail

/// One side-by-side hypothesis sheet per stated condition of the theorem.
inline HypothesisReport check_hypotheses(const std::string& theorem,
                                         const MeromorphicSeries& f, const AnalyticSeries& q,
                                         const std::optional<AnalyticSeries>& q1,
                                         const TheoremParams& prm, const DiskGrid& grid,
                                         BaseMode mode = BaseMode::ConvexCombination,
                                         bool printed_340 = false) {
    HypothesisReport rep;
    const auto add_min_real = [&](const std::string& id, HypKind kind,
                                  const AnalyticSeries& dom) {
        const HypothesisSeries hv = hypothesis_value(kind, dom, prm);
        const auto [mn, z] = min_real_on_disk(hv.value, grid);
        const double margin = mn - hv.bound;
        rep.entries.push_back({id, margin, z, verdict_from_margin(margin, z, evaluate(hv.value, z))});
    };
    const auto add_nonvanish = [&](const std::string& id, const AnalyticSeries& s) {
        const auto [mn, z] = detail::min_abs_on_disk(s, grid);
        rep.entries.push_back({id, mn, z, verdict_from_margin(mn, z, evaluate(s, z))});
    };
    const auto add_probe = [&](const std::string& id, Verdict v) {
        rep.entries.push_back({id, v.margin, v.witness ? v.witness->z : Complex{}, v});
    };
    const auto add_scalar = [&](const std::string& id, double margin) {
        rep.entries.push_back({id, margin, Complex{}, verdict_from_margin(margin, {}, {})});
    };

    if (theorem == "3.1") {
        add_nonvanish("(3.1)", base_series(f, prm, mode));
        add_probe("zq'/q starlike",
                  starlike_probe(divide(shift_up(differentiate(q)), q), grid));
        add_min_real("(3.2)", HypKind::Cond32, q);
    } else if (theorem == "3.5") {
        add_nonvanish("(3.17)", z_lashin(f, prm, 0.0));
        add_min_real("(3.18)", HypKind::Cond318, q);
        add_probe("q convex", convex_probe(q, grid));
    } else if (theorem == "3.8") {
        add_min_real(printed_340 ? "(3.40)" : "(3.34)",
                     printed_340 ? HypKind::Cond340 : HypKind::Cond334, q);
        add_probe("q univalent", univalence_probe(q, grid));
    } else if (theorem == "4.1") {
        add_min_real("(4.1)", HypKind::Cond41, q);
        add_nonvanish("(4.2)", z_lashin(f, prm, 0.0));
        add_probe("(4.3)", injective_boundary_probe(p_series(f, prm), grid));
        add_probe("psi univalent", injective_boundary_probe(psi_series(f, prm), grid));
    } else if (theorem == "4.3") {
        require_nonzero(prm.ell, "ell");
        add_scalar("Re(m beta / ell) < 0", -(prm.m * prm.lashin.beta / prm.ell).real());
        add_nonvanish("(4.13)", base_series(f, prm, mode));
        add_probe("(4.14)", injective_boundary_probe(k_series(f, prm, mode), grid));
        add_probe("Phi univalent", injective_boundary_probe(phi_series(f, prm, mode), grid));
    } else if (theorem == "5.1") {
        if (!q1)
            throw UsageError("sandwich theorem needs a subordinant family");
        add_probe("q1 convex", convex_probe(*q1, grid));
        add_min_real("(4.1) on q1", HypKind::Cond41, *q1);
        add_nonvanish("(5.1)", z_lashin(f, prm, 0.0));
        add_min_real("(3.18) on q2", HypKind::Cond318, q);
        add_probe("q2 convex", convex_probe(q, grid));
        add_probe("(5.2)", injective_boundary_probe(p_series(f, prm), grid));
        add_probe("psi univalent", injective_boundary_probe(psi_series(f, prm), grid));
    } else if (theorem == "5.2") {
        if (!q1)
            throw UsageError("sandwich theorem needs a subordinant family");
        require_nonzero(prm.ell, "ell");
        add_probe("q1 convex", convex_probe(*q1, grid));
        add_scalar("Re(m beta / ell) < 0", -(prm.m * prm.lashin.beta / prm.ell).real());
        add_min_real("(3.34) on q2", HypKind::Cond334, q);
        add_probe("q2 univalent", univalence_probe(q, grid));
        add_probe("(5.5)", injective_boundary_probe(k_series(f, prm, mode), grid));
        add_probe("Phi univalent", injective_boundary_probe(phi_series(f, prm, mode), grid));
    } else if (theorem == "2.6") {
        // Scalar precondition only; its q is pinned to the Mobius family.
        add_scalar("(2.7)", macovei_condition(QFamilySpec{.kind = QKind::MacoveiMobius,
                                                          .A = q.coeff(1).real() / 2.0},
                                              prm));
    } else {
        throw UsageError("unknown theorem id '" + theorem + "'");
    }
    return rep;
}

namespace detail {

struct SubordinationPair {
    AnalyticSeries subordinate;
    AnalyticSeries dominant;
};

struct TrialSides {
    std::vector<SubordinationPair> premises;
    std::vector<SubordinationPair> conclusions;
};

inline AnalyticSeries shrink_toward_one(const AnalyticSeries& s) {
    return linear_combine({{0.5, s}, {0.5, AnalyticSeries::constant(1.0, 0)}});
}

inline TrialSides build_trial_sides(const std::string& theorem, const MeromorphicSeries& f,
                                    const AnalyticSeries& q,
                                    const std::optional<AnalyticSeries>& q1,
                                    const TheoremParams& prm, BaseMode mode) {
    TrialSides sides;
    if (theorem == "3.1") {
        sides.premises.push_back({lhs_31(f, prm, mode), rhs_builder(RhsKind::LogDeriv, q, prm)});
        sides.conclusions.push_back({k_series(f, prm, mode), q});
    } else if (theorem == "3.5") {
        positive_gamma(prm);
        sides.premises.push_back({psi_series(f, prm), rhs_builder(RhsKind::Quadratic, q, prm)});
        sides.conclusions.push_back({p_series(f, prm), q});
    } else if (theorem == "3.8") {
        sides.premises.push_back({phi_series(f, prm, mode), rhs_builder(RhsKind::Linear, q, prm)});
        sides.conclusions.push_back({k_series(f, prm, mode), q});
    } else if (theorem == "2.6") {
        const AnalyticSeries p = p_series(f, prm);
        const AnalyticSeries lhs = prm.delta * (p * p) + prm.eta * p +
                                   Complex{prm.sigma, 0.0} * shift_up(differentiate(p));
        sides.premises.push_back({lhs, rhs_builder(RhsKind::Macovei, q, prm)});
        sides.conclusions.push_back({p, q});
    } else if (theorem == "4.1") {
        positive_gamma(prm);
        sides.premises.push_back({rhs_builder(RhsKind::Quadratic, q, prm), psi_series(f, prm)});
        sides.conclusions.push_back({q, p_series(f, prm)});
    } else if (theorem == "4.3") {
        sides.premises.push_back({rhs_builder(RhsKind::Linear, q, prm), phi_series(f, prm, mode)});
        sides.conclusions.push_back({q, k_series(f, prm, mode)});
    } else if (theorem == "5.1") {
        positive_gamma(prm);
        const AnalyticSeries psi = psi_series(f, prm);
        const AnalyticSeries p = p_series(f, prm);
        sides.premises.push_back({rhs_builder(RhsKind::Quadratic, *q1, prm), psi});
        sides.premises.push_back({psi, rhs_builder(RhsKind::Quadratic, q, prm)});
        sides.conclusions.push_back({*q1, p});
        sides.conclusions.push_back({p, q});
    } else if (theorem == "5.2") {
        const AnalyticSeries phi = phi_series(f, prm, mode);
        const AnalyticSeries k = k_series(f, prm, mode);
        sides.premises.push_back({rhs_builder(RhsKind::Linear, *q1, prm), phi});
        sides.premises.push_back({phi, rhs_builder(RhsKind::Linear, q, prm)});
        sides.conclusions.push_back({*q1, k});
        sides.conclusions.push_back({k, q});
    } else {
        throw UsageError("unknown theorem id '" + theorem + "'");
    }
    return sides;
}

// Range containment, optionally gated on univalence of the dominant. A
// containment failure is a sound negative regardless of univalence; a gated
// pass only counts as Holds when the dominant's univalence probe holds, since
// containment under a multivalent dominant does not pin down subordination.
// Conclusions are gated; premises are taken as stated range inclusions.
inline Verdict checked_subordination(const SubordinationPair& pair, const DiskGrid& grid,
                                     bool gate_on_univalence) {
    Verdict contain = subordination_probe(pair.subordinate, pair.dominant, grid);
    if (!gate_on_univalence || contain.status == Status::Fails)
        return contain;
    const Verdict uni = univalence_probe(pair.dominant, grid);
    if (uni.status != Status::Holds)
        contain.status = Status::Inconclusive;
    return contain;
}

} // namespace detail

/// One theorem-shaped implication trial: hypotheses, premise subordination,
/// conclusion subordination, classification.
inline TrialReport run_trial(const std::string& theorem, const MeromorphicSeries& f,
                             const AnalyticSeries& q, const std::optional<AnalyticSeries>& q1,
                             const TheoremParams& prm, const DiskGrid& grid,
                             BaseMode mode = BaseMode::ConvexCombination,
                             bool mutate_conclusion = false, std::uint64_t seed = 0,
                             bool printed_340 = false) {
    TrialReport rep;
    rep.theorem = theorem;
    rep.seed = seed;
    rep.params_digest = detail::params_digest(prm);
    try {
        rep.hypotheses = check_hypotheses(theorem, f, q, q1, prm, grid, mode, printed_340);
        detail::TrialSides sides = detail::build_trial_sides(theorem, f, q, q1, prm, mode);
        if (mutate_conclusion)
            for (auto& pair : sides.conclusions)
                pair.dominant = detail::shrink_toward_one(pair.dominant);

        rep.premise = Verdict::holds(std::numeric_limits<double>::infinity());
        for (const auto& pair : sides.premises)
            rep.premise = meet(rep.premise, detail::checked_subordination(pair, grid, false));
        rep.conclusion = Verdict::holds(std::numeric_limits<double>::infinity());
        for (const auto& pair : sides.conclusions)
            rep.conclusion = meet(rep.conclusion, detail::checked_subordination(pair, grid, true));

        if (rep.hypotheses.any_fails() || rep.premise.status == Status::Fails)
            rep.classification = Classification::Vacuous;
        else if (rep.hypotheses.any_inconclusive() ||
                 rep.premise.status == Status::Inconclusive ||
                 rep.conclusion.status == Status::Inconclusive)
            rep.classification = Classification::Inconclusive;
        else if (rep.conclusion.status == Status::Holds)
            rep.classification = Classification::Confirming;
        else
            rep.classification = Classification::Counterexample;
    } catch (const NumericError& err) {
        rep.classification = Classification::Vacuous;
        rep.note = err.what();
        rep.premise = Verdict::inconclusive(0.0);
        rep.conclusion = Verdict::inconclusive(0.0);
    }
    return rep;
}

/// Two-sided chain trial for the sandwich theorems.
inline TrialReport sandwich_trial(const std::string& theorem, const MeromorphicSeries& f,
                                  const AnalyticSeries& q1, const AnalyticSeries& q2,
                                  const TheoremParams& prm, const DiskGrid& grid,
                                  BaseMode mode = BaseMode::ConvexCombination,
                                  bool mutate_conclusion = false, std::uint64_t seed = 0) {
    return run_trial(theorem, f, q2, q1, prm, grid, mode, mutate_conclusion, seed);
}

struct FuzzOptions {
    bool mutate_conclusion = false;
    double amplitude = 0.1;
    int order = default_order;
    BaseMode mode = BaseMode::ConvexCombination;
    int threads = 0;           // 0 = MEROSUB_THREADS env, then hardware
    int stop_after_counterexamples = 0; // 0 = run everything
};

namespace detail {

// Multiplicative jitter on real-valued parameters, leaving complex-valued
// and structural ones fixed.
inline TheoremParams jitter_params(const TheoremParams& base, Rng& rng) {
    TheoremParams p = base;
    const auto bump = [&](double v) { return v * (1.0 + rng.uniform(-0.2, 0.2)); };
    const auto bump_c = [&](Complex v) {
        return (v.imag() == 0.0 && v.real() != 0.0) ? Complex{bump(v.real()), 0.0} : v;
    };
    p.lashin = LashinParams(bump(base.lashin.alpha), bump(base.lashin.beta));
    p.mu = bump_c(base.mu);
    p.gamma = bump_c(base.gamma);
    p.eta = bump_c(base.eta);
    p.delta = bump_c(base.delta);
    p.m = bump_c(base.m);
    p.ell = bump_c(base.ell);
    p.sigma = std::min(1.0, bump(base.sigma));
    return p;
}

inline int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("MEROSUB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace detail

/// Deterministic fuzz campaign: seeded functions, jittered parameters, one
/// trial per index. Identical (seed, preset, grid, trials) inputs produce
/// identical summaries.
inline FuzzSummary fuzz_theorem(const Preset& preset, int trials, std::uint64_t seed,
                                const DiskGrid& grid, const FuzzOptions& opts = {}) {
    if (trials < 1)
        throw UsageError("fuzz needs at least one trial");
    grid.validate();
    const auto start = std::chrono::steady_clock::now();

    const AnalyticSeries q = q_family(preset.q, opts.order);
    std::optional<AnalyticSeries> q1;
    if (preset.q1)
        q1 = q_family(*preset.q1, opts.order);

    std::vector<std::optional<TrialReport>> reports(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    std::atomic<int> found_ce{0};

    const auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= trials)
                return;
            if (opts.stop_after_counterexamples > 0 &&
                found_ce.load() >= opts.stop_after_counterexamples)
                return;
            const std::uint64_t tseed = Rng::mix(seed, static_cast<std::uint64_t>(i));
            TrialReport rep;
            try {
                const MeromorphicSeries f =
                    random_sigma_function(tseed, opts.order, opts.amplitude);
                for (int attempt = 0;; ++attempt) {
                    Rng jr(Rng::mix(tseed, 1000 + static_cast<std::uint64_t>(attempt)));
                    const TheoremParams prm = detail::jitter_params(preset.params, jr);
                    rep = run_trial(preset.theorem, f, q, q1, prm, grid, opts.mode,
                                    opts.mutate_conclusion, tseed, preset.printed_340);
                    // Hypothesis margins inside the decision band get a fresh
                    // jitter so trials probe the interior of the region.
                    if (attempt >= 2 || !rep.hypotheses.any_inconclusive())
                        break;
                }
            } catch (const NumericError& err) {
                rep.theorem = preset.theorem;
                rep.seed = tseed;
                rep.classification = Classification::Vacuous;
                rep.note = err.what();
            }
            if (rep.classification == Classification::Counterexample)
                found_ce.fetch_add(1);
            reports[static_cast<std::size_t>(i)] = std::move(rep);
        }
    };

    const int nthreads = detail::resolve_threads(opts.threads);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    FuzzSummary sum;
    for (auto& rep : reports) {
        if (!rep)
            continue;
        ++sum.trials;
        switch (rep->classification) {
        case Classification::Confirming: ++sum.confirming; break;
        case Classification::Vacuous: ++sum.vacuous; break;
        case Classification::Inconclusive: ++sum.inconclusive; break;
        case Classification::Counterexample:
            ++sum.counterexamples;
            sum.counterexample_reports.push_back(std::move(*rep));
            break;
        }
    }
    sum.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sum;
}

} // namespace merosub
