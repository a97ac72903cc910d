#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "merosub/report.hpp"
#include "merosub/verifier.hpp"

using namespace merosub;

namespace {

const Preset& preset(const char* name) {
    const Preset* p = find_preset(name);
    REQUIRE(p != nullptr);
    return *p;
}

const ConditionEntry& entry(const HypothesisReport& rep, const std::string& id) {
    for (const auto& e : rep.entries)
        if (e.id == id)
            return e;
    REQUIRE_MESSAGE(false, "missing hypothesis entry ", id);
    static ConditionEntry dummy;
    return dummy;
}

} // namespace

TEST_CASE("seeded generator") {
    const MeromorphicSeries a = random_sigma_function(42, 64, 0.1);
    const MeromorphicSeries b = random_sigma_function(42, 64, 0.1);
    for (int k = 1; k <= 64; ++k)
        CHECK(a.tail_coeff(k) == b.tail_coeff(k));

    // Coefficients follow the amplitude * 0.5^k envelope.
    for (int k = 1; k <= 64; ++k)
        CHECK(std::abs(a.tail_coeff(k)) <= 0.1 * std::pow(0.5, k) + 1e-15);

    // A tiny amplitude collapses toward the pure pole.
    const MeromorphicSeries tiny = random_sigma_function(1, 64, 1e-6);
    for (int k = 1; k <= 64; ++k)
        CHECK(std::abs(tiny.tail_coeff(k)) < 1e-6);

    CHECK_THROWS_AS(random_sigma_function(1, 4, 0.1), UsageError);
    CHECK_THROWS_AS(random_sigma_function(1, 64, 0.9), UsageError);
}

TEST_CASE("generated samples satisfy the nonvanishing hypotheses") {
    DiskGrid grid;
    const MeromorphicSeries f = random_sigma_function(3, 64, 0.1);
    TheoremParams prm;
    prm.lashin = LashinParams(0.9, 2.0);
    const AnalyticSeries base = base_series(f, prm, BaseMode::ConvexCombination);
    const AnalyticSeries zp = z_lashin(f, prm, 0.0);
    for (double r : grid.radii)
        for (const Complex& z : circle_points(r, 256)) {
            CHECK(std::abs(evaluate(base, z)) > 0.4); // (3.1)
            CHECK(std::abs(evaluate(zp, z)) > 0.4);   // (3.17)
        }
}

TEST_CASE("hypothesis sheets per theorem") {
    DiskGrid grid;
    const MeromorphicSeries pole = MeromorphicSeries::pole(64);

    // Theorem 3.5 on the pure pole with the rho = 1 half-plane dominant. Its
    // coefficients do not decay, so this sheet runs on circles up to 0.7 where
    // the order-64 truncation of the convexity functional is negligible.
    DiskGrid inner;
    inner.radii = {0.3, 0.5, 0.7};
    TheoremParams prm;
    prm.lashin = LashinParams(0.9, 2.0);
    prm.mu = {2.0, 0.0};
    prm.gamma = {1.0, 0.0};
    prm.eta = {1.0, 0.0};
    prm.delta = {};
    const AnalyticSeries q = q_family({.kind = QKind::HalfPlanePower, .rho = 1.0});
    const HypothesisReport h35 = check_hypotheses("3.5", pole, q, std::nullopt, prm, inner);
    CHECK(h35.entries.size() == 3);
    CHECK(entry(h35, "(3.17)").verdict.status == Status::Holds);
    CHECK(entry(h35, "(3.17)").margin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(entry(h35, "(3.18)").margin == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(entry(h35, "q convex").verdict.status == Status::Holds);

    // Theorem 3.8 with q = e^z, m = -1, ell = 1, beta = 1: bound 0, Re(1 + z) > 0.
    TheoremParams p38;
    p38.lashin = LashinParams(1.0, 1.0);
    p38.m = {-1.0, 0.0};
    p38.ell = {1.0, 0.0};
    const AnalyticSeries qe = q_family({.kind = QKind::Exponential, .tau = {1.0, 0.0}});
    const HypothesisReport h38 = check_hypotheses("3.8", pole, qe, std::nullopt, p38, grid);
    const ConditionEntry& c334 = entry(h38, "(3.34)");
    CHECK(c334.verdict.status == Status::Holds);
    CHECK(c334.margin == doctest::Approx(0.05).epsilon(1e-6));

    // Theorem 4.3 with Re(m beta / ell) = +1: the sign condition fails.
    TheoremParams p43;
    p43.lashin = LashinParams(1.0, 1.0);
    p43.m = {1.0, 0.0};
    p43.ell = {1.0, 0.0};
    p43.mu = {2.0, 0.0};
    const MeromorphicSeries f = random_sigma_function(4, 64, 0.1);
    const HypothesisReport h43 = check_hypotheses("4.3", f, qe, std::nullopt, p43, grid);
    const ConditionEntry& sign = entry(h43, "Re(m beta / ell) < 0");
    CHECK(sign.verdict.status == Status::Fails);
    CHECK(sign.margin == doctest::Approx(-1.0));

    CHECK_THROWS_AS(check_hypotheses("9.9", pole, q, std::nullopt, prm, grid), UsageError);
}

TEST_CASE("degenerate fixed point confirms") {
    DiskGrid grid;
    const Preset& p = preset("cor-3.3");
    const AnalyticSeries q = q_family(p.q);
    const TrialReport rep = run_trial(p.theorem, MeromorphicSeries::pole(64), q, std::nullopt,
                                      p.params, grid);
    CHECK(rep.classification == Classification::Confirming);
    CHECK(rep.premise.status == Status::Holds);
    CHECK(rep.conclusion.status == Status::Holds);
}

TEST_CASE("negative control flips a confirming trial") {
    DiskGrid grid;
    const Preset& p = preset("cor-3.10");
    FuzzOptions opts;
    const FuzzSummary normal = fuzz_theorem(p, 25, 1, grid, opts);
    CHECK(normal.counterexamples == 0);
    CHECK(normal.confirming > 0);

    opts.mutate_conclusion = true;
    const FuzzSummary mutated = fuzz_theorem(p, 25, 1, grid, opts);
    CHECK(mutated.counterexamples > 0);
    CHECK(static_cast<int>(mutated.counterexample_reports.size()) == mutated.counterexamples);
    for (const TrialReport& ce : mutated.counterexample_reports) {
        CHECK_FALSE(ce.hypotheses.any_fails());
        CHECK(ce.premise.status == Status::Holds);
        CHECK(ce.conclusion.status == Status::Fails);
        CHECK(ce.conclusion.witness.has_value());
    }
}

TEST_CASE("classification bookkeeping") {
    DiskGrid grid;
    const Preset& p = preset("cor-3.7");
    const FuzzSummary sum = fuzz_theorem(p, 30, 5, grid);
    CHECK(sum.trials == 30);
    CHECK(sum.confirming + sum.vacuous + sum.counterexamples + sum.inconclusive == sum.trials);
    CHECK(sum.counterexamples == 0);

    CHECK_THROWS_AS(fuzz_theorem(p, 0, 1, grid), UsageError);
}

TEST_CASE("single low-amplitude trial confirms") {
    DiskGrid grid;
    FuzzOptions opts;
    opts.amplitude = 0.001;
    const FuzzSummary sum = fuzz_theorem(preset("cor-3.3"), 1, 2, grid, opts);
    CHECK(sum.trials == 1);
    CHECK(sum.confirming == 1);
}

TEST_CASE("sandwich wrapper and orientation") {
    DiskGrid grid;
    const Preset& p = preset("thm-5.1");
    const MeromorphicSeries f = random_sigma_function(9, 64, 0.05);
    const AnalyticSeries q1 = q_family(*p.q1);
    const AnalyticSeries q2 = q_family(p.q);

    const TrialReport a = sandwich_trial(p.theorem, f, q1, q2, p.params, grid);
    const TrialReport b = run_trial(p.theorem, f, q2, q1, p.params, grid);
    CHECK(a.classification == b.classification);
    CHECK(a.premise.status == b.premise.status);

    // Swapping subordinant and dominant must not confirm.
    const TrialReport swapped = sandwich_trial(p.theorem, f, q2, q1, p.params, grid);
    CHECK(swapped.classification == Classification::Vacuous);
}

TEST_CASE("fuzz determinism") {
    DiskGrid grid;
    const Preset& p = preset("lem-2.6");
    const FuzzSummary a = fuzz_theorem(p, 20, 11, grid);
    const FuzzSummary b = fuzz_theorem(p, 20, 11, grid);
    CHECK(summary_json(a).dump() == summary_json(b).dump());
}
