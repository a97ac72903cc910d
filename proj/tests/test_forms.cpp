#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "merosub/rng.hpp"
#include "merosub/theorem_forms.hpp"
#include "merosub/verifier.hpp"

using namespace merosub;

namespace {

double coeff_distance(const AnalyticSeries& a, const AnalyticSeries& b) {
    double d = 0.0;
    const int order = std::max(a.order(), b.order());
    for (int n = 0; n <= order; ++n)
        d = std::max(d, std::abs(a.coeff(n) - b.coeff(n)));
    return d;
}

// Max pointwise deviation over the default grid circles.
double grid_distance(const AnalyticSeries& a, const AnalyticSeries& b) {
    double d = 0.0;
    for (double r : {0.3, 0.7, 0.95})
        for (const Complex& z : circle_points(r, 256))
            d = std::max(d, std::abs(evaluate(a, z) - evaluate(pad(b, a.order()), z)));
    return d;
}

TheoremParams base_params() {
    TheoremParams p;
    p.lashin = LashinParams(0.9, 2.0);
    p.lambda = {1.0, 0.0};
    p.mu = {3.0, 0.0};
    p.gamma = {1.0, 0.0};
    p.eta = {1.0, 0.0};
    p.delta = {0.5, 0.0};
    p.m = {-1.0, 0.0};
    p.ell = {0.3, 0.0};
    return p;
}

AnalyticSeries zp1(const AnalyticSeries& s) { return shift_up(differentiate(s)); }

} // namespace

TEST_CASE("base and power series on the pure pole") {
    const MeromorphicSeries pole = MeromorphicSeries::pole(16);
    TheoremParams prm = base_params();
    prm.lambda = {0.7, 0.0};

    const AnalyticSeries convex = base_series(pole, prm, BaseMode::ConvexCombination);
    CHECK(coeff_distance(convex, AnalyticSeries::constant(1.0, 0)) < 1e-15);

    prm.lambda = {2.0, 0.0};
    const AnalyticSeries printed = base_series(pole, prm, BaseMode::AsWritten);
    CHECK(std::abs(printed.coeff(0) - 0.5) < 1e-15);

    prm.lambda = {1.0, 0.0};
    CHECK(coeff_distance(k_series(pole, prm, BaseMode::ConvexCombination),
                         AnalyticSeries::constant(1.0, 0)) < 1e-15);
}

TEST_CASE("both modes coincide at lambda = 1") {
    const MeromorphicSeries f = random_sigma_function(3, 32, 0.1);
    const TheoremParams prm = base_params();
    const AnalyticSeries a = base_series(f, prm, BaseMode::AsWritten);
    const AnalyticSeries b = base_series(f, prm, BaseMode::ConvexCombination);
    CHECK(coeff_distance(a, b) < 1e-14);
    CHECK(coeff_distance(a, z_lashin(f, prm, 0.0)) < 1e-14);

    // Power 1 at lambda = 1 is just the base.
    TheoremParams p1 = prm;
    p1.mu = {1.0, 0.0};
    CHECK(coeff_distance(k_series(f, p1, BaseMode::ConvexCombination), b) < 1e-12);
    CHECK(coeff_distance(p_series(f, p1), b) < 1e-12);
}

TEST_CASE("log-derivative expression") {
    const TheoremParams prm = base_params();
    CHECK(coeff_distance(lhs_31(MeromorphicSeries::pole(16), prm, BaseMode::ConvexCombination),
                         AnalyticSeries::constant(1.0, 0)) < 1e-15);

    // lambda = 1 printed specialization: 1 - gamma mu beta (1 - ratio).
    const MeromorphicSeries f = random_sigma_function(5, 64, 0.1);
    const AnalyticSeries lhs = lhs_31(f, prm, BaseMode::ConvexCombination);
    const AnalyticSeries printed =
        1.0 - (prm.gamma * prm.mu * prm.lashin.beta) *
                  (AnalyticSeries::constant(1.0, 0) - ratio_series(f, prm));
    CHECK(coeff_distance(lhs, printed) < 1e-12);

    // Chain identity: lhs = 1 + gamma z k'/k.
    const AnalyticSeries k = k_series(f, prm, BaseMode::ConvexCombination);
    const AnalyticSeries via_k = 1.0 + prm.gamma * divide(zp1(k), k);
    CHECK(grid_distance(lhs, via_k) < 1e-9);
}

TEST_CASE("psi expression") {
    TheoremParams prm = base_params();
    const AnalyticSeries psi0 = psi_series(MeromorphicSeries::pole(16), prm);
    CHECK(coeff_distance(psi0, AnalyticSeries::constant(prm.delta + prm.eta, 0)) < 1e-14);

    const MeromorphicSeries f = random_sigma_function(7, 64, 0.1);
    TheoremParams simple = prm;
    simple.delta = {};
    simple.gamma = {};
    CHECK(coeff_distance(psi_series(f, simple), simple.eta * p_series(f, simple)) < 1e-13);

    // Identity: psi = delta p^2 + eta p + gamma z p'.
    const AnalyticSeries p = p_series(f, prm);
    const AnalyticSeries direct = prm.delta * (p * p) + prm.eta * p + prm.gamma * zp1(p);
    CHECK(grid_distance(psi_series(f, prm), direct) < 1e-9);
}

TEST_CASE("phi expression") {
    TheoremParams prm = base_params();
    const AnalyticSeries phi0 =
        phi_series(MeromorphicSeries::pole(16), prm, BaseMode::ConvexCombination);
    CHECK(coeff_distance(phi0, AnalyticSeries::constant(prm.m, 0)) < 1e-14);

    // Identity at lambda = 1: phi = m p - (ell / beta) z p'.
    const MeromorphicSeries f = random_sigma_function(9, 64, 0.1);
    const AnalyticSeries p = p_series(f, prm);
    const AnalyticSeries direct = prm.m * p - (prm.ell / prm.lashin.beta) * zp1(p);
    CHECK(grid_distance(phi_series(f, prm, BaseMode::ConvexCombination), direct) < 1e-9);
}

TEST_CASE("dominant families") {
    CHECK(coeff_distance(q_family({.kind = QKind::Exponential, .tau = {}}, 16),
                         AnalyticSeries::constant(1.0, 16)) < 1e-15);

    const AnalyticSeries hp = q_family({.kind = QKind::HalfPlanePower, .rho = 1.0}, 16);
    CHECK(std::abs(hp.coeff(0) - 1.0) < 1e-12);
    for (int n = 1; n <= 16; ++n)
        CHECK(std::abs(hp.coeff(n) - 2.0) < 1e-10);

    const AnalyticSeries jan = q_family({.kind = QKind::Janowski, .A = 0.5, .B = -0.5});
    CHECK(std::abs(evaluate(jan, Complex{0.5, 0.0}) - 5.0 / 3.0) < 1e-12);

    for (const QFamilySpec spec :
         {QFamilySpec{.kind = QKind::Exponential, .tau = {0.8, 0.0}},
          QFamilySpec{.kind = QKind::HalfPlanePower, .rho = 0.4},
          QFamilySpec{.kind = QKind::MacoveiMobius, .A = 0.4},
          QFamilySpec{.kind = QKind::Janowski, .A = 0.3, .B = -0.6}})
        CHECK(q_family(spec).coeff(0) == Complex{1.0});

    // Sector property of the half-plane power.
    const double rho = 0.6;
    const AnalyticSeries sector = q_family({.kind = QKind::HalfPlanePower, .rho = rho});
    for (const Complex& v : sample_circle(sector, 0.9, 512))
        CHECK(std::abs(std::arg(v)) < rho * std::numbers::pi / 2.0);

    CHECK_THROWS_AS(q_family({.kind = QKind::Exponential, .tau = {1.5, 0.0}}), SpecError);
    CHECK_THROWS_AS(q_family({.kind = QKind::HalfPlanePower, .rho = 0.0}), SpecError);
    CHECK_THROWS_AS(q_family({.kind = QKind::MacoveiMobius, .A = 0.0}), SpecError);
    CHECK_THROWS_AS(q_family({.kind = QKind::Janowski, .A = 0.2, .B = 0.5}), SpecError);
}

TEST_CASE("dominant-side expressions") {
    const TheoremParams prm = base_params();

    // LogDeriv with q = e^{tau z}: z q'/q = tau z exactly.
    const AnalyticSeries qe = q_family({.kind = QKind::Exponential, .tau = {0.8, 0.0}});
    const AnalyticSeries ld = rhs_builder(RhsKind::LogDeriv, qe, prm);
    CHECK(std::abs(ld.coeff(0) - 1.0) < 1e-12);
    CHECK(std::abs(ld.coeff(1) - prm.gamma * Complex{0.8, 0.0}) < 1e-12);
    for (int n = 2; n <= 8; ++n)
        CHECK(std::abs(ld.coeff(n)) < 1e-12);

    // LogDeriv with the half-plane power: 1 + 2 rho gamma z / (1 - z^2).
    const double rho = 0.7;
    const AnalyticSeries qh = q_family({.kind = QKind::HalfPlanePower, .rho = rho});
    const AnalyticSeries ldh = rhs_builder(RhsKind::LogDeriv, qh, prm);
    for (const Complex& z : circle_points(0.7, 64)) {
        const Complex want = 1.0 + 2.0 * rho * prm.gamma * z / (1.0 - z * z);
        CHECK(std::abs(evaluate(ldh, z) - want) < 1e-9);
    }

    // Quadratic collapses to delta + eta on the constant dominant.
    const AnalyticSeries quad =
        rhs_builder(RhsKind::Quadratic, AnalyticSeries::constant(1.0, 8), prm);
    CHECK(coeff_distance(quad, AnalyticSeries::constant(prm.delta + prm.eta, 0)) < 1e-14);
}

TEST_CASE("hypothesis integrands") {
    const TheoremParams prm = base_params();

    // (3.2) with the exponential dominant: both log-derivatives cancel.
    const AnalyticSeries qe = q_family({.kind = QKind::Exponential, .tau = {0.8, 0.0}});
    const HypothesisSeries h32 = hypothesis_value(HypKind::Cond32, qe, prm);
    CHECK(h32.bound == 0.0);
    CHECK(grid_distance(pad(h32.value, 8), AnalyticSeries::constant(1.0, 0)) < 1e-9);

    // (3.34) with the Mobius dominant reproduces the Mobius itself.
    const AnalyticSeries qm = q_family({.kind = QKind::MacoveiMobius, .A = 0.4});
    const HypothesisSeries h334 = hypothesis_value(HypKind::Cond334, qm, prm);
    DiskGrid grid;
    const auto [mn, z] = min_real_on_disk(h334.value, grid);
    CHECK(mn == doctest::Approx((1.0 - 0.4 * 0.95) / (1.0 + 0.4 * 0.95)).epsilon(1e-6));
    CHECK(mn - h334.bound > 0.0);

    // (3.18) with delta = 0 is the constant eta / gamma.
    TheoremParams flat = prm;
    flat.delta = {};
    const HypothesisSeries h318 =
        hypothesis_value(HypKind::Cond318, AnalyticSeries::constant(1.0, 8), flat);
    CHECK(coeff_distance(h318.value, AnalyticSeries::constant(flat.eta / flat.gamma, 0)) <
          1e-14);
}

TEST_CASE("scalar Macovei condition") {
    TheoremParams prm = base_params();
    prm.sigma = 0.8;
    const QFamilySpec spec{.kind = QKind::MacoveiMobius, .A = 0.4};
    const double factor = 1.4 / 0.6;
    const double want = (2.0 * 0.5 / 0.8) * factor + (1.0 / 0.8) * factor;
    CHECK(macovei_condition(spec, prm) == doctest::Approx(want).epsilon(1e-12));

    CHECK_THROWS_AS(macovei_condition({.kind = QKind::Janowski, .A = 0.4, .B = -0.4}, prm),
                    UsageError);
}

TEST_CASE("preset registry") {
    const auto& reg = preset_registry();
    CHECK(reg.size() == 13);
    for (const char* name : {"cor-3.2", "cor-3.3", "cor-3.4", "cor-3.6", "cor-3.7", "cor-3.9",
                             "cor-3.10", "cor-4.2", "cor-4.4", "cor-4.5", "thm-5.1", "thm-5.2",
                             "lem-2.6"}) {
        const Preset* p = find_preset(name);
        REQUIRE(p != nullptr);
        CHECK_NOTHROW(p->q.validate());
        if (p->q1)
            CHECK_NOTHROW(p->q1->validate());
    }
    CHECK(find_preset("cor-9.9") == nullptr);
}
