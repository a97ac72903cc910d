#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "merosub/disk.hpp"
#include "merosub/rng.hpp"

using namespace merosub;

namespace {

AnalyticSeries from(std::vector<Complex> c) { return AnalyticSeries(std::move(c)); }

AnalyticSeries mobius(double a, int order = default_order) {
    // (1 + a z) / (1 - a z)
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    c[0] = 1.0;
    for (int n = 1; n <= order; ++n)
        c[static_cast<std::size_t>(n)] = 2.0 * std::pow(a, n);
    return from(std::move(c));
}

AnalyticSeries exp_tau(double tau, int order = default_order) {
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    double term = 1.0;
    c[0] = 1.0;
    for (int n = 1; n <= order; ++n) {
        term *= tau / n;
        c[static_cast<std::size_t>(n)] = term;
    }
    return from(std::move(c));
}

} // namespace

TEST_CASE("grid validation") {
    DiskGrid ok;
    CHECK_NOTHROW(ok.validate());

    DiskGrid g1;
    g1.radii.clear();
    CHECK_THROWS_AS(g1.validate(), UsageError);

    DiskGrid g2;
    g2.radii = {0.5, 0.3};
    CHECK_THROWS_AS(g2.validate(), UsageError);

    DiskGrid g3;
    g3.radii = {0.5, 0.99};
    CHECK_THROWS_AS(g3.validate(), UsageError);

    DiskGrid g4;
    g4.angular_count = 128;
    CHECK_THROWS_AS(g4.validate(), UsageError);
}

TEST_CASE("verdict margins and meet") {
    CHECK(verdict_from_margin(0.5, {}, {}).status == Status::Holds);
    CHECK(verdict_from_margin(-0.5, {}, {}).status == Status::Fails);
    CHECK(verdict_from_margin(1e-8, {}, {}).status == Status::Inconclusive);
    CHECK(verdict_from_margin(-0.5, {}, {}).witness.has_value());

    const Verdict h = Verdict::holds(1.0);
    const Verdict f = Verdict::fails(-1.0, {});
    const Verdict i = Verdict::inconclusive(0.0);
    CHECK(meet(h, f).status == Status::Fails);
    CHECK(meet(h, i).status == Status::Inconclusive);
    CHECK(meet(meet(h, i), f).status == meet(h, meet(i, f)).status);
    CHECK(meet(h, f).margin == -1.0);
}

TEST_CASE("min_real_on_disk") {
    DiskGrid grid;
    grid.radii = {0.3, 0.5};
    const auto [mn, z] = min_real_on_disk(from({1.0, 1.0}), grid);
    CHECK(mn == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(z - Complex{-0.5, 0.0}) < 1e-9);

    const auto [mc, zc] = min_real_on_disk(AnalyticSeries::constant(Complex{2.0, -3.0}, 4), grid);
    CHECK(mc == 2.0);

    // Mobius closed form: min Re over |z| = r is (1 - A r) / (1 + A r).
    DiskGrid one;
    one.radii = {0.8};
    const auto [mm, zm] = min_real_on_disk(mobius(0.5), one);
    CHECK(mm == doctest::Approx((1.0 - 0.4) / (1.0 + 0.4)).epsilon(1e-9));
    CHECK(mm > 0.0);
}

TEST_CASE("winding numbers") {
    const auto circle = circle_points(1.0, 512);
    CHECK(winding_number(circle, Complex{}) == 1);
    CHECK(winding_number(circle, Complex{2.0, 0.0}) == 0);

    // Image of |z| = 0.5 under z^2 winds twice around 0.
    std::vector<Complex> sq;
    for (const Complex& z : circle_points(0.5, 512))
        sq.push_back(z * z);
    CHECK(winding_number(sq, Complex{}) == 2);

    // Translation invariance.
    const Complex c{0.3, -1.2};
    std::vector<Complex> shifted;
    for (const Complex& p : sq)
        shifted.push_back(p + c);
    CHECK(winding_number(shifted, c) == 2);

    CHECK_THROWS_AS(winding_number(circle, Complex{1.0, 0.0}), TooClose);
    CHECK_THROWS_AS(winding_number(std::vector<Complex>{Complex{}, Complex{1.0, 0.0}},
                                   Complex{5.0, 0.0}),
                    UsageError);
}

TEST_CASE("univalence probe") {
    DiskGrid grid;
    CHECK(univalence_probe(AnalyticSeries::identity(8), grid).status == Status::Holds);

    std::vector<Complex> sq(9, Complex{});
    sq[2] = 1.0;
    const Verdict even = univalence_probe(from(std::move(sq)), grid);
    CHECK(even.status == Status::Fails);
    CHECK(even.witness.has_value());

    CHECK(univalence_probe(exp_tau(0.8), grid).status == Status::Holds);
}

TEST_CASE("injective boundary probe") {
    DiskGrid grid;
    CHECK(injective_boundary_probe(AnalyticSeries::identity(8), grid).status == Status::Holds);

    // z^2 covers each boundary image point twice.
    std::vector<Complex> sq(9, Complex{});
    sq[2] = 1.0;
    CHECK(injective_boundary_probe(from(std::move(sq)), grid).status == Status::Fails);

    // A constant has no boundary curve to speak of.
    CHECK(injective_boundary_probe(AnalyticSeries::constant(1.0, 8), grid).status ==
          Status::Fails);
}

TEST_CASE("starlike probe") {
    DiskGrid grid;
    CHECK(starlike_probe(AnalyticSeries::identity(8), grid).status == Status::Holds);

    // Koebe function z / (1-z)^2: z s'/s = (1+z)/(1-z). Capped at r = 0.7,
    // where the order-64 truncation of the slowly decaying tail is negligible.
    std::vector<Complex> koebe(65, Complex{});
    for (int n = 1; n <= 64; ++n)
        koebe[static_cast<std::size_t>(n)] = static_cast<double>(n);
    CHECK(starlike_probe(AnalyticSeries(std::move(koebe), 0.7), grid).status == Status::Holds);

    const Verdict bad = starlike_probe(from({0.0, 1.0, -1.9}), grid);
    CHECK(bad.status == Status::Fails);

    CHECK_THROWS_AS(starlike_probe(AnalyticSeries::constant(0.0, 4), grid), UsageError);
}

TEST_CASE("convex probe") {
    DiskGrid grid;
    CHECK(convex_probe(AnalyticSeries::identity(8), grid).status == Status::Holds);
    CHECK(convex_probe(mobius(0.5), grid).status == Status::Holds);
    CHECK(convex_probe(from({0.0, 1.0, 1.0}), grid).status == Status::Fails);
    CHECK_THROWS_AS(convex_probe(AnalyticSeries::constant(1.0, 8), grid),
                    DegenerateDerivative);
}

TEST_CASE("subordination probe basics") {
    DiskGrid grid;
    const AnalyticSeries id = AnalyticSeries::identity(8);
    CHECK(subordination_probe(Complex{0.5, 0.0} * id, id, grid).status == Status::Holds);
    CHECK(subordination_probe(Complex{2.0, 0.0} * id, id, grid).status == Status::Fails);

    // Center mismatch fails immediately with the witness at z = 0.
    const Verdict mism = subordination_probe(id + Complex{0.1, 0.0}, id, grid);
    CHECK(mism.status == Status::Fails);
    REQUIRE(mism.witness.has_value());
    CHECK(mism.witness->z == Complex{});

    // Reflexivity on a univalent function.
    CHECK(subordination_probe(mobius(0.5), mobius(0.5), grid).status == Status::Holds);
}

TEST_CASE("subordination probe counts coverage, not valence") {
    DiskGrid grid;
    // f = z^2 is 2-valent; a smaller multiple of it is still range-contained.
    std::vector<Complex> sq(9, Complex{});
    sq[2] = 1.0;
    const AnalyticSeries f = from(std::move(sq));
    CHECK(subordination_probe(Complex{0.5, 0.0} * f, f, grid).status == Status::Holds);
    CHECK(subordination_probe(Complex{3.0, 0.0} * f, f, grid).status == Status::Fails);
}

TEST_CASE("constructed positives never fail") {
    DiskGrid grid;
    Rng rng(2024);
    for (int i = 0; i < 25; ++i) {
        const AnalyticSeries f = mobius(rng.uniform(0.2, 0.7));
        const AnalyticSeries w = Complex{rng.uniform(0.1, 0.9), 0.0} *
                                 AnalyticSeries::identity(default_order);
        const Verdict v = subordination_probe(compose_schwarz(f, w), f, grid);
        CHECK(v.status != Status::Fails);
    }
}

TEST_CASE("failure witnesses re-verify") {
    DiskGrid grid;
    const AnalyticSeries f = mobius(0.4);
    const AnalyticSeries g = 1.0 + Complex{3.0, 0.0} * (mobius(0.4) - Complex{1.0, 0.0});
    const Verdict v = subordination_probe(g, f, grid);
    REQUIRE(v.status == Status::Fails);
    REQUIRE(v.witness.has_value());
    // The offending value really lies outside the outer curve.
    const auto curve = sample_circle(f, 0.95, grid.angular_count);
    CHECK(winding_number(curve, v.witness->value) == 0);
    CHECK(std::abs(evaluate(g, v.witness->z) - v.witness->value) < 1e-12);
}
