#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ym/graph.hpp"

using namespace ym;

namespace {

YoungFunction random_young(Rng& rng, int carrier_dim, int fiber_dim, int max_sites,
                           int max_fiber_atoms) {
    const int n = rng.uniform_int(1, max_sites);
    std::vector<Site> sites;
    for (int i = 0; i < n; ++i) {
        sites.push_back({rng.point_in_box(carrier_dim, -5.0, 5.0), rng.uniform(0.1, 2.0),
                         testing::random_probability(rng, fiber_dim, max_fiber_atoms, 4.0)});
    }
    return YoungFunction(carrier_dim, fiber_dim, std::move(sites));
}

GraphMeasure random_graph(Rng& rng, int x_dim, int y_dim, int max_atoms) {
    const int n = rng.uniform_int(1, max_atoms);
    std::vector<GraphAtom> atoms;
    for (int i = 0; i < n; ++i) {
        atoms.push_back({rng.point_in_box(x_dim, -5.0, 5.0),
                         rng.point_in_box(y_dim, -5.0, 5.0), rng.uniform(0.05, 1.0)});
    }
    return GraphMeasure(x_dim, y_dim, std::move(atoms));
}

} // namespace

TEST_SUITE("graph_measure") {

TEST_CASE("build basics") {
    std::vector<Site> single;
    single.push_back({{0.5}, 0.7, dirac({3.0})});
    const GraphMeasure g = build(YoungFunction(1, 1, std::move(single)));
    REQUIRE(g.size() == 1);
    CHECK(g.atoms()[0].x == Vec{0.5});
    CHECK(g.atoms()[0].y == Vec{3.0});
    CHECK(g.atoms()[0].w == doctest::Approx(0.7).epsilon(1e-15));

    // Two carrier points at heights +-1/(2i) with unit masses and
    // opposite constant values give a 2-atom graph measure.
    const int i = 4;
    const double h = 1.0 / (2.0 * i);
    std::vector<Site> pair;
    pair.push_back({{h}, 1.0, dirac({1.0})});
    pair.push_back({{-h}, 1.0, dirac({-1.0})});
    const GraphMeasure lines = build(YoungFunction(1, 1, std::move(pair)));
    REQUIRE(lines.size() == 2);
    CHECK(lines.atoms()[0].x == Vec{-h});
    CHECK(lines.atoms()[0].y == Vec{-1.0});
    CHECK(lines.atoms()[1].x == Vec{h});
    CHECK(lines.atoms()[1].y == Vec{1.0});
    CHECK(lines.total_mass() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("graph integral equals the iterated sum") {
    Rng rng(9201);
    Battery bx(1, {bump({0.0}, 2.0, 6.0)});
    Battery by(2, {bump({0.5, -0.5}, 2.0, 6.0)});
    const Battery tensor = tensor_battery(bx, by);
    for (int trial = 0; trial < 30; ++trial) {
        const YoungFunction f = random_young(rng, 1, 2, 12, 6);
        const GraphMeasure gamma = build(f);
        for (const TestFunction& psi : tensor.members) {
            // Iterated-sum oracle: integrate over fibers first, then
            // against the base weights.
            KahanSum iterated;
            for (const Site& s : f.sites()) {
                const double inner = integrate(s.fiber.measure(), [&](const Vec& y) {
                    return psi(concat(s.x, y));
                });
                iterated.add(s.weight * inner);
            }
            CHECK(integrate_graph(gamma, psi) ==
                  doctest::Approx(iterated.value()).epsilon(1e-12));
        }
    }
}

TEST_CASE("disintegrate a worked three-atom instance") {
    const GraphMeasure gamma(1, 1,
                             {{{0.0}, {1.0}, 0.3}, {{0.0}, {2.0}, 0.3}, {{1.0}, {5.0}, 0.4}});
    const Disintegration parts = disintegrate(gamma);
    REQUIRE(parts.base.size() == 2);
    CHECK(parts.base.atoms()[0].x == Vec{0.0});
    CHECK(parts.base.atoms()[0].w == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(parts.base.atoms()[1].w == doctest::Approx(0.4).epsilon(1e-15));

    const Site& slice0 = parts.young.sites()[0];
    REQUIRE(slice0.fiber.size() == 2);
    CHECK(slice0.fiber.atoms()[0].x == Vec{1.0});
    CHECK(slice0.fiber.atoms()[0].w == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(slice0.fiber.atoms()[1].w == doctest::Approx(0.5).epsilon(1e-12));

    const Site& slice1 = parts.young.sites()[1];
    REQUIRE(slice1.fiber.size() == 1);
    CHECK(slice1.fiber.atoms()[0].x == Vec{5.0});
    CHECK(slice1.fiber.atoms()[0].w == 1.0);
}

TEST_CASE("roundtrips are atom-exact") {
    Rng rng(9202);
    for (int trial = 0; trial < 60; ++trial) {
        const YoungFunction f = random_young(rng, 2, 1, 15, 6);
        const Disintegration parts = disintegrate(build(f));
        CHECK(approx_equal(parts.young, f, 1e-12));
        CHECK(approx_equal(parts.base, f.base(), 1e-12));

        const GraphMeasure gamma = random_graph(rng, 1, 2, 30);
        const GraphMeasure rebuilt = build(disintegrate(gamma).young);
        CHECK(approx_equal(rebuilt, gamma, 1e-12));
    }
}

TEST_CASE("disintegrate requires positive mass") {
    CHECK_THROWS_AS(disintegrate(GraphMeasure(1, 1, {})), DegenerateMeasureError);
}

TEST_CASE("marginal recovers the base") {
    Rng rng(9203);
    const YoungFunction f = random_young(rng, 2, 3, 10, 5);
    const DiscreteMeasure marg = marginal_x(build(f));
    REQUIRE(marg.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(marg.atoms()[i].x == f.sites()[i].x);
        CHECK(marg.atoms()[i].w == doctest::Approx(f.sites()[i].weight).epsilon(1e-12));
    }

    std::vector<GraphAtom> one = {{{2.0}, {3.0}, 0.25}};
    const DiscreteMeasure single = marginal_x(GraphMeasure(1, 1, std::move(one)));
    REQUIRE(single.size() == 1);
    CHECK(single.atoms()[0].x == Vec{2.0});
    CHECK(single.atoms()[0].w == 0.25);
}

TEST_CASE("integrating a covering plateau yields the total mass") {
    Rng rng(9204);
    const GraphMeasure gamma = random_graph(rng, 1, 1, 20);
    const TestFunction cover = bump({0.0, 0.0}, 20.0, 30.0);
    CHECK(integrate_graph(gamma, cover) ==
          doctest::Approx(gamma.total_mass()).epsilon(1e-12));
}

TEST_CASE("tightness profile verdicts") {
    // Supported inside the unit fiber ball: tight with zero excess.
    std::vector<GraphMeasure> compact;
    for (int i = 1; i <= 5; ++i) {
        compact.push_back(GraphMeasure(
            1, 1, {{{0.0}, {1.0 / i}, 1.0}, {{0.5}, {-0.5}, 0.5}}));
    }
    const TightnessProfile tight_profile =
        tightness_profile(compact, Ball{{0.0}, 10.0}, {1.0, 2.0}, 1e-9);
    CHECK(tight_profile.tight);
    CHECK(tight_profile.rows[0].excess == 0.0);
    CHECK(tight_profile.sup_mass == doctest::Approx(1.5).epsilon(1e-15));

    // Fixed weight at escaping positions: excess stays at that weight.
    std::vector<GraphMeasure> escaping;
    for (int i = 1; i <= 12; ++i) {
        escaping.push_back(GraphMeasure(1, 1, {{{0.0}, {static_cast<double>(i)}, 0.25}}));
    }
    const TightnessProfile loose =
        tightness_profile(escaping, Ball{{0.0}, 10.0}, {1.0, 2.0, 4.0}, 1e-3);
    CHECK_FALSE(loose.tight);
    for (const TightnessRow& row : loose.rows) CHECK(row.excess == 0.25);

    // Monotone nonincreasing in s on random inputs.
    Rng rng(9205);
    std::vector<GraphMeasure> sequence;
    for (int i = 0; i < 6; ++i) sequence.push_back(random_graph(rng, 1, 1, 25));
    const TightnessProfile profile =
        tightness_profile(sequence, Ball{{0.0}, 3.0}, {0.5, 1.0, 2.0, 4.0, 8.0}, 1e-9);
    for (std::size_t k = 1; k < profile.rows.size(); ++k)
        CHECK(profile.rows[k].excess <= profile.rows[k - 1].excess);

    CHECK_THROWS_AS(tightness_profile({}, Ball{{0.0}, 1.0}, {1.0}, 1e-9), InvalidInputError);
    CHECK_THROWS_AS(tightness_profile(compact, Ball{{0.0}, 1.0}, {2.0, 1.0}, 1e-9),
                    InvalidInputError);
}

TEST_CASE("clustered disintegration groups nearby carrier points") {
    // Two x values within the radius share a slice; exact grouping
    // keeps them apart.
    const GraphMeasure gamma(1, 1,
                             {{{0.00}, {1.0}, 0.5}, {{0.01}, {-1.0}, 0.5}});
    CHECK(disintegrate(gamma).young.size() == 2);
    const Disintegration fuzzy = disintegrate_clustered(gamma, 0.05);
    REQUIRE(fuzzy.young.size() == 1);
    const Site& s = fuzzy.young.sites()[0];
    CHECK(s.x == Vec{0.0});
    REQUIRE(s.fiber.size() == 2);
    CHECK(s.fiber.atoms()[0].w == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(disintegrate_clustered(gamma, 0.0), InvalidInputError);
}

} // TEST_SUITE
