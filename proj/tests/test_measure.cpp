#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "ym/measure.hpp"

using namespace ym;

TEST_SUITE("measure_core") {

TEST_CASE("dirac places a unit atom") {
    const ProbabilityMeasure d0 = dirac({0.0});
    REQUIRE(d0.size() == 1);
    CHECK(d0.atoms()[0].x == Vec{0.0});
    CHECK(d0.atoms()[0].w == 1.0);

    const ProbabilityMeasure d2 = dirac({3.0, -4.0});
    CHECK(d2.atoms()[0].x == Vec{3.0, -4.0});
    CHECK(total_mass(d2.measure()) == 1.0);

    // Dirac evaluation: integration is evaluation at the point.
    const ProbabilityMeasure d = dirac({2.0});
    CHECK(integrate(d.measure(), [](const Vec& y) { return y[0] * y[0]; }) == 4.0);
}

TEST_CASE("dirac rejects non-finite points") {
    CHECK_THROWS_AS(dirac({std::numeric_limits<double>::quiet_NaN()}), InvalidInputError);
    CHECK_THROWS_AS(dirac({std::numeric_limits<double>::infinity()}), InvalidInputError);
}

TEST_CASE("total mass and normalize") {
    const DiscreteMeasure mu(1, {{{0.0}, 2.0}, {{1.0}, 3.0}});
    CHECK(total_mass(mu) == 5.0);
    const ProbabilityMeasure p = normalize(mu);
    CHECK(p.atoms()[0].w == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(p.atoms()[1].w == doctest::Approx(0.6).epsilon(1e-15));

    CHECK_THROWS_AS(normalize(DiscreteMeasure::empty(1)), DegenerateMeasureError);
}

TEST_CASE("atom validation") {
    CHECK_THROWS_AS(DiscreteMeasure(1, {{{1.0}, -0.5}}), InvalidInputError);
    CHECK_THROWS_AS(DiscreteMeasure(1, {{{std::nan("")}, 0.5}}), InvalidInputError);
    CHECK_THROWS_AS(DiscreteMeasure(2, {{{1.0}, 0.5}}), DimensionMismatchError);
    CHECK_THROWS_AS(ProbabilityMeasure(DiscreteMeasure(1, {{{0.0}, 0.5}})),
                    DegenerateMeasureError);
}

TEST_CASE("integrate against grids") {
    // Left-endpoint grid j/100: mean is 0.495, cross-checked by a direct
    // summation oracle.
    std::vector<Atom> atoms;
    for (int j = 0; j < 100; ++j) atoms.push_back({{j / 100.0}, 0.01});
    const DiscreteMeasure grid(1, std::move(atoms));
    double oracle = 0.0;
    for (int j = 0; j < 100; ++j) oracle += 0.01 * (j / 100.0);
    const double value = integrate(grid, [](const Vec& y) { return y[0]; });
    CHECK(value == doctest::Approx(oracle).epsilon(1e-15));
    CHECK(value == doctest::Approx(0.495).epsilon(1e-12));

    // Symmetric two-atom measure kills odd integrands.
    const DiscreteMeasure sym(1, {{{-1.0}, 0.5}, {{1.0}, 0.5}});
    CHECK(integrate(sym, [](const Vec& y) { return y[0]; }) == 0.0);
}

TEST_CASE("pushforward maps and merges atoms") {
    const DiscreteMeasure shifted =
        pushforward(dirac({2.0}), 1, [](const Vec& y) { return Vec{y[0] + 1.0}; });
    CHECK(shifted == dirac({3.0}).measure());

    const DiscreteMeasure folded = pushforward(
        DiscreteMeasure(1, {{{-1.0}, 0.5}, {{1.0}, 0.5}}), 1,
        [](const Vec& y) { return Vec{y[0] * y[0]}; });
    REQUIRE(folded.size() == 1);
    CHECK(folded.atoms()[0].x == Vec{1.0});
    CHECK(folded.atoms()[0].w == 1.0);

    CHECK_THROWS_AS(pushforward(dirac({0.0}), 1,
                                [](const Vec&) { return Vec{std::nan("")}; }),
                    InvalidInputError);
}

TEST_CASE("pushforward change-of-variables on random instances") {
    Rng rng(7001);
    for (int trial = 0; trial < 50; ++trial) {
        const DiscreteMeasure mu = testing::random_measure(rng, 2, 30);
        auto h = [](const Vec& y) { return Vec{y[0] + 2.0 * y[1], y[0] * y[1]}; };
        auto g = [](const Vec& z) { return std::sin(z[0]) + z[1]; };
        const double lhs = integrate(pushforward(mu, 2, h), g);
        const double rhs = integrate(mu, [&](const Vec& y) { return g(h(y)); });
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("product measures") {
    const DiscreteMeasure p = product(dirac({1.0}), dirac({2.0}));
    CHECK(p == dirac({1.0, 2.0}).measure());

    Rng rng(7002);
    const DiscreteMeasure mu = testing::random_measure(rng, 1, 8);
    const DiscreteMeasure nu = testing::random_measure(rng, 2, 7);
    const DiscreteMeasure prod = product(mu, nu);
    CHECK(prod.size() <= mu.size() * nu.size());
    CHECK(total_mass(prod) ==
          doctest::Approx(total_mass(mu) * total_mass(nu)).epsilon(1e-12));

    // Marginal summation oracle: projecting back recovers the factors.
    const DiscreteMeasure marg_x =
        pushforward(prod, 1, [](const Vec& p_) { return Vec{p_[0]}; });
    const DiscreteMeasure marg_y =
        pushforward(prod, 2, [](const Vec& p_) { return Vec{p_[1], p_[2]}; });
    REQUIRE(marg_x.size() == mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CHECK(marg_x.atoms()[i].x == mu.atoms()[i].x);
        CHECK(marg_x.atoms()[i].w ==
              doctest::Approx(mu.atoms()[i].w * total_mass(nu)).epsilon(1e-12));
    }
    REQUIRE(marg_y.size() == nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
        CHECK(marg_y.atoms()[i].w ==
              doctest::Approx(nu.atoms()[i].w * total_mass(mu)).epsilon(1e-12));
    }
}

TEST_CASE("convolution basics") {
    CHECK(convolve(dirac({2.0}), dirac({3.0})) == dirac({5.0}));

    // Finitely supported case: all pairwise sums with product weights.
    const ProbabilityMeasure mu(DiscreteMeasure(1, {{{0.0}, 0.25}, {{1.0}, 0.75}}));
    const ProbabilityMeasure nu(DiscreteMeasure(1, {{{0.0}, 0.5}, {{2.0}, 0.5}}));
    const ProbabilityMeasure conv = convolve(mu, nu);
    REQUIRE(conv.size() == 4);
    CHECK(conv.atoms()[0].x == Vec{0.0});
    CHECK(conv.atoms()[0].w == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(conv.atoms()[1].x == Vec{1.0});
    CHECK(conv.atoms()[1].w == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(conv.atoms()[2].x == Vec{2.0});
    CHECK(conv.atoms()[2].w == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(conv.atoms()[3].x == Vec{3.0});
    CHECK(conv.atoms()[3].w == doctest::Approx(0.375).epsilon(1e-15));

    // Dirac at the origin is the identity element.
    Rng rng(7003);
    const ProbabilityMeasure random = testing::random_probability(rng, 2, 10);
    CHECK(approx_equal(convolve(random, dirac({0.0, 0.0})).measure(), random.measure(), 1e-12));

    CHECK_THROWS_AS(convolve(dirac({0.0}), dirac({0.0, 0.0})), DimensionMismatchError);
}

TEST_CASE("convolution commutes and associates") {
    Rng rng(7004);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = rng.uniform_int(1, 3);
        const ProbabilityMeasure a = testing::random_probability(rng, dim, 5);
        const ProbabilityMeasure b = testing::random_probability(rng, dim, 5);
        const ProbabilityMeasure c = testing::random_probability(rng, dim, 5);
        CHECK(approx_equal(convolve(a, b).measure(), convolve(b, a).measure(), 1e-12));
        const ProbabilityMeasure ab_c = convolve(convolve(a, b), c);
        const ProbabilityMeasure a_bc = convolve(a, convolve(b, c));
        // Positions differ at roundoff between the two association
        // orders, so compare by integration against smooth functions.
        auto probe = [](const Vec& y) {
            double s = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i)
                s += std::sin(y[i] + 0.3 * static_cast<double>(i));
            return s;
        };
        CHECK(integrate(ab_c.measure(), probe) ==
              doctest::Approx(integrate(a_bc.measure(), probe)).epsilon(1e-9));
    }
}

TEST_CASE("mass conservation under pushforward, convolve, coalesce") {
    Rng rng(7005);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = rng.uniform_int(1, 3);
        const DiscreteMeasure mu = testing::random_measure(rng, dim, 40);
        const double mass = total_mass(mu);
        const DiscreteMeasure pushed = pushforward(mu, dim, [](const Vec& y) {
            Vec out(y);
            for (double& c : out) c = std::round(c);
            return out;
        });
        CHECK(total_mass(pushed) == doctest::Approx(mass).epsilon(1e-12));
        CHECK(total_mass(coalesce(mu, 0.5)) == doctest::Approx(mass).epsilon(1e-12));

        const ProbabilityMeasure a = testing::random_probability(rng, dim, 12);
        const ProbabilityMeasure b = testing::random_probability(rng, dim, 12);
        CHECK(total_mass(convolve(a, b).measure()) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("restrict, first moment, coalesce examples") {
    const DiscreteMeasure mu(1, {{{1.0}, 0.5}, {{5.0}, 0.5}});
    const DiscreteMeasure inner = restrict_to_ball(mu, 2.0);
    REQUIRE(inner.size() == 1);
    CHECK(inner.atoms()[0].x == Vec{1.0});

    CHECK(first_moment(dirac({-3.0}).measure()) == 3.0);

    const DiscreteMeasure dup(1, {{{1.0}, 0.5}, {{1.0}, 0.5}});
    const DiscreteMeasure merged = coalesce(dup, 0.0);
    REQUIRE(merged.size() == 1);
    CHECK(merged.atoms()[0].w == 1.0);
}

TEST_CASE("restrict mass is monotone in the radius") {
    Rng rng(7006);
    const DiscreteMeasure mu = testing::random_measure(rng, 3, 50, 5.0);
    double prev = 0.0;
    for (double s = 0.0; s <= 12.0; s += 0.5) {
        const double m = total_mass(restrict_to_ball(mu, s));
        CHECK(m >= prev);
        prev = m;
    }
    CHECK(prev == doctest::Approx(total_mass(mu)).epsilon(1e-15));
}

TEST_CASE("canonical ordering makes equality list equality") {
    const DiscreteMeasure a(2, {{{1.0, 0.0}, 0.5}, {{0.0, 1.0}, 0.5}});
    const DiscreteMeasure b(2, {{{0.0, 1.0}, 0.5}, {{1.0, 0.0}, 0.5}});
    CHECK(a == b);
    CHECK(a.atoms()[0].x == Vec{0.0, 1.0});
}

} // TEST_SUITE
