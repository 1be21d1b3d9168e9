#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ym/test_functions.hpp"

using namespace ym;

namespace {

// Central finite differences, the independent oracle for gradients.
Vec fd_gradient(const TestFunction& f, const Vec& y, double h = 1e-6) {
    Vec g(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        Vec lo(y), hi(y);
        lo[k] -= h;
        hi[k] += h;
        g[k] = (f(hi) - f(lo)) / (2.0 * h);
    }
    return g;
}

} // namespace

TEST_SUITE("test_functions") {

TEST_CASE("bump plateau and support") {
    const TestFunction b = bump({0.0}, 1.0, 2.0);
    CHECK(b({0.0}) == 1.0);
    CHECK(b({0.5}) == 1.0);
    CHECK(b({3.0}) == 0.0);
    CHECK(b({1.5}) > 0.0);
    CHECK(b({1.5}) < 1.0);
    CHECK(integrate(dirac({0.0}).measure(), b) == 1.0);
    CHECK_THROWS_AS(bump({0.0}, 2.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS(bump({0.0}, 0.0, 1.0), InvalidInputError);
}

TEST_CASE("bump gradient matches finite differences") {
    Rng rng(9001);
    const TestFunction b = bump({0.3, -0.7}, 1.0, 2.5);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec y = rng.point_in_box(2, -4.0, 4.0);
        const Vec g = b.gradient(y);
        const Vec fd = fd_gradient(b, y);
        for (std::size_t k = 0; k < 2; ++k) CHECK(std::fabs(g[k] - fd[k]) <= 1e-6);
    }
}

TEST_CASE("functions vanish past their support radius") {
    Rng rng(9002);
    std::vector<TestFunction> fns;
    fns.push_back(bump({1.0, 2.0}, 0.5, 1.5));
    fns.push_back(truncated_linear({0.6, 0.8}, 3));
    for (const TestFunction& f : fns) {
        REQUIRE(std::isfinite(f.support_radius()));
        for (int trial = 0; trial < 50; ++trial) {
            Vec y = rng.direction(2);
            for (double& c : y) c *= 2.0 * f.support_radius();
            CHECK(f(y) == 0.0);
        }
    }
}

TEST_CASE("sampled gradients respect declared Lipschitz bounds") {
    Rng rng(9003);
    std::vector<TestFunction> fns;
    fns.push_back(bump({0.0, 0.0}, 1.0, 3.0));
    fns.push_back(truncated_linear({1.0, 0.0}, 2));
    fns.push_back(truncated_linear({0.0, 1.0}, 7));
    fns.push_back(scale(bump({0.5, 0.5}, 0.5, 1.0), 0.25));
    for (const TestFunction& f : fns) {
        const auto grid = sample_grid(2, 1.2 * std::min(f.support_radius(), 50.0), 2000, 9003);
        for (const Vec& y : grid)
            CHECK(norm(f.gradient(y)) <= f.lip_bound() * (1.0 + 1e-6));
    }
}

TEST_CASE("truncated_linear is a member of the generator family") {
    for (int level : {1, 2, 3, 10, 50}) {
        const TestFunction g = truncated_linear({1.0}, level);
        CHECK(g({0.0}) == 0.0);
        CHECK(g.vanishes_at_origin());
        CHECK(g.lip_bound() <= 1.0);
    }
    CHECK_THROWS_AS(truncated_linear({2.0}, 3), InvalidInputError);
    CHECK_THROWS_AS(truncated_linear({1.0}, 0), InvalidInputError);

    // Level-1 members are identically zero by the damping factor.
    const TestFunction g1 = truncated_linear({1.0}, 1);
    CHECK(g1({3.0}) == 0.0);

    // Differences along the direction approach the point distance.
    const Vec y1{2.0};
    const Vec y2{-1.0};
    double prev = 0.0;
    for (int level : {5, 10, 40, 160}) {
        const TestFunction g = truncated_linear({1.0}, level);
        const double diff = g(y1) - g(y2);
        CHECK(diff <= 3.0 + 1e-12);
        CHECK(diff >= prev);
        prev = diff;
    }
    CHECK(prev >= 3.0 * (1.0 - 1.0 / 160.0) - 1e-12);
}

TEST_CASE("truncated_linear gradient matches finite differences") {
    Rng rng(9004);
    const TestFunction g = truncated_linear({0.6, -0.8}, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec y = rng.point_in_box(2, -8.0, 8.0);
        const Vec grad = g.gradient(y);
        const Vec fd = fd_gradient(g, y);
        for (std::size_t k = 0; k < 2; ++k) CHECK(std::fabs(grad[k] - fd[k]) <= 1e-5);
    }
}

TEST_CASE("e_norm on grids") {
    const auto grid = sample_grid(1, 4.0, 5000, 9005);
    CHECK(e_norm(zero_function(1), grid) == 0.0);

    // The taper's peak slope is 1.875 / width; a scaled bump scales it.
    const TestFunction b = bump({0.0}, 1.0, 2.0);
    const double peak = 1.875;
    CHECK(e_norm(b, grid) == doctest::Approx(peak).epsilon(1e-2));
    CHECK(e_norm(scale(b, 0.4), grid) == doctest::Approx(0.4 * peak).epsilon(1e-2));

    CHECK_THROWS_AS(e_norm(b, {}), InvalidInputError);
}

TEST_CASE("w_alpha membership checks") {
    const auto grid = sample_grid(1, 4.0, 5000, 9006);
    CHECK(in_w_alpha(zero_function(1), {3, 5, 7}, grid));

    // Gradient magnitude 0.3 at |y| around 2.5: passes alpha(3) = 2
    // (0.3 <= 1/2), fails alpha(3) = 4 (0.3 > 1/4).
    const TestFunction f = scale(bump({0.0}, 2.0, 3.0), 0.3 / 1.875);
    CHECK(in_w_alpha(f, {1, 1, 2}, grid));
    CHECK_FALSE(in_w_alpha(f, {1, 1, 4}, grid));
}

TEST_CASE("tensor battery structure") {
    Battery bx(1, {bump({0.0}, 0.5, 1.0), bump({1.0}, 0.5, 1.0)});
    Battery by(2, {bump({0.0, 0.0}, 1.0, 2.0), bump({1.0, 1.0}, 1.0, 2.0),
                   bump({-1.0, 0.0}, 0.5, 1.5)});
    const Battery tensor = tensor_battery(bx, by);
    CHECK(tensor.members.size() == 6);
    CHECK(tensor.domain_dim == 3);

    const Vec p{0.25, 0.5, -0.25};
    const Vec x{0.25};
    const Vec y{0.5, -0.25};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const TestFunction& member = tensor.members[i * 3 + j];
            CHECK(member(p) ==
                  doctest::Approx(bx.members[i](x) * by.members[j](y)).epsilon(1e-15));
        }
    }
}

TEST_CASE("tensor members factor integrals over product measures") {
    Rng rng(9007);
    Battery bx(1, {bump({0.0}, 1.0, 2.0)});
    Battery by(1, {bump({0.5}, 0.5, 1.5)});
    const Battery tensor = tensor_battery(bx, by);
    for (int trial = 0; trial < 30; ++trial) {
        const DiscreteMeasure mu = testing::random_measure(rng, 1, 10, 2.0);
        const DiscreteMeasure nu = testing::random_measure(rng, 1, 10, 2.0);
        // Fubini oracle: iterated sums of the factored integrand.
        const double lhs = integrate(product(mu, nu), tensor.members[0]);
        const double rhs = integrate(mu, bx.members[0]) * integrate(nu, by.members[0]);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("battery manifests hash deterministically") {
    Battery a(1, {bump({0.0}, 1.0, 2.0), truncated_linear({1.0}, 5)});
    Battery b(1, {bump({0.0}, 1.0, 2.0), truncated_linear({1.0}, 5)});
    Battery c(1, {bump({0.0}, 1.0, 2.1), truncated_linear({1.0}, 5)});
    CHECK(battery_hash(a) == battery_hash(b));
    CHECK(battery_hash(a) != battery_hash(c));
}

} // TEST_SUITE
