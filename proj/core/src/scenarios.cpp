#include <cmath>

#include "ym/convergence.hpp"

namespace ym {

namespace {

// Uniform midpoint grid on [0, 1] with n atoms.
ProbabilityMeasure uniform_midpoints(int n) {
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        atoms.push_back({{(static_cast<double>(j) + 0.5) / n}, 1.0 / n});
    }
    return normalize(DiscreteMeasure(1, std::move(atoms)));
}

ProbabilityMeasure half_half_pm1() {
    return ProbabilityMeasure(DiscreteMeasure(1, {{{-1.0}, 0.5}, {{1.0}, 0.5}}));
}

// Battery on fiber values around +-1: tells the two points apart and
// sees total fiber mass.
Battery value_battery() {
    std::vector<TestFunction> members;
    members.push_back(bump({1.0}, 0.5, 1.5));
    members.push_back(bump({-1.0}, 0.5, 1.5));
    members.push_back(bump({0.0}, 1.5, 2.5));
    return Battery(1, std::move(members));
}

// Battery on the two-dimensional carrier of the parallel-lines family.
// The off-axis members respond at first order to the line heights.
Battery carrier_battery_2d() {
    std::vector<TestFunction> members;
    members.push_back(bump({0.5, 0.3}, 0.2, 0.9));
    members.push_back(bump({0.3, -0.2}, 0.3, 1.0));
    members.push_back(bump({0.7, 0.25}, 0.25, 0.85));
    members.push_back(bump({0.5, 0.0}, 0.6, 1.6));
    return Battery(2, std::move(members));
}

// Battery on flattened 2x2 projection matrices, centered at the
// projection onto the horizontal axis.
Battery plane_battery_2d() {
    std::vector<TestFunction> members;
    members.push_back(bump({1.0, 0.0, 0.0, 0.0}, 0.5, 1.5));
    members.push_back(bump({0.0, 0.0, 0.0, 0.0}, 2.5, 3.5));
    return Battery(4, std::move(members));
}

PolylineVarifold horizontal_segment(double height, double multiplicity) {
    return PolylineVarifold({{0.0, height}, {1.0, height}}, {multiplicity}, false);
}

YoungFunction young_on_lines(int grid_n, double height, double base_weight,
                             const ProbabilityMeasure& upper_fiber,
                             const ProbabilityMeasure& lower_fiber) {
    std::vector<Site> sites;
    sites.reserve(2 * static_cast<std::size_t>(grid_n));
    for (int j = 0; j < grid_n; ++j) {
        const double x1 = (static_cast<double>(j) + 0.5) / grid_n;
        sites.push_back({{x1, height}, base_weight, upper_fiber});
        if (height != 0.0) sites.push_back({{x1, -height}, base_weight, lower_fiber});
    }
    return YoungFunction(2, 1, std::move(sites));
}

} // namespace

YoungFunction parallel_lines_young(int step, int grid_n) {
    if (step < 1 || grid_n < 1)
        throw InvalidInputError("parallel lines requires step >= 1 and grid >= 1");
    const double h = 1.0 / (2.0 * step);
    return young_on_lines(grid_n, h, 1.0 / grid_n, dirac({1.0}), dirac({-1.0}));
}

YoungFunction parallel_lines_limit(int grid_n) {
    return young_on_lines(grid_n, 0.0, 2.0 / grid_n, half_half_pm1(), half_half_pm1());
}

PairsScenario scenario_parallel_lines(int grid_n) {
    const Battery x_batt = carrier_battery_2d();
    const Battery p_batt = plane_battery_2d();
    const Battery y_batt = value_battery();

    PairsScenario sc{
        /*name=*/"parallel_lines",
        /*step=*/
        [grid_n](int i) -> PairStep {
            const double h = 1.0 / (2.0 * i);
            const PolylineVarifold upper = horizontal_segment(h, 1.0);
            const PolylineVarifold lower = horizontal_segment(-h, 1.0);
            DiscreteVarifold v = merge(from_polyline(upper, grid_n), from_polyline(lower, grid_n));
            return PairStep{std::move(v), parallel_lines_young(i, grid_n),
                            first_variation_mass(upper) + first_variation_mass(lower)};
        },
        /*limit=*/
        PairStep{from_polyline(horizontal_segment(0.0, 2.0), grid_n),
                 parallel_lines_limit(grid_n),
                 first_variation_mass(horizontal_segment(0.0, 2.0))},
        /*varifold_battery=*/tensor_battery(x_batt, p_batt),
        /*lifted_battery=*/tensor_battery(tensor_battery(x_batt, p_batt), y_batt),
        /*base_battery=*/tensor_battery(x_batt, y_batt),
        /*tightness_ball=*/Ball{{0.5, 0.0}, 2.0},
        /*tightness_radii=*/{0.5, 1.0, 2.0, 4.0},
    };
    return sc;
}

PairsScenario scenario_escaping_fiber(int grid_n) {
    PairsScenario sc = scenario_parallel_lines(grid_n);
    sc.name = "escaping_fiber";
    sc.step = [grid_n](int i) -> PairStep {
        const double h = 1.0 / (2.0 * i);
        const PolylineVarifold upper = horizontal_segment(h, 1.0);
        const PolylineVarifold lower = horizontal_segment(-h, 1.0);
        DiscreteVarifold v = merge(from_polyline(upper, grid_n), from_polyline(lower, grid_n));
        // Fiber escape: all values sit at height i.
        const ProbabilityMeasure fiber = dirac({static_cast<double>(i)});
        YoungFunction young = young_on_lines(grid_n, h, 1.0 / grid_n, fiber, fiber);
        return PairStep{std::move(v), std::move(young),
                        first_variation_mass(upper) + first_variation_mass(lower)};
    };
    return sc;
}

PairsScenario scenario_constant_pair(int grid_n) {
    PairsScenario sc = scenario_parallel_lines(grid_n);
    sc.name = "constant_pair";
    const PairStep fixed = sc.limit;
    sc.step = [fixed](int) -> PairStep { return fixed; };
    return sc;
}

YoungScenario scenario_oscillation(int grid_n) {
    if (grid_n < 2) throw InvalidInputError("oscillation requires grid >= 2");

    Battery x_batt(1, {bump({0.3}, 0.1, 0.4), bump({0.62}, 0.15, 0.5), bump({0.5}, 0.35, 0.9)});
    const ProbabilityMeasure limit_fiber = half_half_pm1();

    std::vector<Site> limit_sites;
    limit_sites.reserve(static_cast<std::size_t>(grid_n));
    for (int j = 0; j < grid_n; ++j) {
        const double x = (static_cast<double>(j) + 0.5) / grid_n;
        limit_sites.push_back({{x}, 1.0 / grid_n, limit_fiber});
    }

    YoungScenario sc{
        /*name=*/"oscillation",
        /*step=*/
        [grid_n](int i) -> YoungFunction {
            // The sampling grid refines with the frequency (8 cells per
            // half period), keeping each block of 8 midpoints exactly
            // sign-balanced; a frequency commensurate with a fixed grid
            // would alias to an unbalanced sign pattern.
            const int n = std::max(grid_n, 8 * i);
            std::vector<Site> sites;
            sites.reserve(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                const double x = (static_cast<double>(j) + 0.5) / n;
                const double s = std::sin(2.0 * 3.14159265358979323846 * i * x);
                sites.push_back({{x}, 1.0 / n, dirac({s >= 0.0 ? 1.0 : -1.0})});
            }
            return YoungFunction(1, 1, std::move(sites));
        },
        /*limit=*/YoungFunction(1, 1, std::move(limit_sites)),
        /*battery=*/tensor_battery(x_batt, value_battery()),
    };
    return sc;
}

MeasureScenario scenario_escaping_mass(const Vec& v, const ProbabilityMeasure& mu0) {
    if (norm(v) == 0.0) throw InvalidInputError("escape direction must be nonzero");
    if (static_cast<int>(v.size()) != mu0.dim())
        throw DimensionMismatchError("escape direction dimension does not match the measure");

    // Fine-grained battery: members integrate only a small part of mu0,
    // so the weak deviation (1/i) * integral decays through the scenario
    // tolerance within a few hundred steps.
    std::vector<TestFunction> members;
    for (int j = 0; j <= 10; ++j)
        members.push_back(bump({static_cast<double>(j) / 10.0}, 0.03, 0.08));
    Battery battery(1, std::move(members));

    MeasureScenario sc{
        /*name=*/"escaping_mass",
        /*dim=*/mu0.dim(),
        /*step=*/
        [v, mu0](int i) -> ProbabilityMeasure {
            std::vector<Atom> atoms;
            atoms.reserve(mu0.size() + 1);
            const double keep = 1.0 - 1.0 / i;
            for (const Atom& a : mu0.atoms()) atoms.push_back({a.x, keep * a.w});
            Vec far(v);
            for (double& c : far) c *= static_cast<double>(i);
            atoms.push_back({std::move(far), 1.0 / i});
            return ProbabilityMeasure(
                coalesce(DiscreteMeasure(mu0.dim(), std::move(atoms)), 0.0));
        },
        /*limit=*/mu0,
        /*battery=*/std::move(battery),
    };
    return sc;
}

MeasureScenario scenario_escaping_mass_default() {
    return scenario_escaping_mass({1.0}, uniform_midpoints(20));
}

MeasureScenario scenario_truncation() {
    // Finite proxy of a slow-tailed measure: atoms at k = 1..30 with
    // weights proportional to 1/k^2.
    std::vector<Atom> atoms;
    for (int k = 1; k <= 30; ++k)
        atoms.push_back({{static_cast<double>(k)}, 1.0 / (static_cast<double>(k) * k)});
    const DiscreteMeasure proxy(1, std::move(atoms));
    const ProbabilityMeasure limit = normalize(proxy);

    Battery battery(1, {bump({1.0}, 0.3, 0.8), bump({2.0}, 0.3, 0.8), bump({3.0}, 0.3, 0.8),
                        bump({5.0}, 0.5, 1.4), bump({10.0}, 2.0, 6.0)});

    MeasureScenario sc{
        /*name=*/"truncation",
        /*dim=*/1,
        /*step=*/
        [proxy](int i) -> ProbabilityMeasure {
            return normalize(restrict_to_ball(proxy, static_cast<double>(i)));
        },
        /*limit=*/limit,
        /*battery=*/std::move(battery),
    };
    return sc;
}

MeasureScenario scenario_atom_floor_merge(double eps) {
    if (!(eps > 0.0) || eps > 0.5)
        throw InvalidInputError("merge scenario requires 0 < eps <= 1/2");
    Battery battery(1, {scale(bump({0.15}, 0.05, 0.25), 1.0 / 9.375),
                        scale(bump({1.0}, 0.3, 1.3), 1.0 / 1.875)});
    MeasureScenario sc{
        /*name=*/"atom_floor",
        /*dim=*/1,
        /*step=*/
        [](int i) -> ProbabilityMeasure {
            return ProbabilityMeasure(
                DiscreteMeasure(1, {{{0.0}, 0.5}, {{1.0 / i}, 0.5}}));
        },
        /*limit=*/dirac({0.0}),
        /*battery=*/std::move(battery),
    };
    return sc;
}

} // namespace ym
