#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ym/measure.hpp"
#include "ym/test_functions.hpp"

namespace ym {

/// Primal witness of an optimal transport: nonzero flows between source
/// and target atoms. Row sums match source weights and column sums match
/// target weights within 1e-9 of the total mass; cost is the flow-weighted
/// sum of Euclidean ground distances.
struct TransportPlan {
    struct Entry {
        std::size_t source = 0;
        std::size_t target = 0;
        double flow = 0.0;
        double cost_contribution = 0.0;
    };
    std::vector<Entry> entries;
    double cost = 0.0;
};

struct W1Result {
    double distance = 0.0;
    TransportPlan plan;
};

/// Optimal transport cost between probability measures under Euclidean
/// ground cost, with an optimal plan. Exact at desk scale: weights are
/// apportioned to a common integer grid inside the solver (largest
/// remainder, 2^48 units) and routed by successive shortest paths with
/// node potentials; costs stay in floating point throughout.
///
/// On probability measures with finitely many atoms this equals the
/// Lipschitz-dual distance (sup over 1-Lipschitz functions of the
/// integral difference); dual_lower_bound approaches it from below.
W1Result w1_exact(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

/// Closed-form 1D distance: the integral of |F_mu - F_nu| over the merged
/// sorted atom positions. Requires dim == 1.
double w1_1d(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

/// Best lower bound from a battery of declared-1-Lipschitz functions:
/// max over members (and gamma = 0) of the integral difference. Throws
/// InvalidBatteryError if any member declares lip_bound > 1.
double dual_lower_bound(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                        const Battery& battery);

} // namespace ym
