#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ym/measure.hpp"

namespace ym {

/// Carrier point with its base weight and probability fiber.
struct Site {
    Vec x;
    double weight = 0.0;
    ProbabilityMeasure fiber;
};

/// Measure-valued function on a weighted discrete carrier: each site of
/// the base measure carries a probability measure over the fiber space.
/// Sites are stored lex-sorted with pairwise distinct positions.
class YoungFunction {
public:
    YoungFunction(int carrier_dim, int fiber_dim, std::vector<Site> sites);

    int carrier_dim() const { return carrier_dim_; }
    int fiber_dim() const { return fiber_dim_; }
    const std::vector<Site>& sites() const { return sites_; }
    std::size_t size() const { return sites_.size(); }

    /// The base measure (carrier points with their weights).
    DiscreteMeasure base() const;

private:
    int carrier_dim_;
    int fiber_dim_;
    std::vector<Site> sites_;
};

/// Whether the base convention multiplies weights by the branch count.
/// ProbabilityFibers keeps the given base weights with probability
/// fibers (the default); ScaledBase multiplies base weights by Q.
enum class QConvention { ProbabilityFibers, ScaledBase };

/// Single-valued case: fiber at x is the unit mass at g(x).
YoungFunction from_function(int carrier_dim, int fiber_dim,
                            const std::vector<std::pair<Vec, double>>& sites,
                            const std::function<Vec(const Vec&)>& g);

/// Q branches: fiber at x averages the unit masses at branch_i(x),
/// merging coinciding branch values.
YoungFunction from_q_valued(int carrier_dim, int fiber_dim,
                            const std::vector<std::pair<Vec, double>>& sites,
                            const std::vector<std::function<Vec(const Vec&)>>& branches,
                            QConvention convention = QConvention::ProbabilityFibers);

/// Fiberwise pushforward; the base is unchanged.
YoungFunction pushforward(const YoungFunction& f, int new_fiber_dim,
                          const std::function<Vec(const Vec&)>& h);

/// Fiberwise Cartesian product. Requires identical carriers.
YoungFunction product(const YoungFunction& f, const YoungFunction& g);

/// Fiberwise convolution. Requires identical carriers and fiber spaces.
YoungFunction convolve(const YoungFunction& f, const YoungFunction& g);

/// Max over site pairs of w1(f(x), f(y)) / rho(x, y) with rho the
/// Euclidean carrier distance by default. Requires >= 2 sites.
double lipschitz_bound(const YoungFunction& f);
double lipschitz_bound(const YoungFunction& f,
                       const std::function<double(const Vec&, const Vec&)>& rho);

/// Same carrier points bitwise with base weights within tol.
bool same_carrier(const YoungFunction& f, const YoungFunction& g, double tol = 1e-12);

/// Site positions and fiber atom positions bitwise-equal; base and fiber
/// weights within w_rtol.
bool approx_equal(const YoungFunction& f, const YoungFunction& g, double w_rtol);

} // namespace ym
