#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ym/errors.hpp"
#include "ym/vec.hpp"

namespace ym {

/// Weighted point mass in R^k.
struct Atom {
    Vec x;
    double w = 0.0;
};

/// Finite atomic measure on R^k, the carrier for every Radon measure the
/// library handles. Values are immutable; atoms are stored in canonical
/// form: lexicographically sorted by position with zero-weight atoms
/// dropped, so equality of measures is equality of atom lists.
class DiscreteMeasure {
public:
    /// Validates weights (>= 0, finite) and positions (finite, matching
    /// dim) and canonicalizes. Duplicate positions are kept; coalesce
    /// merges them.
    DiscreteMeasure(int dim, std::vector<Atom> atoms);

    static DiscreteMeasure empty(int dim) { return DiscreteMeasure(dim, {}); }

    int dim() const { return dim_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool is_empty() const { return atoms_.empty(); }

    double total_mass() const;

    friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b);

private:
    int dim_;
    std::vector<Atom> atoms_;
};

/// A DiscreteMeasure whose total mass is 1 within 1e-12, checked at
/// construction. Behaves as a read-only view of the underlying measure.
class ProbabilityMeasure {
public:
    explicit ProbabilityMeasure(DiscreteMeasure m);

    const DiscreteMeasure& measure() const { return measure_; }
    operator const DiscreteMeasure&() const { return measure_; }

    int dim() const { return measure_.dim(); }
    const std::vector<Atom>& atoms() const { return measure_.atoms(); }
    std::size_t size() const { return measure_.size(); }

    friend bool operator==(const ProbabilityMeasure& a, const ProbabilityMeasure& b) {
        return a.measure_ == b.measure_;
    }

private:
    DiscreteMeasure measure_;
};

/// Unit point mass at y.
ProbabilityMeasure dirac(const Vec& y);

double total_mass(const DiscreteMeasure& mu);

/// Scales weights by 1/total_mass. Throws DegenerateMeasureError on
/// zero-mass input.
ProbabilityMeasure normalize(const DiscreteMeasure& mu);

/// Sum of w_j * f(y_j); f is any callable Vec -> double.
template <class F>
double integrate(const DiscreteMeasure& mu, F&& f) {
    KahanSum sum;
    for (const Atom& a : mu.atoms()) sum.add(a.w * f(a.x));
    return sum.value();
}

/// Image measure under h: R^k -> R^out_dim; atoms mapped and coalesced
/// exactly, total mass preserved. Non-finite images raise
/// InvalidInputError.
DiscreteMeasure pushforward(const DiscreteMeasure& mu, int out_dim,
                            const std::function<Vec(const Vec&)>& h);

/// Cartesian product on R^{k+l}: all atom pairs with multiplied weights.
DiscreteMeasure product(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Pushforward of the product under addition: atoms y+z with weights
/// w_y * w_z, coalesced. Commutative.
ProbabilityMeasure convolve(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

/// Keeps atoms with |y| <= s.
DiscreteMeasure restrict_to_ball(const DiscreteMeasure& mu, double s);

/// Sum of w_j * |y_j|.
double first_moment(const DiscreteMeasure& mu);

/// Merges atoms within Euclidean distance tol of an accepted
/// representative, scanning in lexicographic order; tol = 0 merges
/// bit-identical positions only. Weights are summed; the representative
/// position is the lexicographically first member of its cluster.
DiscreteMeasure coalesce(const DiscreteMeasure& mu, double tol);

/// Same atom count and bitwise-equal positions, weights within w_rtol
/// relative (or w_rtol absolute for weights below 1).
bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double w_rtol);

} // namespace ym
