#pragma once

#include <vector>

#include "ym/measure.hpp"
#include "ym/test_functions.hpp"
#include "ym/young.hpp"

namespace ym {

/// Weighted atom on a product space, keeping the (x, y) coordinate split.
struct GraphAtom {
    Vec x;
    Vec y;
    double w = 0.0;
};

/// Finite atomic measure on X x Y. Canonical form: atoms lex-sorted by
/// (x, y) with exact duplicates merged and zero weights dropped.
class GraphMeasure {
public:
    GraphMeasure(int x_dim, int y_dim, std::vector<GraphAtom> atoms);

    int x_dim() const { return x_dim_; }
    int y_dim() const { return y_dim_; }
    const std::vector<GraphAtom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    double total_mass() const;

    /// Flattened view on R^{x_dim + y_dim}; the coordinate split is lost.
    DiscreteMeasure as_measure() const;

    friend bool operator==(const GraphMeasure& a, const GraphMeasure& b);

private:
    int x_dim_;
    int y_dim_;
    std::vector<GraphAtom> atoms_;
};

/// The measure on X x Y induced by a Young function: atoms
/// (x_j, y_jl, base_weight_j * fiber_weight_jl).
GraphMeasure build(const YoungFunction& f);

struct Disintegration {
    DiscreteMeasure base;
    YoungFunction young;
};

/// Recovers the base marginal and the fiber family: atoms are grouped by
/// exact x bit-pattern, slices normalized into probability fibers.
/// Zero-mass slices cannot occur (zero weights are dropped on
/// construction), so the result is exactly unique. Throws on zero mass.
Disintegration disintegrate(const GraphMeasure& gamma);

/// Disintegration with fuzzy grouping: x values within radius of an
/// accepted representative (greedy, lexicographic scan) share a slice.
/// Changes semantics relative to exact grouping and is therefore a
/// separate operation.
Disintegration disintegrate_clustered(const GraphMeasure& gamma, double radius);

/// Projection of the mass onto X.
DiscreteMeasure marginal_x(const GraphMeasure& gamma);

/// Sum of w * psi(x, y) over atoms; psi is any callable (Vec, Vec) -> double.
template <class F>
double integrate_graph(const GraphMeasure& gamma, F&& psi) {
    KahanSum sum;
    for (const GraphAtom& a : gamma.atoms()) sum.add(a.w * psi(a.x, a.y));
    return sum.value();
}

/// TestFunction overload on the concatenated space.
double integrate_graph(const GraphMeasure& gamma, const TestFunction& psi);

/// Closed ball in the X coordinate.
struct Ball {
    Vec center;
    double radius = 0.0;
};

struct TightnessRow {
    double s = 0.0;
    double excess = 0.0; // max over the sequence of mass in K x {|y| > s}
};

struct TightnessProfile {
    std::vector<TightnessRow> rows;
    double sup_mass = 0.0; // max over the sequence of mass in K x Y
    double tolerance = 0.0;
    bool tight = false; // excess at the largest radius within tolerance
};

/// Diagnostic for the compactness hypothesis: for each radius s, the
/// worst-case mass the sequence leaves outside K x B(0, s). The excess is
/// nonincreasing in s; the verdict is taken at the largest radius.
TightnessProfile tightness_profile(const std::vector<GraphMeasure>& sequence,
                                   const Ball& k_ball, const std::vector<double>& radii,
                                   double tolerance = 1e-3);

/// Atom count, positions bitwise, weights within w_rtol.
bool approx_equal(const GraphMeasure& a, const GraphMeasure& b, double w_rtol);

} // namespace ym
