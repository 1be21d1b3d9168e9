#pragma once

#include <vector>

#include "ym/graph.hpp"
#include "ym/measure.hpp"
#include "ym/young.hpp"

namespace ym {

/// m-dimensional linear subspace of R^n stored as its n x n orthogonal
/// projection matrix (row-major). Projection matrices embed the plane
/// space into R^{n*n}, so plane-valued fibers reuse the measure machinery;
/// the Frobenius distance between projections is equivalent to the usual
/// metric on the space of m-planes.
class Plane {
public:
    /// Validates: symmetric and idempotent within 1e-9, trace within 1e-6
    /// of m.
    static Plane from_projection(int n, int m, std::vector<double> proj_row_major);

    /// Orthonormalizes the spanning vectors (throws on rank deficiency)
    /// and forms the projection onto their span.
    static Plane from_span(int n, const std::vector<Vec>& spanning);

    /// Line through the origin in the given direction.
    static Plane line_along(const Vec& direction);

    int ambient_dim() const { return n_; }
    int plane_dim() const { return m_; }
    const std::vector<double>& projection() const { return proj_; }

    /// Flattened projection matrix; the fiber embedding into R^{n*n}.
    Vec as_vector() const { return proj_; }

    friend bool operator==(const Plane& a, const Plane& b) {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.proj_ == b.proj_;
    }

private:
    Plane(int n, int m, std::vector<double> proj) : n_(n), m_(m), proj_(std::move(proj)) {}

    int n_ = 0;
    int m_ = 0;
    std::vector<double> proj_;
};

struct VarifoldAtom {
    Vec x;
    Plane plane;
    double weight = 0.0;
};

/// Discrete m-varifold in R^n: weighted atoms on position x plane space.
/// Atoms are canonicalized: sorted by (x, projection), exact duplicates
/// merged, zero weights dropped.
class DiscreteVarifold {
public:
    DiscreteVarifold(int n, int m, std::vector<VarifoldAtom> atoms);

    int ambient_dim() const { return n_; }
    int plane_dim() const { return m_; }
    const std::vector<VarifoldAtom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_mass() const;

    /// View as a measure on X x R^{n*n} keeping the coordinate split.
    GraphMeasure as_graph_measure() const;

    /// Flattened view on R^{n + n*n} for battery-based convergence tests.
    DiscreteMeasure as_measure() const;

private:
    int n_;
    int m_;
    std::vector<VarifoldAtom> atoms_;
};

/// Concatenation of atom lists (canonicalized).
DiscreteVarifold merge(const DiscreteVarifold& a, const DiscreteVarifold& b);

/// The position marginal ||V||.
DiscreteMeasure weight_measure(const DiscreteVarifold& v);

/// At most one plane per distinct position.
bool rectifiable_mode(const DiscreteVarifold& v);

/// Disintegration of V over its positions: a Young function with carrier
/// in R^n and probability fibers on flattened projection matrices.
YoungFunction tangent_young(const DiscreteVarifold& v);

/// Precomposition with the position projection: assigns f(x) to every
/// (x, plane) atom. f's carrier must equal weight_measure(v)'s atom set.
YoungFunction lift_young(const DiscreteVarifold& v, const YoungFunction& f);

/// Piecewise-linear curve with per-segment multiplicities.
class PolylineVarifold {
public:
    PolylineVarifold(std::vector<Vec> vertices, std::vector<double> multiplicities, bool closed);

    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<double>& multiplicities() const { return multiplicities_; }
    bool closed() const { return closed_; }
    std::size_t segment_count() const {
        return closed_ ? vertices_.size() : vertices_.size() - 1;
    }

    /// Sum of multiplicity * length over segments.
    double mass() const;

private:
    std::vector<Vec> vertices_;
    std::vector<double> multiplicities_;
    bool closed_;
};

/// Quadrature discretization: per segment, atoms at midpoints of equal
/// subdivisions with weight multiplicity * sublength and plane along the
/// segment direction.
DiscreteVarifold from_polyline(const PolylineVarifold& p, int atoms_per_segment);

/// Total first-variation mass of the polyline: at each interior (and, for
/// closed curves, every) vertex the norm of the multiplicity-weighted sum
/// of the unit tangents pointing away from the vertex; open endpoints
/// contribute multiplicity times their single unit tangent.
double first_variation_mass(const PolylineVarifold& p);

} // namespace ym
