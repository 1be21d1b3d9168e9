#include "ym/varifold.hpp"

#include <algorithm>
#include <cmath>

namespace ym {

Plane Plane::from_projection(int n, int m, std::vector<double> proj) {
    if (n <= 0 || m <= 0 || m > n)
        throw InvalidInputError("plane requires 0 < m <= n");
    if (static_cast<int>(proj.size()) != n * n)
        throw DimensionMismatchError("projection matrix must be n x n");
    for (double v : proj) {
        if (!std::isfinite(v)) throw InvalidInputError("projection entries must be finite");
    }
    double trace = 0.0;
    for (int i = 0; i < n; ++i) {
        trace += proj[i * n + i];
        for (int j = 0; j < n; ++j) {
            if (std::fabs(proj[i * n + j] - proj[j * n + i]) > 1e-9)
                throw InvalidInputError("projection matrix must be symmetric");
            double pp = 0.0;
            for (int k = 0; k < n; ++k) pp += proj[i * n + k] * proj[k * n + j];
            if (std::fabs(pp - proj[i * n + j]) > 1e-9)
                throw InvalidInputError("projection matrix must be idempotent");
        }
    }
    if (std::fabs(trace - static_cast<double>(m)) > 1e-6)
        throw InvalidInputError("projection trace must equal the plane dimension");
    return Plane(n, m, std::move(proj));
}

Plane Plane::from_span(int n, const std::vector<Vec>& spanning) {
    if (spanning.empty() || static_cast<int>(spanning.size()) > n)
        throw InvalidInputError("span requires between 1 and n vectors");
    std::vector<Vec> basis;
    for (Vec v : spanning) {
        if (static_cast<int>(v.size()) != n)
            throw DimensionMismatchError("spanning vector has wrong dimension");
        // Modified Gram-Schmidt with one re-orthogonalization pass.
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& q : basis) {
                const double c = dot(v, q);
                for (int i = 0; i < n; ++i) v[i] -= c * q[i];
            }
        }
        const double len = norm(v);
        if (len < 1e-10)
            throw InvalidInputError("spanning vectors are linearly dependent");
        for (double& c : v) c /= len;
        basis.push_back(std::move(v));
    }
    const int m = static_cast<int>(basis.size());
    std::vector<double> proj(static_cast<std::size_t>(n) * n, 0.0);
    for (const Vec& q : basis) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) proj[i * n + j] += q[i] * q[j];
    }
    return Plane(n, m, std::move(proj));
}

Plane Plane::line_along(const Vec& direction) {
    if (norm(direction) < 1e-12)
        throw InvalidInputError("line direction must be nonzero");
    return from_span(static_cast<int>(direction.size()), {direction});
}

namespace {

bool varifold_atom_less(const VarifoldAtom& a, const VarifoldAtom& b) {
    if (a.x != b.x) return lex_less(a.x, b.x);
    if (a.plane.projection() != b.plane.projection())
        return lex_less(a.plane.projection(), b.plane.projection());
    return a.weight < b.weight;
}

} // namespace

DiscreteVarifold::DiscreteVarifold(int n, int m, std::vector<VarifoldAtom> atoms)
    : n_(n), m_(m) {
    if (n_ <= 0 || m_ <= 0 || m_ > n_)
        throw InvalidInputError("varifold requires 0 < m <= n");
    for (const VarifoldAtom& a : atoms) {
        if (static_cast<int>(a.x.size()) != n_)
            throw DimensionMismatchError("varifold atom position has wrong dimension");
        if (!is_finite(a.x)) throw InvalidInputError("varifold atom position must be finite");
        if (a.plane.ambient_dim() != n_ || a.plane.plane_dim() != m_)
            throw DimensionMismatchError("varifold atom plane has wrong dimensions");
        if (!std::isfinite(a.weight) || a.weight < 0.0)
            throw InvalidInputError("varifold atom weight must be finite and nonnegative");
    }
    std::sort(atoms.begin(), atoms.end(), varifold_atom_less);
    atoms_.reserve(atoms.size());
    for (VarifoldAtom& a : atoms) {
        if (a.weight == 0.0) continue;
        if (!atoms_.empty() && atoms_.back().x == a.x &&
            atoms_.back().plane.projection() == a.plane.projection())
            atoms_.back().weight += a.weight;
        else
            atoms_.push_back(std::move(a));
    }
}

double DiscreteVarifold::total_mass() const {
    KahanSum sum;
    for (const VarifoldAtom& a : atoms_) sum.add(a.weight);
    return sum.value();
}

GraphMeasure DiscreteVarifold::as_graph_measure() const {
    std::vector<GraphAtom> atoms;
    atoms.reserve(atoms_.size());
    for (const VarifoldAtom& a : atoms_)
        atoms.push_back({a.x, a.plane.as_vector(), a.weight});
    return GraphMeasure(n_, n_ * n_, std::move(atoms));
}

DiscreteMeasure DiscreteVarifold::as_measure() const {
    std::vector<Atom> atoms;
    atoms.reserve(atoms_.size());
    for (const VarifoldAtom& a : atoms_)
        atoms.push_back({concat(a.x, a.plane.as_vector()), a.weight});
    return DiscreteMeasure(n_ + n_ * n_, std::move(atoms));
}

DiscreteVarifold merge(const DiscreteVarifold& a, const DiscreteVarifold& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.plane_dim() != b.plane_dim())
        throw DimensionMismatchError("varifold merge requires matching dimensions");
    std::vector<VarifoldAtom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    return DiscreteVarifold(a.ambient_dim(), a.plane_dim(), std::move(atoms));
}

DiscreteMeasure weight_measure(const DiscreteVarifold& v) {
    std::vector<Atom> atoms;
    atoms.reserve(v.size());
    for (const VarifoldAtom& a : v.atoms()) atoms.push_back({a.x, a.weight});
    return coalesce(DiscreteMeasure(v.ambient_dim(), std::move(atoms)), 0.0);
}

bool rectifiable_mode(const DiscreteVarifold& v) {
    const auto& atoms = v.atoms();
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        if (atoms[i].x == atoms[i - 1].x) return false;
    }
    return true;
}

YoungFunction tangent_young(const DiscreteVarifold& v) {
    if (v.size() == 0)
        throw DegenerateMeasureError("tangent disintegration requires positive mass");
    return disintegrate(v.as_graph_measure()).young;
}

YoungFunction lift_young(const DiscreteVarifold& v, const YoungFunction& f) {
    const DiscreteMeasure base = weight_measure(v);
    if (f.carrier_dim() != v.ambient_dim() || f.size() != base.size())
        throw CarrierMismatchError("Young function carrier does not match the weight measure");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.sites()[i].x != base.atoms()[i].x)
            throw CarrierMismatchError("Young function carrier does not match the weight measure");
    }
    // Carrier points are (x, plane) pairs; each inherits the fiber at x.
    std::vector<Site> sites;
    sites.reserve(v.size());
    for (const VarifoldAtom& a : v.atoms()) {
        const Site* at_x = nullptr;
        for (const Site& s : f.sites()) {
            if (s.x == a.x) {
                at_x = &s;
                break;
            }
        }
        if (at_x == nullptr)
            throw CarrierMismatchError("no fiber for a varifold atom position");
        sites.push_back({concat(a.x, a.plane.as_vector()), a.weight, at_x->fiber});
    }
    const int n = v.ambient_dim();
    return YoungFunction(n + n * n, f.fiber_dim(), std::move(sites));
}

PolylineVarifold::PolylineVarifold(std::vector<Vec> vertices,
                                   std::vector<double> multiplicities, bool closed)
    : vertices_(std::move(vertices)), multiplicities_(std::move(multiplicities)), closed_(closed) {
    if (vertices_.size() < 2)
        throw InvalidInputError("polyline requires at least two vertices");
    const std::size_t dim = vertices_[0].size();
    for (const Vec& v : vertices_) {
        if (v.size() != dim) throw DimensionMismatchError("polyline vertices must share a dimension");
        if (!is_finite(v)) throw InvalidInputError("polyline vertex must be finite");
    }
    const std::size_t segments = closed_ ? vertices_.size() : vertices_.size() - 1;
    if (multiplicities_.size() != segments)
        throw InvalidInputError("one multiplicity per segment required");
    for (double m : multiplicities_) {
        if (!std::isfinite(m) || m <= 0.0)
            throw InvalidInputError("multiplicities must be positive");
    }
    for (std::size_t s = 0; s < segments; ++s) {
        const Vec& a = vertices_[s];
        const Vec& b = vertices_[(s + 1) % vertices_.size()];
        if (dist(a, b) == 0.0)
            throw InvalidInputError("consecutive polyline vertices must be distinct");
    }
}

double PolylineVarifold::mass() const {
    KahanSum sum;
    for (std::size_t s = 0; s < segment_count(); ++s) {
        const Vec& a = vertices_[s];
        const Vec& b = vertices_[(s + 1) % vertices_.size()];
        sum.add(multiplicities_[s] * dist(a, b));
    }
    return sum.value();
}

DiscreteVarifold from_polyline(const PolylineVarifold& p, int atoms_per_segment) {
    if (atoms_per_segment < 1)
        throw InvalidInputError("atoms_per_segment must be at least 1");
    const int n = static_cast<int>(p.vertices()[0].size());
    std::vector<VarifoldAtom> atoms;
    atoms.reserve(p.segment_count() * static_cast<std::size_t>(atoms_per_segment));
    for (std::size_t s = 0; s < p.segment_count(); ++s) {
        const Vec& a = p.vertices()[s];
        const Vec& b = p.vertices()[(s + 1) % p.vertices().size()];
        const double len = dist(a, b);
        Vec direction(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) direction[i] = (b[i] - a[i]) / len;
        const Plane plane = Plane::line_along(direction);
        const double sub = len / atoms_per_segment;
        for (int k = 0; k < atoms_per_segment; ++k) {
            const double t = (static_cast<double>(k) + 0.5) / atoms_per_segment;
            Vec point(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) point[i] = a[i] + t * (b[i] - a[i]);
            atoms.push_back({std::move(point), plane, p.multiplicities()[s] * sub});
        }
    }
    return DiscreteVarifold(n, 1, std::move(atoms));
}

double first_variation_mass(const PolylineVarifold& p) {
    const std::size_t count = p.vertices().size();
    const auto& verts = p.vertices();
    const auto& mult = p.multiplicities();

    auto unit_tangent = [&](std::size_t from, std::size_t to) {
        Vec t(verts[from].size());
        const double len = dist(verts[from], verts[to]);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = (verts[to][i] - verts[from][i]) / len;
        return t;
    };

    KahanSum sum;
    if (p.closed()) {
        for (std::size_t v = 0; v < count; ++v) {
            const std::size_t prev = (v + count - 1) % count;
            const std::size_t next = (v + 1) % count;
            // Tangents of the two adjacent segments pointing away from v,
            // weighted by their segment multiplicities.
            const Vec t_back = unit_tangent(v, prev);
            const Vec t_fwd = unit_tangent(v, next);
            Vec turn(t_back.size());
            for (std::size_t i = 0; i < turn.size(); ++i)
                turn[i] = mult[prev] * t_back[i] + mult[v] * t_fwd[i];
            sum.add(norm(turn));
        }
    } else {
        sum.add(mult.front());
        sum.add(mult.back());
        for (std::size_t v = 1; v + 1 < count; ++v) {
            const Vec t_back = unit_tangent(v, v - 1);
            const Vec t_fwd = unit_tangent(v, v + 1);
            Vec turn(t_back.size());
            for (std::size_t i = 0; i < turn.size(); ++i)
                turn[i] = mult[v - 1] * t_back[i] + mult[v] * t_fwd[i];
            sum.add(norm(turn));
        }
    }
    return sum.value();
}

} // namespace ym
