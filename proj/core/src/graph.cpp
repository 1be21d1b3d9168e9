#include "ym/graph.hpp"

#include <algorithm>
#include <cmath>

namespace ym {

namespace {

bool graph_atom_less(const GraphAtom& a, const GraphAtom& b) {
    if (a.x != b.x) return lex_less(a.x, b.x);
    if (a.y != b.y) return lex_less(a.y, b.y);
    return a.w < b.w;
}

} // namespace

GraphMeasure::GraphMeasure(int x_dim, int y_dim, std::vector<GraphAtom> atoms)
    : x_dim_(x_dim), y_dim_(y_dim) {
    if (x_dim_ <= 0 || y_dim_ <= 0)
        throw InvalidInputError("graph measure dimensions must be positive");
    for (const GraphAtom& a : atoms) {
        if (static_cast<int>(a.x.size()) != x_dim_ || static_cast<int>(a.y.size()) != y_dim_)
            throw DimensionMismatchError("graph atom dimensions do not match");
        if (!is_finite(a.x) || !is_finite(a.y))
            throw InvalidInputError("graph atom has non-finite coordinate");
        if (!std::isfinite(a.w) || a.w < 0.0)
            throw InvalidInputError("graph atom weight must be finite and nonnegative");
    }
    std::sort(atoms.begin(), atoms.end(), graph_atom_less);
    atoms_.reserve(atoms.size());
    for (GraphAtom& a : atoms) {
        if (a.w == 0.0) continue;
        if (!atoms_.empty() && atoms_.back().x == a.x && atoms_.back().y == a.y)
            atoms_.back().w += a.w;
        else
            atoms_.push_back(std::move(a));
    }
}

double GraphMeasure::total_mass() const {
    KahanSum sum;
    for (const GraphAtom& a : atoms_) sum.add(a.w);
    return sum.value();
}

DiscreteMeasure GraphMeasure::as_measure() const {
    std::vector<Atom> atoms;
    atoms.reserve(atoms_.size());
    for (const GraphAtom& a : atoms_) atoms.push_back({concat(a.x, a.y), a.w});
    return DiscreteMeasure(x_dim_ + y_dim_, std::move(atoms));
}

bool operator==(const GraphMeasure& a, const GraphMeasure& b) {
    if (a.x_dim_ != b.x_dim_ || a.y_dim_ != b.y_dim_ || a.atoms_.size() != b.atoms_.size())
        return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i) {
        if (a.atoms_[i].x != b.atoms_[i].x || a.atoms_[i].y != b.atoms_[i].y ||
            a.atoms_[i].w != b.atoms_[i].w)
            return false;
    }
    return true;
}

GraphMeasure build(const YoungFunction& f) {
    std::vector<GraphAtom> atoms;
    for (const Site& s : f.sites()) {
        for (const Atom& a : s.fiber.atoms()) {
            atoms.push_back({s.x, a.x, s.weight * a.w});
        }
    }
    return GraphMeasure(f.carrier_dim(), f.fiber_dim(), std::move(atoms));
}

namespace {

Disintegration disintegrate_groups(const GraphMeasure& gamma,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& groups) {
    std::vector<Site> sites;
    sites.reserve(groups.size());
    const auto& atoms = gamma.atoms();
    for (const auto& [begin, end] : groups) {
        KahanSum slice_mass;
        for (std::size_t k = begin; k < end; ++k) slice_mass.add(atoms[k].w);
        const double mass = slice_mass.value();
        std::vector<Atom> fiber_atoms;
        fiber_atoms.reserve(end - begin);
        for (std::size_t k = begin; k < end; ++k)
            fiber_atoms.push_back({atoms[k].y, atoms[k].w / mass});
        DiscreteMeasure fiber =
            coalesce(DiscreteMeasure(gamma.y_dim(), std::move(fiber_atoms)), 0.0);
        sites.push_back({atoms[begin].x, mass, ProbabilityMeasure(std::move(fiber))});
    }
    YoungFunction young(gamma.x_dim(), gamma.y_dim(), std::move(sites));
    return Disintegration{young.base(), std::move(young)};
}

} // namespace

Disintegration disintegrate(const GraphMeasure& gamma) {
    if (gamma.size() == 0)
        throw DegenerateMeasureError("cannot disintegrate a zero-mass measure");
    // Atoms are sorted by (x, y), so slices are contiguous runs of equal x.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    const auto& atoms = gamma.atoms();
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= atoms.size(); ++i) {
        if (i == atoms.size() || atoms[i].x != atoms[begin].x) {
            groups.emplace_back(begin, i);
            begin = i;
        }
    }
    return disintegrate_groups(gamma, groups);
}

Disintegration disintegrate_clustered(const GraphMeasure& gamma, double radius) {
    if (!(radius > 0.0))
        throw InvalidInputError("cluster radius must be positive");
    if (gamma.size() == 0)
        throw DegenerateMeasureError("cannot disintegrate a zero-mass measure");

    // Greedy clustering of x keys in lexicographic order, then regroup
    // atoms by representative.
    const auto& atoms = gamma.atoms();
    std::vector<Vec> reps;
    std::vector<std::size_t> assignment(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        bool found = false;
        for (std::size_t r = 0; r < reps.size(); ++r) {
            if (dist(reps[r], atoms[i].x) <= radius) {
                assignment[i] = r;
                found = true;
                break;
            }
        }
        if (!found) {
            assignment[i] = reps.size();
            reps.push_back(atoms[i].x);
        }
    }

    std::vector<Site> sites;
    sites.reserve(reps.size());
    for (std::size_t r = 0; r < reps.size(); ++r) {
        KahanSum slice_mass;
        std::vector<Atom> fiber_atoms;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (assignment[i] == r) slice_mass.add(atoms[i].w);
        }
        const double mass = slice_mass.value();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (assignment[i] == r) fiber_atoms.push_back({atoms[i].y, atoms[i].w / mass});
        }
        DiscreteMeasure fiber =
            coalesce(DiscreteMeasure(gamma.y_dim(), std::move(fiber_atoms)), 0.0);
        sites.push_back({reps[r], mass, ProbabilityMeasure(std::move(fiber))});
    }
    YoungFunction young(gamma.x_dim(), gamma.y_dim(), std::move(sites));
    return Disintegration{young.base(), std::move(young)};
}

DiscreteMeasure marginal_x(const GraphMeasure& gamma) {
    std::vector<Atom> atoms;
    atoms.reserve(gamma.size());
    for (const GraphAtom& a : gamma.atoms()) atoms.push_back({a.x, a.w});
    return coalesce(DiscreteMeasure(gamma.x_dim(), std::move(atoms)), 0.0);
}

double integrate_graph(const GraphMeasure& gamma, const TestFunction& psi) {
    if (psi.dim() != gamma.x_dim() + gamma.y_dim())
        throw DimensionMismatchError("test function dimension does not match the product space");
    KahanSum sum;
    for (const GraphAtom& a : gamma.atoms()) sum.add(a.w * psi(concat(a.x, a.y)));
    return sum.value();
}

TightnessProfile tightness_profile(const std::vector<GraphMeasure>& sequence,
                                   const Ball& k_ball, const std::vector<double>& radii,
                                   double tolerance) {
    if (sequence.empty())
        throw InvalidInputError("tightness profile requires a nonempty sequence");
    if (radii.empty())
        throw InvalidInputError("tightness profile requires at least one radius");
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] > radii[i - 1]))
            throw InvalidInputError("radii must be strictly increasing");
    }

    TightnessProfile profile;
    profile.tolerance = tolerance;
    profile.rows.reserve(radii.size());
    for (double s : radii) {
        double worst = 0.0;
        for (const GraphMeasure& gamma : sequence) {
            KahanSum excess;
            for (const GraphAtom& a : gamma.atoms()) {
                if (dist(a.x, k_ball.center) <= k_ball.radius && norm(a.y) > s)
                    excess.add(a.w);
            }
            worst = std::max(worst, excess.value());
        }
        profile.rows.push_back({s, worst});
    }
    for (const GraphMeasure& gamma : sequence) {
        KahanSum in_k;
        for (const GraphAtom& a : gamma.atoms()) {
            if (dist(a.x, k_ball.center) <= k_ball.radius) in_k.add(a.w);
        }
        profile.sup_mass = std::max(profile.sup_mass, in_k.value());
    }
    profile.tight = profile.rows.back().excess <= tolerance;
    return profile;
}

bool approx_equal(const GraphMeasure& a, const GraphMeasure& b, double w_rtol) {
    if (a.x_dim() != b.x_dim() || a.y_dim() != b.y_dim() || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const GraphAtom& p = a.atoms()[i];
        const GraphAtom& q = b.atoms()[i];
        if (p.x != q.x || p.y != q.y) return false;
        const double scale = std::max(1.0, std::max(std::fabs(p.w), std::fabs(q.w)));
        if (std::fabs(p.w - q.w) > w_rtol * scale) return false;
    }
    return true;
}

} // namespace ym
