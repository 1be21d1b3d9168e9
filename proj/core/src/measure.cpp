#include "ym/measure.hpp"

#include <algorithm>
#include <cmath>

namespace ym {

namespace {

void validate_atoms(int dim, const std::vector<Atom>& atoms) {
    if (dim <= 0) throw InvalidInputError("measure dimension must be positive");
    for (const Atom& a : atoms) {
        if (static_cast<int>(a.x.size()) != dim)
            throw DimensionMismatchError("atom dimension does not match measure dimension");
        if (!is_finite(a.x))
            throw InvalidInputError("atom position has non-finite coordinate");
        if (!std::isfinite(a.w) || a.w < 0.0)
            throw InvalidInputError("atom weight must be finite and nonnegative");
    }
}

void sort_atoms(std::vector<Atom>& atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        if (a.x != b.x) return lex_less(a.x, b.x);
        return a.w < b.w;
    });
}

} // namespace

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
    validate_atoms(dim, atoms);
    atoms_.reserve(atoms.size());
    for (Atom& a : atoms) {
        if (a.w > 0.0) atoms_.push_back(std::move(a));
    }
    sort_atoms(atoms_);
}

double DiscreteMeasure::total_mass() const {
    KahanSum sum;
    for (const Atom& a : atoms_) sum.add(a.w);
    return sum.value();
}

bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.dim_ != b.dim_ || a.atoms_.size() != b.atoms_.size()) return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i) {
        if (a.atoms_[i].x != b.atoms_[i].x || a.atoms_[i].w != b.atoms_[i].w) return false;
    }
    return true;
}

ProbabilityMeasure::ProbabilityMeasure(DiscreteMeasure m) : measure_(std::move(m)) {
    const double mass = measure_.total_mass();
    if (std::fabs(mass - 1.0) > 1e-12)
        throw DegenerateMeasureError("probability measure requires total mass 1 within 1e-12");
}

ProbabilityMeasure dirac(const Vec& y) {
    if (!is_finite(y)) throw InvalidInputError("dirac point has non-finite coordinate");
    if (y.empty()) throw InvalidInputError("dirac point must have positive dimension");
    return ProbabilityMeasure(DiscreteMeasure(static_cast<int>(y.size()), {{y, 1.0}}));
}

double total_mass(const DiscreteMeasure& mu) { return mu.total_mass(); }

ProbabilityMeasure normalize(const DiscreteMeasure& mu) {
    const double mass = mu.total_mass();
    if (mass <= 0.0)
        throw DegenerateMeasureError("cannot normalize a measure of nonpositive mass");
    std::vector<Atom> atoms = mu.atoms();
    for (Atom& a : atoms) a.w /= mass;
    return ProbabilityMeasure(DiscreteMeasure(mu.dim(), std::move(atoms)));
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, int out_dim,
                            const std::function<Vec(const Vec&)>& h) {
    std::vector<Atom> atoms;
    atoms.reserve(mu.size());
    for (const Atom& a : mu.atoms()) {
        Vec image = h(a.x);
        if (static_cast<int>(image.size()) != out_dim)
            throw DimensionMismatchError("pushforward image dimension mismatch");
        if (!is_finite(image))
            throw InvalidInputError("pushforward map undefined (non-finite) at an atom");
        atoms.push_back({std::move(image), a.w});
    }
    return coalesce(DiscreteMeasure(out_dim, std::move(atoms)), 0.0);
}

DiscreteMeasure product(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (mu.is_empty() || nu.is_empty())
        throw DegenerateMeasureError("product requires nonempty factors");
    std::vector<Atom> atoms;
    atoms.reserve(mu.size() * nu.size());
    for (const Atom& a : mu.atoms()) {
        for (const Atom& b : nu.atoms()) {
            atoms.push_back({concat(a.x, b.x), a.w * b.w});
        }
    }
    return DiscreteMeasure(mu.dim() + nu.dim(), std::move(atoms));
}

ProbabilityMeasure convolve(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
    if (mu.dim() != nu.dim())
        throw DimensionMismatchError("convolution requires equal dimensions");
    std::vector<Atom> atoms;
    atoms.reserve(mu.size() * nu.size());
    for (const Atom& a : mu.atoms()) {
        for (const Atom& b : nu.atoms()) {
            Vec y(a.x.size());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.x[i] + b.x[i];
            atoms.push_back({std::move(y), a.w * b.w});
        }
    }
    DiscreteMeasure summed = coalesce(DiscreteMeasure(mu.dim(), std::move(atoms)), 0.0);
    return ProbabilityMeasure(std::move(summed));
}

DiscreteMeasure restrict_to_ball(const DiscreteMeasure& mu, double s) {
    if (!(s >= 0.0)) throw InvalidInputError("restriction radius must be nonnegative");
    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms()) {
        if (norm(a.x) <= s) atoms.push_back(a);
    }
    return DiscreteMeasure(mu.dim(), std::move(atoms));
}

double first_moment(const DiscreteMeasure& mu) {
    KahanSum sum;
    for (const Atom& a : mu.atoms()) sum.add(a.w * norm(a.x));
    return sum.value();
}

DiscreteMeasure coalesce(const DiscreteMeasure& mu, double tol) {
    if (!(tol >= 0.0)) throw InvalidInputError("coalesce tolerance must be nonnegative");
    std::vector<Atom> merged;
    merged.reserve(mu.size());
    // Input is already lex-sorted; scan in order and attach each atom to
    // the first accepted representative within tol.
    for (const Atom& a : mu.atoms()) {
        bool attached = false;
        if (tol == 0.0) {
            if (!merged.empty() && merged.back().x == a.x) {
                merged.back().w += a.w;
                attached = true;
            }
        } else {
            for (Atom& rep : merged) {
                if (dist(rep.x, a.x) <= tol) {
                    rep.w += a.w;
                    attached = true;
                    break;
                }
            }
        }
        if (!attached) merged.push_back(a);
    }
    return DiscreteMeasure(mu.dim(), std::move(merged));
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double w_rtol) {
    if (a.dim() != b.dim() || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Atom& p = a.atoms()[i];
        const Atom& q = b.atoms()[i];
        if (p.x != q.x) return false;
        const double scale = std::max(1.0, std::max(std::fabs(p.w), std::fabs(q.w)));
        if (std::fabs(p.w - q.w) > w_rtol * scale) return false;
    }
    return true;
}

} // namespace ym
