#include "ym/young.hpp"

#include <algorithm>
#include <cmath>

#include "ym/transport.hpp"

namespace ym {

YoungFunction::YoungFunction(int carrier_dim, int fiber_dim, std::vector<Site> sites)
    : carrier_dim_(carrier_dim), fiber_dim_(fiber_dim), sites_(std::move(sites)) {
    if (carrier_dim_ <= 0 || fiber_dim_ <= 0)
        throw InvalidInputError("carrier and fiber dimensions must be positive");
    for (const Site& s : sites_) {
        if (static_cast<int>(s.x.size()) != carrier_dim_)
            throw DimensionMismatchError("site dimension does not match carrier");
        if (!is_finite(s.x)) throw InvalidInputError("site position must be finite");
        if (!std::isfinite(s.weight) || s.weight < 0.0)
            throw InvalidInputError("site weight must be finite and nonnegative");
        if (s.fiber.dim() != fiber_dim_)
            throw DimensionMismatchError("fiber dimension does not match declared fiber space");
    }
    std::sort(sites_.begin(), sites_.end(),
              [](const Site& a, const Site& b) { return lex_less(a.x, b.x); });
    for (std::size_t i = 1; i < sites_.size(); ++i) {
        if (sites_[i].x == sites_[i - 1].x)
            throw InvalidInputError("site positions must be pairwise distinct");
    }
}

DiscreteMeasure YoungFunction::base() const {
    std::vector<Atom> atoms;
    atoms.reserve(sites_.size());
    for (const Site& s : sites_) atoms.push_back({s.x, s.weight});
    return DiscreteMeasure(carrier_dim_, std::move(atoms));
}

YoungFunction from_function(int carrier_dim, int fiber_dim,
                            const std::vector<std::pair<Vec, double>>& sites,
                            const std::function<Vec(const Vec&)>& g) {
    std::vector<Site> out;
    out.reserve(sites.size());
    for (const auto& [x, w] : sites) {
        Vec value = g(x);
        if (static_cast<int>(value.size()) != fiber_dim)
            throw DimensionMismatchError("value dimension does not match fiber space");
        if (!is_finite(value))
            throw InvalidInputError("function undefined (non-finite) at a site");
        out.push_back({x, w, dirac(value)});
    }
    return YoungFunction(carrier_dim, fiber_dim, std::move(out));
}

YoungFunction from_q_valued(int carrier_dim, int fiber_dim,
                            const std::vector<std::pair<Vec, double>>& sites,
                            const std::vector<std::function<Vec(const Vec&)>>& branches,
                            QConvention convention) {
    if (branches.empty()) throw InvalidInputError("branch list must be nonempty");
    const double q = static_cast<double>(branches.size());
    std::vector<Site> out;
    out.reserve(sites.size());
    for (const auto& [x, w] : sites) {
        std::vector<Atom> fiber_atoms;
        fiber_atoms.reserve(branches.size());
        for (const auto& branch : branches) {
            Vec value = branch(x);
            if (static_cast<int>(value.size()) != fiber_dim)
                throw DimensionMismatchError("branch value dimension does not match fiber space");
            if (!is_finite(value))
                throw InvalidInputError("branch undefined (non-finite) at a site");
            fiber_atoms.push_back({std::move(value), 1.0 / q});
        }
        DiscreteMeasure fiber = coalesce(DiscreteMeasure(fiber_dim, std::move(fiber_atoms)), 0.0);
        const double weight = convention == QConvention::ScaledBase ? w * q : w;
        out.push_back({x, weight, ProbabilityMeasure(std::move(fiber))});
    }
    return YoungFunction(carrier_dim, fiber_dim, std::move(out));
}

YoungFunction pushforward(const YoungFunction& f, int new_fiber_dim,
                          const std::function<Vec(const Vec&)>& h) {
    std::vector<Site> out;
    out.reserve(f.size());
    for (const Site& s : f.sites()) {
        DiscreteMeasure moved = pushforward(s.fiber.measure(), new_fiber_dim, h);
        out.push_back({s.x, s.weight, ProbabilityMeasure(std::move(moved))});
    }
    return YoungFunction(f.carrier_dim(), new_fiber_dim, std::move(out));
}

YoungFunction product(const YoungFunction& f, const YoungFunction& g) {
    if (!same_carrier(f, g))
        throw CarrierMismatchError("product requires identical carriers");
    std::vector<Site> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Site& a = f.sites()[i];
        const Site& b = g.sites()[i];
        DiscreteMeasure prod = product(a.fiber.measure(), b.fiber.measure());
        out.push_back({a.x, a.weight, ProbabilityMeasure(std::move(prod))});
    }
    return YoungFunction(f.carrier_dim(), f.fiber_dim() + g.fiber_dim(), std::move(out));
}

YoungFunction convolve(const YoungFunction& f, const YoungFunction& g) {
    if (f.fiber_dim() != g.fiber_dim())
        throw DimensionMismatchError("convolution requires equal fiber dimensions");
    if (!same_carrier(f, g))
        throw CarrierMismatchError("convolution requires identical carriers");
    std::vector<Site> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Site& a = f.sites()[i];
        const Site& b = g.sites()[i];
        out.push_back({a.x, a.weight, convolve(a.fiber, b.fiber)});
    }
    return YoungFunction(f.carrier_dim(), f.fiber_dim(), std::move(out));
}

double lipschitz_bound(const YoungFunction& f) {
    return lipschitz_bound(f, [](const Vec& a, const Vec& b) { return dist(a, b); });
}

double lipschitz_bound(const YoungFunction& f,
                       const std::function<double(const Vec&, const Vec&)>& rho) {
    if (f.size() < 2)
        throw InvalidInputError("Lipschitz bound requires at least two sites");
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const double separation = rho(f.sites()[i].x, f.sites()[j].x);
            if (separation <= 0.0)
                throw InvalidInputError("carrier pseudo-distance vanishes on a site pair");
            const double d = w1_exact(f.sites()[i].fiber, f.sites()[j].fiber).distance;
            best = std::max(best, d / separation);
        }
    }
    return best;
}

bool same_carrier(const YoungFunction& f, const YoungFunction& g, double tol) {
    if (f.carrier_dim() != g.carrier_dim() || f.size() != g.size()) return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.sites()[i].x != g.sites()[i].x) return false;
        if (std::fabs(f.sites()[i].weight - g.sites()[i].weight) > tol) return false;
    }
    return true;
}

bool approx_equal(const YoungFunction& f, const YoungFunction& g, double w_rtol) {
    if (f.carrier_dim() != g.carrier_dim() || f.fiber_dim() != g.fiber_dim() ||
        f.size() != g.size())
        return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Site& a = f.sites()[i];
        const Site& b = g.sites()[i];
        if (a.x != b.x) return false;
        const double scale = std::max(1.0, std::max(std::fabs(a.weight), std::fabs(b.weight)));
        if (std::fabs(a.weight - b.weight) > w_rtol * scale) return false;
        if (!approx_equal(a.fiber.measure(), b.fiber.measure(), w_rtol)) return false;
    }
    return true;
}

} // namespace ym
