#pragma once

#include <vector>

#include "ym/measure.hpp"
#include "ym/rng.hpp"

namespace ym::testing {

/// Random probability measure: atom count in [1, max_atoms], positions
/// uniform in [-box, box]^dim, weights uniform in (0.1, 1) normalized.
inline ProbabilityMeasure random_probability(Rng& rng, int dim, int max_atoms,
                                             double box = 10.0) {
    const int n = rng.uniform_int(1, max_atoms);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        atoms.push_back({rng.point_in_box(dim, -box, box), rng.uniform(0.1, 1.0)});
    return normalize(DiscreteMeasure(dim, std::move(atoms)));
}

inline DiscreteMeasure random_measure(Rng& rng, int dim, int max_atoms, double box = 10.0) {
    const int n = rng.uniform_int(1, max_atoms);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        atoms.push_back({rng.point_in_box(dim, -box, box), rng.uniform(0.1, 1.0)});
    return DiscreteMeasure(dim, std::move(atoms));
}

} // namespace ym::testing
