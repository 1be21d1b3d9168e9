#include "ym/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace ym {

namespace {

// Common supply/demand grid. 2^48 units keep apportionment error per atom
// below 4e-15 while leaving int64 headroom for flows and sums.
constexpr std::int64_t kGridUnits = std::int64_t(1) << 48;

// Largest-remainder apportionment of probability weights to integers
// summing exactly to kGridUnits.
std::vector<std::int64_t> apportion(const std::vector<Atom>& atoms) {
    const std::size_t n = atoms.size();
    std::vector<std::int64_t> units(n);
    std::vector<std::pair<double, std::size_t>> remainders(n);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double exact = atoms[i].w * static_cast<double>(kGridUnits);
        double floor_part = std::floor(exact);
        units[i] = static_cast<std::int64_t>(floor_part);
        assigned += units[i];
        remainders[i] = {exact - floor_part, i};
    }
    std::int64_t leftover = kGridUnits - assigned;
    // Distribute leftovers to the largest remainders; ties break on index
    // for determinism. A mass slightly above 1 can leave a deficit
    // instead, which is taken back from the smallest remainders.
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return a.second < b.second;
              });
    for (std::size_t k = 0; leftover > 0; ++k) {
        units[remainders[k % remainders.size()].second] += 1;
        --leftover;
    }
    for (std::size_t k = remainders.size(); leftover < 0;) {
        k = (k == 0) ? remainders.size() - 1 : k - 1;
        std::int64_t& u = units[remainders[k].second];
        if (u > 0) {
            u -= 1;
            ++leftover;
        }
    }
    return units;
}

// Successive shortest paths with node potentials on the complete bipartite
// transportation graph. Nodes 0..n-1 are sources, n..n+m-1 sinks. Dense
// Dijkstra per phase; reduced costs are clamped at zero so floating-point
// drift cannot produce negative arc lengths.
class TransportSolver {
public:
    TransportSolver(const std::vector<Atom>& src, const std::vector<Atom>& dst)
        : src_(src), dst_(dst), n_(src.size()), m_(dst.size()) {
        cost_.resize(n_ * m_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < m_; ++j)
                cost_[i * m_ + j] = dist(src_[i].x, dst_[j].x);
        supply_ = apportion(src_);
        demand_ = apportion(dst_);
        potential_.assign(n_ + m_, 0.0);
        flow_sources_.resize(m_);
    }

    TransportPlan solve() {
        std::size_t next_source = 0;
        while (true) {
            while (next_source < n_ && supply_[next_source] == 0) ++next_source;
            if (next_source == n_) break;
            augment_from(next_source);
        }
        return extract_plan();
    }

private:
    double arc_cost(std::size_t i, std::size_t j) const { return cost_[i * m_ + j]; }

    std::int64_t& flow(std::size_t i, std::size_t j) { return flow_map_[i * m_ + j]; }

    void augment_from(std::size_t s) {
        const double inf = std::numeric_limits<double>::infinity();
        const std::size_t nodes = n_ + m_;
        dist_.assign(nodes, inf);
        parent_.assign(nodes, -1);
        visited_.assign(nodes, false);
        dist_[s] = 0.0;

        std::size_t best_sink = m_;
        double best_sink_dist = inf;
        for (;;) {
            // Dense extraction of the closest unvisited node.
            std::size_t u = nodes;
            double du = inf;
            for (std::size_t v = 0; v < nodes; ++v) {
                if (!visited_[v] && dist_[v] < du) {
                    du = dist_[v];
                    u = v;
                }
            }
            if (u == nodes || du >= best_sink_dist) break;
            visited_[u] = true;

            if (u < n_) {
                // Source: forward arcs to every sink.
                const double pu = potential_[u];
                for (std::size_t j = 0; j < m_; ++j) {
                    const std::size_t v = n_ + j;
                    if (visited_[v]) continue;
                    const double rc = std::max(0.0, arc_cost(u, j) + pu - potential_[v]);
                    const double cand = du + rc;
                    if (cand < dist_[v]) {
                        dist_[v] = cand;
                        parent_[v] = static_cast<std::ptrdiff_t>(u);
                        if (demand_[j] > 0 && cand < best_sink_dist) {
                            best_sink_dist = cand;
                            best_sink = j;
                        }
                    }
                }
            } else {
                // Sink: residual arcs back along positive flows.
                const std::size_t j = u - n_;
                if (demand_[j] > 0 && du < best_sink_dist) {
                    best_sink_dist = du;
                    best_sink = j;
                }
                auto& sources = flow_sources_[j];
                for (std::size_t k = 0; k < sources.size();) {
                    const std::size_t i = sources[k];
                    auto it = flow_map_.find(i * m_ + j);
                    if (it == flow_map_.end() || it->second == 0) {
                        sources[k] = sources.back();
                        sources.pop_back();
                        continue;
                    }
                    ++k;
                    if (visited_[i]) continue;
                    const double rc =
                        std::max(0.0, -arc_cost(i, j) + potential_[u] - potential_[i]);
                    const double cand = du + rc;
                    if (cand < dist_[i]) {
                        dist_[i] = cand;
                        parent_[i] = static_cast<std::ptrdiff_t>(u);
                    }
                }
            }
        }

        if (best_sink == m_)
            throw Error("transport solver failed to reach an active sink");

        // Re-run sink preference deterministically: among sinks at the
        // minimal distance keep the smallest index.
        for (std::size_t j = 0; j < m_; ++j) {
            if (demand_[j] > 0 && dist_[n_ + j] < best_sink_dist) {
                best_sink_dist = dist_[n_ + j];
                best_sink = j;
            }
        }

        // Bottleneck along the augmenting path.
        const std::size_t t = n_ + best_sink;
        std::int64_t bottleneck = std::min(supply_[s], demand_[best_sink]);
        for (std::size_t v = t; v != s;) {
            const std::size_t p = static_cast<std::size_t>(parent_[v]);
            if (v >= n_) {
                // forward arc p -> v
            } else {
                // residual arc (p = sink) -> v (= source): limited by flow
                bottleneck = std::min(bottleneck, flow(v, p - n_));
            }
            v = p;
        }

        // Apply the augmentation.
        for (std::size_t v = t; v != s;) {
            const std::size_t p = static_cast<std::size_t>(parent_[v]);
            if (v >= n_) {
                const std::size_t j = v - n_;
                std::int64_t& f = flow(p, j);
                if (f == 0) flow_sources_[j].push_back(p);
                f += bottleneck;
            } else {
                flow(v, p - n_) -= bottleneck;
            }
            v = p;
        }
        supply_[s] -= bottleneck;
        demand_[best_sink] -= bottleneck;

        // Potential update keeps all reduced costs nonnegative.
        for (std::size_t v = 0; v < n_ + m_; ++v)
            potential_[v] += std::min(dist_[v], best_sink_dist);
    }

    TransportPlan extract_plan() {
        TransportPlan plan;
        plan.entries.reserve(flow_map_.size());
        const double unit = 1.0 / static_cast<double>(kGridUnits);
        for (const auto& [key, f] : flow_map_) {
            if (f == 0) continue;
            const std::size_t i = key / m_;
            const std::size_t j = key % m_;
            TransportPlan::Entry e;
            e.source = i;
            e.target = j;
            e.flow = static_cast<double>(f) * unit;
            e.cost_contribution = e.flow * arc_cost(i, j);
            plan.entries.push_back(e);
        }
        std::sort(plan.entries.begin(), plan.entries.end(),
                  [](const TransportPlan::Entry& a, const TransportPlan::Entry& b) {
                      if (a.source != b.source) return a.source < b.source;
                      return a.target < b.target;
                  });
        KahanSum total;
        for (const auto& e : plan.entries) total.add(e.cost_contribution);
        plan.cost = total.value();
        return plan;
    }

    const std::vector<Atom>& src_;
    const std::vector<Atom>& dst_;
    std::size_t n_;
    std::size_t m_;
    std::vector<double> cost_;
    std::vector<std::int64_t> supply_;
    std::vector<std::int64_t> demand_;
    std::vector<double> potential_;
    std::unordered_map<std::size_t, std::int64_t> flow_map_;
    std::vector<std::vector<std::size_t>> flow_sources_;

    std::vector<double> dist_;
    std::vector<std::ptrdiff_t> parent_;
    std::vector<char> visited_;
};

} // namespace

W1Result w1_exact(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
    if (mu.dim() != nu.dim())
        throw DimensionMismatchError("transport requires equal dimensions");
    if (mu.size() == 0 || nu.size() == 0)
        throw DegenerateMeasureError("transport requires nonempty measures");

    TransportSolver solver(mu.atoms(), nu.atoms());
    W1Result result;
    result.plan = solver.solve();
    result.distance = result.plan.cost;
    return result;
}

double w1_1d(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
    if (mu.dim() != 1 || nu.dim() != 1)
        throw DimensionMismatchError("w1_1d requires one-dimensional measures");

    // Atoms are canonically sorted, so both CDFs advance monotonically.
    const auto& a = mu.atoms();
    const auto& b = nu.atoms();
    std::size_t i = 0;
    std::size_t j = 0;
    double f_mu = 0.0;
    double f_nu = 0.0;
    double prev = 0.0;
    bool have_prev = false;
    KahanSum area;
    while (i < a.size() || j < b.size()) {
        double z;
        if (j >= b.size() || (i < a.size() && a[i].x[0] <= b[j].x[0]))
            z = a[i].x[0];
        else
            z = b[j].x[0];
        if (have_prev && z > prev) area.add(std::fabs(f_mu - f_nu) * (z - prev));
        while (i < a.size() && a[i].x[0] == z) f_mu += a[i++].w;
        while (j < b.size() && b[j].x[0] == z) f_nu += b[j++].w;
        prev = z;
        have_prev = true;
    }
    return area.value();
}

double dual_lower_bound(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                        const Battery& battery) {
    if (mu.dim() != nu.dim())
        throw DimensionMismatchError("dual bound requires equal dimensions");
    for (const TestFunction& f : battery.members) {
        if (f.lip_bound() > 1.0)
            throw InvalidBatteryError("battery member declares Lipschitz bound > 1: " + f.label());
    }
    if (battery.domain_dim != mu.dim())
        throw DimensionMismatchError("battery dimension does not match the measures");
    double best = 0.0; // gamma = 0 is always admissible
    for (const TestFunction& f : battery.members) {
        best = std::max(best, integrate(mu.measure(), f) - integrate(nu.measure(), f));
    }
    return best;
}

} // namespace ym
