#include "ym/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ym {

double weak_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const Battery& battery) {
    if (mu.dim() != nu.dim())
        throw DimensionMismatchError("weak distance requires equal dimensions");
    if (battery.members.empty())
        throw InvalidBatteryError("weak distance requires a nonempty battery");
    if (battery.domain_dim != mu.dim())
        throw DimensionMismatchError("battery dimension does not match the measures");
    double best = 0.0;
    for (const TestFunction& f : battery.members)
        best = std::max(best, std::fabs(integrate(mu, f) - integrate(nu, f)));
    return best;
}

double fitted_decay_rate(const std::vector<StepRecord>& steps,
                         const std::function<double(const StepRecord&)>& value) {
    const std::size_t from = steps.size() / 2;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = from; i < steps.size(); ++i) {
        const double v = value(steps[i]);
        if (!(v > 0.0) || steps[i].step <= 0) continue;
        const double lx = std::log(static_cast<double>(steps[i].step));
        const double ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / denom;
}

ConvergenceReport p1_convergence_check(const std::vector<ProbabilityMeasure>& sequence,
                                       const ProbabilityMeasure& limit,
                                       const Battery& battery, double tolerance) {
    ConvergenceReport report;
    report.tolerance = tolerance;
    report.battery_hash = battery_hash(battery);
    const double limit_moment = first_moment(limit.measure());
    report.steps.reserve(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        StepRecord rec;
        rec.step = static_cast<int>(i) + 1;
        rec.weak_deviation = weak_distance(sequence[i].measure(), limit.measure(), battery);
        rec.moment_gap = std::fabs(first_moment(sequence[i].measure()) - limit_moment);
        rec.w1 = w1_exact(sequence[i], limit).distance;
        report.steps.push_back(rec);
    }
    const StepRecord& last = report.steps.back();
    const bool weak_ok = last.weak_deviation <= tolerance;
    const bool moment_ok = last.moment_gap <= tolerance;
    const bool d_ok = last.w1 <= tolerance;
    report.verdicts["weak"] = weak_ok;
    report.verdicts["moment"] = moment_ok;
    report.verdicts["d"] = d_ok;
    report.verdicts["agree"] = d_ok == (weak_ok && moment_ok);
    report.fitted_rate =
        fitted_decay_rate(report.steps, [](const StepRecord& r) { return r.weak_deviation; });
    return report;
}

ConvergenceReport scenario_atom_floor(double eps,
                                      const std::vector<ProbabilityMeasure>& sequence,
                                      const ProbabilityMeasure& limit,
                                      const Battery& battery, double tolerance) {
    if (!(eps > 0.0)) throw InvalidInputError("atom floor must be positive");
    for (const ProbabilityMeasure& mu : sequence) {
        for (const Atom& a : mu.atoms()) {
            if (a.w < eps)
                throw InvalidInputError("sequence member violates the atom floor");
        }
    }
    for (const Atom& a : limit.atoms()) {
        if (a.w < eps) throw InvalidInputError("limit violates the atom floor");
    }
    ConvergenceReport report = p1_convergence_check(sequence, limit, battery, tolerance);
    // On the atom-floor class the weak topology already controls the
    // first moment, so the two verdicts must agree.
    report.verdicts["floor_agree"] =
        report.verdicts["weak"] == report.verdicts["moment"];
    return report;
}

PairsReport pairs_compactness_experiment(const PairsScenario& scenario, int steps,
                                         double tolerance) {
    if (steps < 1) throw InvalidInputError("pairs experiment requires at least one step");

    PairsReport report;
    report.tolerance = tolerance;
    report.battery_hash = battery_hash(scenario.lifted_battery);

    std::vector<PairStep> data;
    data.reserve(static_cast<std::size_t>(steps));
    std::vector<GraphMeasure> base_graphs;
    base_graphs.reserve(static_cast<std::size_t>(steps));
    for (int i = 1; i <= steps; ++i) {
        data.push_back(scenario.step(i));
        base_graphs.push_back(build(data.back().young));
    }

    for (const PairStep& s : data) {
        report.sup_mass_plus_first_variation =
            std::max(report.sup_mass_plus_first_variation,
                     s.varifold.total_mass() + s.first_variation);
    }

    report.tightness = tightness_profile(base_graphs, scenario.tightness_ball,
                                         scenario.tightness_radii, tolerance);
    report.hypothesis_ok = report.tightness.tight &&
                           std::isfinite(report.sup_mass_plus_first_variation);

    if (!report.hypothesis_ok) {
        report.status = "hypothesis_violation";
        return report;
    }

    const DiscreteMeasure limit_varifold = scenario.limit.varifold.as_measure();
    const GraphMeasure limit_lifted =
        build(lift_young(scenario.limit.varifold, scenario.limit.young));
    const GraphMeasure limit_base = build(scenario.limit.young);

    report.steps.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        PairsStepRecord rec;
        rec.step = static_cast<int>(i) + 1;
        rec.varifold_deviation = weak_distance(data[i].varifold.as_measure(), limit_varifold,
                                               scenario.varifold_battery);
        rec.lifted_deviation =
            weak_distance(build(lift_young(data[i].varifold, data[i].young)).as_measure(),
                          limit_lifted.as_measure(), scenario.lifted_battery);
        rec.base_deviation = weak_distance(base_graphs[i].as_measure(),
                                           limit_base.as_measure(), scenario.base_battery);
        report.steps.push_back(rec);
    }

    auto as_records = [&report](double PairsStepRecord::*field) {
        std::vector<StepRecord> recs;
        recs.reserve(report.steps.size());
        for (const PairsStepRecord& r : report.steps)
            recs.push_back({r.step, r.*field, 0.0, 0.0});
        return recs;
    };
    auto grade = [&](double PairsStepRecord::*field, double& rate) {
        const std::vector<StepRecord> recs = as_records(field);
        rate = fitted_decay_rate(recs, [](const StepRecord& r) { return r.weak_deviation; });
        const double first_dev = recs.front().weak_deviation;
        const double last_dev = recs.back().weak_deviation;
        if (last_dev <= tolerance) return true;
        return rate <= -0.5 && last_dev < first_dev;
    };
    report.varifold_converged =
        grade(&PairsStepRecord::varifold_deviation, report.varifold_rate);
    report.lifted_converged = grade(&PairsStepRecord::lifted_deviation, report.lifted_rate);
    report.base_converged = grade(&PairsStepRecord::base_deviation, report.base_rate);
    const bool all = *report.varifold_converged && *report.lifted_converged &&
                     *report.base_converged;
    report.status = all ? "converged" : "convergence_failure";
    return report;
}

GraphMeasure cluster_limit_estimate(const std::vector<GraphMeasure>& tail, double radius) {
    if (tail.empty())
        throw InvalidInputError("cluster estimate requires a nonempty tail");
    if (!(radius > 0.0)) throw InvalidInputError("cluster radius must be positive");
    const double scale = 1.0 / static_cast<double>(tail.size());
    std::vector<Atom> atoms;
    for (const GraphMeasure& gamma : tail) {
        if (gamma.x_dim() != tail.front().x_dim() || gamma.y_dim() != tail.front().y_dim())
            throw DimensionMismatchError("tail graph measures must share dimensions");
        for (const GraphAtom& a : gamma.atoms())
            atoms.push_back({concat(a.x, a.y), a.w * scale});
    }
    const int x_dim = tail.front().x_dim();
    const int y_dim = tail.front().y_dim();
    DiscreteMeasure averaged =
        coalesce(DiscreteMeasure(x_dim + y_dim, std::move(atoms)), radius);
    std::vector<GraphAtom> out;
    out.reserve(averaged.size());
    for (const Atom& a : averaged.atoms()) {
        Vec x(a.x.begin(), a.x.begin() + x_dim);
        Vec y(a.x.begin() + x_dim, a.x.end());
        out.push_back({std::move(x), std::move(y), a.w});
    }
    return GraphMeasure(x_dim, y_dim, std::move(out));
}

} // namespace ym
