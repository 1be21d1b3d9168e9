// Batch front end over the measure toolkit: distances, graph-measure
// construction and disintegration, tightness tables, varifold utilities,
// and the bundled convergence scenarios.
//
// Exit codes: 0 success, 2 parse failure, 3 invalid or degenerate input,
// 4 unknown scenario, 1 other errors.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ym/io.hpp"
#include "ym/runner.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitUnknownScenario = 4;

std::string print_value(double v) { return ym::io::format_double(v); }

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    ym::io::write_text_atomic(path, content);
}

int cmd_w1(const std::string& in_a, const std::string& in_b, const std::string& plan_path) {
    const ym::ProbabilityMeasure mu = [&] {
        try {
            return ym::ProbabilityMeasure(ym::io::measure_from_json(ym::io::load_json_file(in_a)));
        } catch (const ym::ParseError&) {
            throw;
        } catch (const ym::DegenerateMeasureError& e) {
            throw ym::DegenerateMeasureError(in_a + ": " + e.what());
        }
    }();
    const ym::ProbabilityMeasure nu = [&] {
        try {
            return ym::ProbabilityMeasure(ym::io::measure_from_json(ym::io::load_json_file(in_b)));
        } catch (const ym::ParseError&) {
            throw;
        } catch (const ym::DegenerateMeasureError& e) {
            throw ym::DegenerateMeasureError(in_b + ": " + e.what());
        }
    }();
    const ym::W1Result result = ym::w1_exact(mu, nu);
    if (!plan_path.empty()) write_file(plan_path, ym::io::plan_to_csv(result.plan));
    std::cout << print_value(result.distance) << "\n";
    return 0;
}

int cmd_dual(const std::string& in_a, const std::string& in_b, const std::string& battery_path) {
    const ym::ProbabilityMeasure mu(ym::io::measure_from_json(ym::io::load_json_file(in_a)));
    const ym::ProbabilityMeasure nu(ym::io::measure_from_json(ym::io::load_json_file(in_b)));
    const ym::Battery battery = ym::io::battery_from_json(ym::io::load_json_file(battery_path));
    std::cout << print_value(ym::dual_lower_bound(mu, nu, battery)) << "\n";
    return 0;
}

int cmd_build(const std::string& in, const std::string& out) {
    const ym::YoungFunction young = ym::io::young_from_json(ym::io::load_json_file(in));
    const ym::GraphMeasure graph = ym::build(young);
    write_file(out, ym::io::to_json(graph).dump(2) + "\n");
    return 0;
}

int cmd_disintegrate(const std::string& in, const std::string& out_dir) {
    const ym::GraphMeasure graph = ym::io::graph_from_json(ym::io::load_json_file(in));
    const ym::Disintegration parts = ym::disintegrate(graph);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "base.json", ym::io::to_json(parts.base).dump(2) + "\n");
    write_file(fs::path(out_dir) / "young.json", ym::io::to_json(parts.young).dump(2) + "\n");
    return 0;
}

int cmd_tightness(const std::vector<std::string>& inputs, const std::vector<double>& radii,
                  const std::vector<double>& center, double k_radius, double tol,
                  const std::string& out) {
    std::vector<ym::GraphMeasure> sequence;
    sequence.reserve(inputs.size());
    for (const std::string& path : inputs)
        sequence.push_back(ym::io::graph_from_json(ym::io::load_json_file(path)));
    ym::Vec c = center;
    if (c.empty()) c.assign(static_cast<std::size_t>(sequence.front().x_dim()), 0.0);
    const ym::TightnessProfile profile =
        ym::tightness_profile(sequence, ym::Ball{c, k_radius}, radii, tol);
    const std::string csv = ym::io::tightness_to_csv(profile);
    if (out.empty())
        std::cout << csv;
    else
        write_file(out, csv);
    return 0;
}

int cmd_scenario(const std::string& name, int steps, std::uint64_t seed, double tol,
                 const std::string& out_dir) {
    const auto& names = ym::known_scenarios();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::cerr << "unknown scenario '" << name << "'. valid names:";
        for (const std::string& n : names) std::cerr << " " << n;
        std::cerr << "\n";
        return kExitUnknownScenario;
    }
    const ym::ScenarioOutput result = ym::run_named_scenario(name, steps, seed, tol);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "report.json", result.report.dump(2) + "\n");
    write_file(fs::path(out_dir) / "table.csv", result.table_csv);
    for (const auto& [rel, content] : result.artifacts)
        write_file(fs::path(out_dir) / rel, content);
    std::cout << "wrote " << (2 + result.artifacts.size()) << " files to " << out_dir << "\n";
    return 0;
}

int cmd_varifold_mass(const std::string& in) {
    const ym::DiscreteVarifold v = ym::io::varifold_from_json(ym::io::load_json_file(in));
    std::cout << print_value(v.total_mass()) << "\n";
    return 0;
}

int cmd_varifold_first_variation(const std::string& in) {
    const ym::PolylineVarifold p = ym::io::polyline_from_json(ym::io::load_json_file(in));
    std::cout << print_value(ym::first_variation_mass(p)) << "\n";
    return 0;
}

int cmd_varifold_tangent_young(const std::string& in, const std::string& out) {
    const ym::DiscreteVarifold v = ym::io::varifold_from_json(ym::io::load_json_file(in));
    const ym::YoungFunction young = ym::tangent_young(v);
    if (out.empty())
        std::cout << ym::io::to_json(young).dump(2) << "\n";
    else
        write_file(out, ym::io::to_json(young).dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete measure toolkit: Young functions, graph measures, "
                 "optimal transport, varifolds"};
    app.require_subcommand(1);

    std::string in_a, in_b, in_single, out_path, battery_path, plan_path, scenario_name;
    std::vector<std::string> inputs;
    std::vector<double> radii, center;
    double k_radius = 1e9;
    double tol = 1e-3;
    int steps = 100;
    std::uint64_t seed = 0;

    CLI::App* w1 = app.add_subcommand("w1", "transport distance between two measure files");
    w1->add_option("a", in_a, "first measure JSON")->required();
    w1->add_option("b", in_b, "second measure JSON")->required();
    w1->add_option("--plan", plan_path, "write the optimal plan CSV here");

    CLI::App* dual = app.add_subcommand("dual", "battery dual lower bound for the distance");
    dual->add_option("a", in_a, "first measure JSON")->required();
    dual->add_option("b", in_b, "second measure JSON")->required();
    dual->add_option("--battery", battery_path, "battery manifest JSON")->required();

    CLI::App* build = app.add_subcommand("build", "graph measure of a Young function");
    build->add_option("young", in_single, "Young function JSON")->required();
    build->add_option("--out", out_path, "output graph measure JSON")->required();

    CLI::App* dis = app.add_subcommand("disintegrate", "split a graph measure into base + fibers");
    dis->add_option("graph", in_single, "graph measure JSON")->required();
    dis->add_option("--out", out_path, "output directory (base.json, young.json)")->required();

    CLI::App* tight = app.add_subcommand("tightness", "tightness table for graph measures");
    tight->add_option("graphs", inputs, "graph measure JSON files")->required();
    tight->add_option("--radii", radii, "fiber radii, comma separated")
        ->delimiter(',')
        ->required();
    tight->add_option("--center", center, "ball center in X, comma separated")->delimiter(',');
    tight->add_option("--k-radius", k_radius, "ball radius in X (default: everything)");
    tight->add_option("--tol", tol, "tightness tolerance");
    tight->add_option("--out", out_path, "output CSV (default: stdout)");

    CLI::App* scenario = app.add_subcommand("scenario", "run a bundled scenario");
    scenario->add_option("name", scenario_name, "scenario name")->required();
    scenario->add_option("--steps", steps, "number of steps");
    scenario->add_option("--seed", seed, "seed recorded in the report");
    scenario->add_option("--tol", tol, "verdict tolerance");
    scenario->add_option("--out", out_path, "output directory")->required();

    CLI::App* varifold = app.add_subcommand("varifold", "varifold utilities");
    varifold->require_subcommand(1);
    CLI::App* vmass = varifold->add_subcommand("mass", "total mass of a varifold file");
    vmass->add_option("varifold", in_single, "varifold JSON")->required();
    CLI::App* vfv = varifold->add_subcommand("first-variation",
                                             "first-variation mass of a polyline file");
    vfv->add_option("polyline", in_single, "polyline JSON")->required();
    CLI::App* vty = varifold->add_subcommand("tangent-young",
                                             "tangent-plane Young function of a varifold");
    vty->add_option("varifold", in_single, "varifold JSON")->required();
    vty->add_option("--out", out_path, "output Young function JSON (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (w1->parsed()) return cmd_w1(in_a, in_b, plan_path);
        if (dual->parsed()) return cmd_dual(in_a, in_b, battery_path);
        if (build->parsed()) return cmd_build(in_single, out_path);
        if (dis->parsed()) return cmd_disintegrate(in_single, out_path);
        if (tight->parsed())
            return cmd_tightness(inputs, radii, center, k_radius, tol, out_path);
        if (scenario->parsed()) return cmd_scenario(scenario_name, steps, seed, tol, out_path);
        if (varifold->parsed()) {
            if (vmass->parsed()) return cmd_varifold_mass(in_single);
            if (vfv->parsed()) return cmd_varifold_first_variation(in_single);
            if (vty->parsed()) return cmd_varifold_tangent_young(in_single, out_path);
        }
    } catch (const ym::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ym::DegenerateMeasureError& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ym::DimensionMismatchError& e) {
        std::cerr << "dimension mismatch: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ym::CarrierMismatchError& e) {
        std::cerr << "carrier mismatch: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ym::InvalidBatteryError& e) {
        std::cerr << "invalid battery: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ym::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
