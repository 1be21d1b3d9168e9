#include "ym/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ym::io {

namespace {

double finite_number(const json& j, const char* what) {
    if (!j.is_number())
        throw ParseError(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ParseError(std::string(what) + " must be finite");
    return v;
}

Vec vec_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw ParseError(std::string(what) + " must be a nonempty array");
    Vec v;
    v.reserve(j.size());
    for (const json& c : j) v.push_back(finite_number(c, what));
    return v;
}

double weight_from_json(const json& j) {
    const double w = finite_number(j, "weight");
    if (w < 0.0) throw ParseError("weight must be nonnegative");
    return w;
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw ParseError(std::string("missing field '") + name + "'");
    return j.at(name);
}

} // namespace

json to_json(const DiscreteMeasure& mu) {
    json atoms = json::array();
    for (const Atom& a : mu.atoms()) atoms.push_back({{"x", a.x}, {"w", a.w}});
    return json{{"dim", mu.dim()}, {"atoms", std::move(atoms)}};
}

DiscreteMeasure measure_from_json(const json& j) {
    const int dim = static_cast<int>(finite_number(field(j, "dim"), "dim"));
    const json& atoms_json = field(j, "atoms");
    if (!atoms_json.is_array()) throw ParseError("atoms must be an array");
    std::vector<Atom> atoms;
    atoms.reserve(atoms_json.size());
    for (const json& a : atoms_json) {
        Vec x = vec_from_json(field(a, "x"), "atom position");
        if (static_cast<int>(x.size()) != dim)
            throw ParseError("atom position does not match the declared dimension");
        atoms.push_back({std::move(x), weight_from_json(field(a, "w"))});
    }
    return DiscreteMeasure(dim, std::move(atoms));
}

json to_json(const YoungFunction& f) {
    json sites = json::array();
    for (const Site& s : f.sites()) {
        sites.push_back({{"x", s.x}, {"w", s.weight}, {"fiber", to_json(s.fiber.measure())}});
    }
    return json{{"carrier_dim", f.carrier_dim()},
                {"fiber_dim", f.fiber_dim()},
                {"sites", std::move(sites)}};
}

YoungFunction young_from_json(const json& j) {
    const int carrier_dim =
        static_cast<int>(finite_number(field(j, "carrier_dim"), "carrier_dim"));
    const int fiber_dim = static_cast<int>(finite_number(field(j, "fiber_dim"), "fiber_dim"));
    const json& sites_json = field(j, "sites");
    if (!sites_json.is_array()) throw ParseError("sites must be an array");
    std::vector<Site> sites;
    sites.reserve(sites_json.size());
    for (const json& s : sites_json) {
        Vec x = vec_from_json(field(s, "x"), "site position");
        const double w = weight_from_json(field(s, "w"));
        DiscreteMeasure fiber = measure_from_json(field(s, "fiber"));
        try {
            sites.push_back({std::move(x), w, ProbabilityMeasure(std::move(fiber))});
        } catch (const DegenerateMeasureError& e) {
            throw ParseError(std::string("site fiber is not a probability measure: ") + e.what());
        }
    }
    return YoungFunction(carrier_dim, fiber_dim, std::move(sites));
}

json to_json(const GraphMeasure& gamma) {
    json atoms = json::array();
    for (const GraphAtom& a : gamma.atoms())
        atoms.push_back({{"x", a.x}, {"y", a.y}, {"w", a.w}});
    return json{{"x_dim", gamma.x_dim()}, {"y_dim", gamma.y_dim()}, {"atoms", std::move(atoms)}};
}

GraphMeasure graph_from_json(const json& j) {
    const int x_dim = static_cast<int>(finite_number(field(j, "x_dim"), "x_dim"));
    const int y_dim = static_cast<int>(finite_number(field(j, "y_dim"), "y_dim"));
    const json& atoms_json = field(j, "atoms");
    if (!atoms_json.is_array()) throw ParseError("atoms must be an array");
    std::vector<GraphAtom> atoms;
    atoms.reserve(atoms_json.size());
    for (const json& a : atoms_json) {
        atoms.push_back({vec_from_json(field(a, "x"), "atom x"),
                         vec_from_json(field(a, "y"), "atom y"),
                         weight_from_json(field(a, "w"))});
    }
    return GraphMeasure(x_dim, y_dim, std::move(atoms));
}

json to_json(const DiscreteVarifold& v) {
    json atoms = json::array();
    for (const VarifoldAtom& a : v.atoms())
        atoms.push_back({{"x", a.x}, {"proj", a.plane.projection()}, {"w", a.weight}});
    return json{{"n", v.ambient_dim()}, {"m", v.plane_dim()}, {"atoms", std::move(atoms)}};
}

DiscreteVarifold varifold_from_json(const json& j) {
    const int n = static_cast<int>(finite_number(field(j, "n"), "n"));
    const int m = static_cast<int>(finite_number(field(j, "m"), "m"));
    const json& atoms_json = field(j, "atoms");
    if (!atoms_json.is_array()) throw ParseError("atoms must be an array");
    std::vector<VarifoldAtom> atoms;
    atoms.reserve(atoms_json.size());
    for (const json& a : atoms_json) {
        Vec x = vec_from_json(field(a, "x"), "atom position");
        Vec proj = vec_from_json(field(a, "proj"), "projection matrix");
        const double w = weight_from_json(field(a, "w"));
        try {
            atoms.push_back({std::move(x), Plane::from_projection(n, m, std::move(proj)), w});
        } catch (const Error& e) {
            throw ParseError(std::string("invalid plane: ") + e.what());
        }
    }
    return DiscreteVarifold(n, m, std::move(atoms));
}

json to_json(const PolylineVarifold& p) {
    return json{{"vertices", p.vertices()},
                {"multiplicities", p.multiplicities()},
                {"closed", p.closed()}};
}

PolylineVarifold polyline_from_json(const json& j) {
    const json& verts_json = field(j, "vertices");
    if (!verts_json.is_array()) throw ParseError("vertices must be an array");
    std::vector<Vec> vertices;
    vertices.reserve(verts_json.size());
    for (const json& v : verts_json) vertices.push_back(vec_from_json(v, "vertex"));
    const json& mults_json = field(j, "multiplicities");
    if (!mults_json.is_array()) throw ParseError("multiplicities must be an array");
    std::vector<double> multiplicities;
    multiplicities.reserve(mults_json.size());
    for (const json& m : mults_json) multiplicities.push_back(finite_number(m, "multiplicity"));
    const json& closed_json = field(j, "closed");
    if (!closed_json.is_boolean()) throw ParseError("closed must be a boolean");
    return PolylineVarifold(std::move(vertices), std::move(multiplicities),
                            closed_json.get<bool>());
}

json to_json(const Battery& battery) {
    json members = json::array();
    for (const TestFunction& f : battery.members) {
        json m = json::parse(f.manifest());
        m["label"] = f.label();
        members.push_back(std::move(m));
    }
    return members;
}

namespace {

TestFunction member_from_json(const json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    const json& params = field(j, "parameters");
    if (kind == "bump") {
        return bump(vec_from_json(field(params, "center"), "center"),
                    finite_number(field(params, "r_inner"), "r_inner"),
                    finite_number(field(params, "r_outer"), "r_outer"));
    }
    if (kind == "truncated_linear") {
        return truncated_linear(vec_from_json(field(params, "direction"), "direction"),
                                static_cast<int>(finite_number(field(params, "level"), "level")));
    }
    if (kind == "zero") {
        return zero_function(static_cast<int>(finite_number(field(params, "dim"), "dim")));
    }
    if (kind == "scaled") {
        return scale(member_from_json(field(params, "inner")),
                     finite_number(field(params, "factor"), "factor"));
    }
    if (kind == "tensor") {
        const TestFunction fx = member_from_json(field(params, "x"));
        const TestFunction fy = member_from_json(field(params, "y"));
        Battery bx(fx.dim(), {fx});
        Battery by(fy.dim(), {fy});
        return tensor_battery(bx, by).members.front();
    }
    throw ParseError("unknown test function kind: " + kind);
}

} // namespace

Battery battery_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError("battery manifest must be a nonempty array");
    std::vector<TestFunction> members;
    members.reserve(j.size());
    for (const json& m : j) members.push_back(member_from_json(m));
    const int dim = members.front().dim();
    return Battery(dim, std::move(members));
}

namespace {

json step_to_json(const StepRecord& r) {
    json j{{"step", r.step},
           {"weak_deviation", r.weak_deviation},
           {"moment_gap", r.moment_gap}};
    if (std::isfinite(r.w1))
        j["w1"] = r.w1;
    else
        j["w1"] = nullptr;
    return j;
}

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

json report_to_json(const ConvergenceReport& report) {
    json rows = json::array();
    for (const StepRecord& r : report.steps) rows.push_back(step_to_json(r));
    return json{{"tolerance", report.tolerance},
                {"battery_hash", report.battery_hash},
                {"fitted_rate", nan_safe(report.fitted_rate)},
                {"verdicts", report.verdicts},
                {"rows", std::move(rows)}};
}

json report_to_json(const PairsReport& report) {
    json rows = json::array();
    for (const PairsStepRecord& r : report.steps) {
        rows.push_back({{"step", r.step},
                        {"varifold_deviation", r.varifold_deviation},
                        {"lifted_deviation", r.lifted_deviation},
                        {"base_deviation", r.base_deviation}});
    }
    json verdicts = json::object();
    if (report.varifold_converged) verdicts["varifold"] = *report.varifold_converged;
    if (report.lifted_converged) verdicts["lifted"] = *report.lifted_converged;
    if (report.base_converged) verdicts["base"] = *report.base_converged;
    return json{{"status", report.status},
                {"hypothesis_ok", report.hypothesis_ok},
                {"sup_mass_plus_first_variation", report.sup_mass_plus_first_variation},
                {"tightness", tightness_to_json(report.tightness)},
                {"verdicts", std::move(verdicts)},
                {"rates",
                 {{"varifold", nan_safe(report.varifold_rate)},
                  {"lifted", nan_safe(report.lifted_rate)},
                  {"base", nan_safe(report.base_rate)}}},
                {"tolerance", report.tolerance},
                {"battery_hash", report.battery_hash},
                {"rows", std::move(rows)}};
}

json tightness_to_json(const TightnessProfile& profile) {
    json rows = json::array();
    for (const TightnessRow& r : profile.rows)
        rows.push_back({{"s", r.s}, {"excess", r.excess}});
    return json{{"tight", profile.tight},
                {"tolerance", profile.tolerance},
                {"sup_mass", profile.sup_mass},
                {"rows", std::move(rows)}};
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string plan_to_csv(const TransportPlan& plan) {
    std::string out = "source_index,target_index,flow,cost_contribution\n";
    for (const TransportPlan::Entry& e : plan.entries) {
        out += std::to_string(e.source) + "," + std::to_string(e.target) + "," +
               format_double(e.flow) + "," + format_double(e.cost_contribution) + "\n";
    }
    return out;
}

std::string report_to_csv(const ConvergenceReport& report) {
    std::string out = "step,weak_deviation,moment_gap,w1,verdict\n";
    for (const StepRecord& r : report.steps) {
        out += std::to_string(r.step) + "," + format_double(r.weak_deviation) + "," +
               format_double(r.moment_gap) + "," + format_double(r.w1) + "," +
               (r.weak_deviation <= report.tolerance ? "pass" : "fail") + "\n";
    }
    return out;
}

std::string pairs_to_csv(const PairsReport& report) {
    std::string out = "step,varifold_deviation,lifted_deviation,base_deviation\n";
    for (const PairsStepRecord& r : report.steps) {
        out += std::to_string(r.step) + "," + format_double(r.varifold_deviation) + "," +
               format_double(r.lifted_deviation) + "," + format_double(r.base_deviation) + "\n";
    }
    return out;
}

std::string tightness_to_csv(const TightnessProfile& profile) {
    std::string out = "s,T(s),verdict\n";
    for (const TightnessRow& r : profile.rows) {
        out += format_double(r.s) + "," + format_double(r.excess) + "," +
               (r.excess <= profile.tolerance ? "tight" : "not_tight") + "\n";
    }
    return out;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw Error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace ym::io
