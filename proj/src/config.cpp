#include "redlb/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace redlb {

namespace {

using nlohmann::json;

// Extended real: a JSON number, or the string "inf".
double extended_real(const json& v, const std::string& field) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kInf;
        throw InvalidConfig(field + ": only \"inf\" is accepted as a string value");
    }
    if (!v.is_number()) throw InvalidConfig(field + " must be a number or \"inf\"");
    return v.get<double>();
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidConfig("malformed JSON configuration");
    return j;
}

PolicyParams params_from(const json& j) {
    if (!j.is_object()) throw InvalidConfig("params must be an object");
    PolicyParams q;
    if (!j.contains("lambda")) throw InvalidConfig("params.lambda is required");
    q.lambda = j.at("lambda").get<double>();
    q.mu = j.value("mu", 1.0);
    q.n_servers = j.value("n_servers", 20);
    q.d = j.value("d", 1);
    q.p = j.value("p", 0.0);
    q.t1 = j.contains("t1") ? extended_real(j.at("t1"), "t1") : kInf;
    q.t2 = j.contains("t2") ? extended_real(j.at("t2"), "t2") : kInf;
    q.validate();
    return q;
}

SimConfig sim_from(const json& j, const PolicyParams& params) {
    SimConfig cfg;
    cfg.params = params;
    if (j.is_null()) return cfg;
    if (!j.is_object()) throw InvalidConfig("sim must be an object");
    cfg.n_arrivals = j.value("n_arrivals", cfg.n_arrivals);
    cfg.warmup_fraction = j.value("warmup_fraction", cfg.warmup_fraction);
    cfg.n_replications = j.value("n_replications", cfg.n_replications);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.max_workload_samples = j.value("max_workload_samples", cfg.max_workload_samples);
    return cfg;
}

json params_node(const json& root) {
    if (root.contains("params")) return root.at("params");
    throw InvalidConfig("configuration requires a \"params\" object");
}

}  // namespace

PolicyParams parse_params_json(const std::string& text) {
    const json root = parse(text);
    return params_from(params_node(root));
}

SimConfig parse_sim_config_json(const std::string& text) {
    const json root = parse(text);
    const PolicyParams params = params_from(params_node(root));
    SimConfig cfg = sim_from(root.value("sim", json()), params);
    cfg.validate();
    return cfg;
}

SweepSpec parse_sweep_spec_json(const std::string& text) {
    const json root = parse(text);
    SweepSpec spec;
    if (!root.contains("base")) throw InvalidConfig("sweep requires a \"base\" object");
    spec.base = params_from(root.at("base"));
    if (!root.contains("axis")) throw InvalidConfig("sweep requires an \"axis\"");
    spec.axis = axis_from_name(root.at("axis").get<std::string>());
    if (!root.contains("values")) throw InvalidConfig("sweep requires \"values\"");
    for (const json& v : root.at("values")) {
        spec.values.push_back(extended_real(v, "values"));
    }
    if (!root.contains("outputs")) throw InvalidConfig("sweep requires \"outputs\"");
    for (const json& o : root.at("outputs")) {
        spec.outputs.push_back(output_from_name(o.get<std::string>()));
    }
    if (root.contains("sim")) spec.sim = sim_from(root.at("sim"), spec.base);
    spec.validate();
    return spec;
}

ValidateSpec parse_validate_spec_json(const std::string& text) {
    const json root = parse(text);
    ValidateSpec spec;
    spec.params = params_from(params_node(root));
    if (!root.contains("n_grid")) throw InvalidConfig("validate requires \"n_grid\"");
    for (const json& v : root.at("n_grid")) spec.n_grid.push_back(v.get<int>());
    if (spec.n_grid.empty()) throw InvalidConfig("n_grid must be non-empty");
    spec.sim = sim_from(root.value("sim", json()), spec.params);
    for (int n : spec.n_grid) {
        if (n < spec.params.d) throw InvalidConfig("every n_grid entry must be >= d");
    }
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace redlb
