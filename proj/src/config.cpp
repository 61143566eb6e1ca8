#include "ctrw/config.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ctrw/error.hpp"

namespace ctrw {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <class T>
T require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError("missing '" + std::string(key) + "' in " + where);
    return get_or<T>(j, key, T{});
}

OuterModel outer_from_json(const json& j) {
    const auto type = require<std::string>(j, "type", "outer");
    if (type == "brownian") {
        check_keys(j, {"type", "dim"}, "outer");
        return BrownianOuter{get_or<std::size_t>(j, "dim", 1)};
    }
    if (type == "stable") {
        check_keys(j, {"type", "alpha", "dim"}, "outer");
        return StableLevyOuter{require<double>(j, "alpha", "stable outer"), get_or<std::size_t>(j, "dim", 1)};
    }
    if (type == "fbm") {
        check_keys(j, {"type", "hurst", "dim"}, "outer");
        return FbmOuter{require<double>(j, "hurst", "fbm outer"), get_or<std::size_t>(j, "dim", 1)};
    }
    if (type == "subordinator") {
        check_keys(j, {"type"}, "outer");
        return SubordinatorOuter{};
    }
    throw ConfigError("unknown outer type '" + type + "'");
}

InnerModel inner_from_json(const json& j) {
    const auto type = require<std::string>(j, "type", "inner");
    if (type == "stable") {
        check_keys(j, {"type", "beta"}, "inner");
        return StableSubordinator{require<double>(j, "beta", "stable inner")};
    }
    if (type == "mixture") {
        check_keys(j, {"type", "atoms"}, "inner");
        MixtureSubordinator m;
        for (const auto& a : require<json>(j, "atoms", "mixture inner")) {
            check_keys(a, {"beta", "scale"}, "mixture atom");
            m.atoms.push_back({require<double>(a, "beta", "mixture atom"), get_or<double>(a, "scale", 1.0)});
        }
        return m;
    }
    if (type == "none") {
        check_keys(j, {"type"}, "inner");
        return NoTimeChange{};
    }
    throw ConfigError("unknown inner type '" + type + "'");
}

Coupling coupling_from_string(const std::string& s) {
    for (Coupling c : {Coupling::uncoupled, Coupling::identity, Coupling::shlesinger}) {
        if (to_string(c) == s) return c;
    }
    throw ConfigError("unknown coupling '" + s + "'");
}

ModelSpec model_from_json(const json& j) {
    check_keys(j, {"outer", "inner", "coupling", "horizon"}, "model");
    ModelSpec spec;
    spec.outer = outer_from_json(require<json>(j, "outer", "model"));
    spec.inner = inner_from_json(require<json>(j, "inner", "model"));
    spec.coupling = coupling_from_string(get_or<std::string>(j, "coupling", "uncoupled"));
    spec.horizon = get_or<double>(j, "horizon", 1.0);
    try {
        validate(spec);
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("invalid model: ") + e.what());
    }
    return spec;
}

json model_json(const ModelSpec& spec) {
    json outer = std::visit(
        [](const auto& o) -> json {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, BrownianOuter>) return {{"type", "brownian"}, {"dim", o.dim}};
            if constexpr (std::is_same_v<T, StableLevyOuter>)
                return {{"type", "stable"}, {"alpha", o.alpha}, {"dim", o.dim}};
            if constexpr (std::is_same_v<T, FbmOuter>) return {{"type", "fbm"}, {"hurst", o.hurst}, {"dim", o.dim}};
            return {{"type", "subordinator"}};
        },
        spec.outer);
    json inner = std::visit(
        [](const auto& i) -> json {
            using T = std::decay_t<decltype(i)>;
            if constexpr (std::is_same_v<T, StableSubordinator>) return {{"type", "stable"}, {"beta", i.beta}};
            if constexpr (std::is_same_v<T, MixtureSubordinator>) {
                json atoms = json::array();
                for (const auto& a : i.atoms) atoms.push_back({{"beta", a.beta}, {"scale", a.scale}});
                return {{"type", "mixture"}, {"atoms", atoms}};
            }
            return {{"type", "none"}};
        },
        spec.inner);
    return {{"outer", outer}, {"inner", inner}, {"coupling", to_string(spec.coupling)}, {"horizon", spec.horizon}};
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

ExperimentSpec experiment_from_json(const json& j, const json& defaults) {
    json merged = defaults;
    for (const auto& [key, value] : j.items()) merged[key] = value;
    check_keys(merged,
               {"name", "model", "targets", "tolerance", "tolerances", "paths", "n", "seed", "refinement",
                "left_limit", "operational_points", "fit", "time_budget_seconds"},
               "experiment");
    ExperimentSpec e;
    e.name = require<std::string>(merged, "name", "experiment");
    const std::string where = "experiment '" + e.name + "'";
    e.model = model_from_json(require<json>(merged, "model", where));
    const double tolerance = get_or<double>(merged, "tolerance", 0.15);
    const json tolerances = get_or<json>(merged, "tolerances", json::object());
    for (const auto& name : require<std::vector<std::string>>(merged, "targets", where)) {
        TargetSpec t;
        try {
            t.target = parse_target(name);
        } catch (const ParameterError& err) {
            throw ConfigError(err.what());
        }
        t.tolerance = get_or<double>(tolerances, name.c_str(), tolerance);
        if (!(t.tolerance > 0.0)) throw ConfigError("tolerances must be positive in " + where);
        e.targets.push_back(t);
    }
    e.paths = get_or<std::size_t>(merged, "paths", e.paths);
    e.n = get_or<std::size_t>(merged, "n", e.n);
    if (merged.contains("seed")) e.seed = get_or<std::uint64_t>(merged, "seed", 0);
    e.refinement = get_or<double>(merged, "refinement", e.refinement);
    e.left_limit = get_or<bool>(merged, "left_limit", e.left_limit);
    e.operational_points = get_or<bool>(merged, "operational_points", e.operational_points);
    e.time_budget_seconds = get_or<double>(merged, "time_budget_seconds", 0.0);
    if (merged.contains("fit")) {
        const json& f = merged.at("fit");
        check_keys(f, {"min_count", "saturation_divisor", "k_lo", "k_hi", "k_min", "k_max"}, "fit");
        e.fit.min_count = get_or<double>(f, "min_count", e.fit.min_count);
        e.fit.saturation_divisor = get_or<double>(f, "saturation_divisor", e.fit.saturation_divisor);
        if (f.contains("k_lo")) e.fit.k_lo = get_or<int>(f, "k_lo", 0);
        if (f.contains("k_hi")) e.fit.k_hi = get_or<int>(f, "k_hi", 0);
        e.k_min = get_or<int>(f, "k_min", 0);
        e.k_max = get_or<int>(f, "k_max", 0);
    }
    if (e.paths == 0) throw ConfigError("paths must be positive in " + where);
    if (!power_of_two(e.n)) throw ConfigError("n must be a power of two in " + where);
    if (!(e.refinement >= 1.0)) throw ConfigError("refinement must be >= 1 in " + where);
    return e;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(j, {"output_dir", "workers", "seed", "defaults", "experiments"}, "config");
    ExperimentConfig config;
    config.output_dir = get_or<std::string>(j, "output_dir", config.output_dir);
    config.workers = get_or<unsigned>(j, "workers", config.workers);
    config.seed = get_or<std::uint64_t>(j, "seed", config.seed);
    const json defaults = get_or<json>(j, "defaults", json::object());
    if (!defaults.is_object()) throw ConfigError("defaults must be an object");
    std::set<std::string> names;
    for (const auto& item : get_or<json>(j, "experiments", json::array())) {
        auto e = experiment_from_json(item, defaults);
        if (!names.insert(e.name).second) throw ConfigError("duplicate experiment name '" + e.name + "'");
        config.experiments.push_back(std::move(e));
    }
    return config;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

ModelSpec parse_model(const std::string& json_text) {
    try {
        return model_from_json(json::parse(json_text, nullptr, true, true));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("model is not valid JSON: ") + e.what());
    }
}

std::string model_to_json(const ModelSpec& spec) { return model_json(spec).dump(); }

std::string canonical_json(const ExperimentSpec& e, std::uint64_t seed) {
    json targets = json::array();
    for (const auto& t : e.targets) targets.push_back({{"target", to_string(t.target)}, {"tolerance", t.tolerance}});
    json fit = {{"min_count", e.fit.min_count}, {"saturation_divisor", e.fit.saturation_divisor},
                {"k_min", e.k_min}, {"k_max", e.k_max}};
    if (e.fit.k_lo) fit["k_lo"] = *e.fit.k_lo;
    if (e.fit.k_hi) fit["k_hi"] = *e.fit.k_hi;
    // json objects keep keys sorted, so dump() is canonical.
    json j = {{"name", e.name},        {"model", model_json(e.model)},
              {"targets", targets},    {"paths", e.paths},
              {"n", e.n},              {"seed", seed},
              {"refinement", e.refinement}, {"left_limit", e.left_limit},
              {"operational_points", e.operational_points}, {"fit", fit}};
    return j.dump();
}

std::string config_hash(const ExperimentSpec& experiment, std::uint64_t seed) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical_json(experiment, seed)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

std::uint64_t experiment_seed(const ExperimentConfig& config, std::size_t index) {
    const auto& e = config.experiments.at(index);
    return e.seed ? *e.seed : config.seed + index;
}

MonteCarloOptions monte_carlo_options(const ExperimentSpec& e, std::uint64_t seed, unsigned workers) {
    MonteCarloOptions o;
    o.paths = e.paths;
    o.n = e.n;
    o.seed = seed;
    o.workers = workers;
    o.fit = e.fit;
    o.k_min = e.k_min;
    o.k_max = e.k_max;
    o.refinement = e.refinement;
    o.left_limit = e.left_limit;
    o.operational_points = e.operational_points;
    return o;
}

}  // namespace ctrw
