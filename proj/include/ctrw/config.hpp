#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctrw/boxcount.hpp"
#include "ctrw/model.hpp"
#include "ctrw/monte_carlo.hpp"

namespace ctrw {

struct TargetSpec {
    Target target = Target::graph;
    double tolerance = 0.15;
};

struct ExperimentSpec {
    std::string name;
    ModelSpec model;
    std::vector<TargetSpec> targets;
    std::size_t paths = 20;
    std::size_t n = std::size_t{1} << 20;
    std::optional<std::uint64_t> seed;  // unset: base seed + experiment index
    double refinement = 1.0;
    bool left_limit = false;
    bool operational_points = true;
    FitPolicy fit;
    int k_min = 0;
    int k_max = 0;
    double time_budget_seconds = 0.0;  // 0: unlimited
};

struct ExperimentConfig {
    std::string output_dir = "results";
    unsigned workers = 1;
    std::uint64_t seed = 1;
    std::vector<ExperimentSpec> experiments;
};

/// Throws ConfigError on malformed input, unknown keys, duplicate names,
/// non-positive tolerances or n not a power of two.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Model objects as used in config files, e.g.
/// {"outer": {"type": "brownian", "dim": 1}, "inner": {"type": "stable", "beta": 0.8}}.
ModelSpec parse_model(const std::string& json_text);
std::string model_to_json(const ModelSpec& spec);

/// Canonical JSON of a fully resolved experiment (seed included).
std::string canonical_json(const ExperimentSpec& experiment, std::uint64_t seed);

/// 16 hex digits of FNV-1a over the canonical JSON.
std::string config_hash(const ExperimentSpec& experiment, std::uint64_t seed);

std::uint64_t experiment_seed(const ExperimentConfig& config, std::size_t index);

MonteCarloOptions monte_carlo_options(const ExperimentSpec& experiment, std::uint64_t seed, unsigned workers);

std::string read_text_file(const std::string& path);

}  // namespace ctrw
