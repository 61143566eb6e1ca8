#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctrw/config.hpp"
#include "ctrw/paths.hpp"

namespace ctrw {

enum class RowStatus { pass, fail, error, timeout };

std::string to_string(RowStatus status);

struct ReportRow {
    std::string experiment;
    std::string model;
    std::string target;
    double theoretical = 0.0;
    std::string provenance;
    double estimate = 0.0;
    double std_error = 0.0;
    double gap = 0.0;
    double tolerance = 0.0;
    int k_lo = 0;
    int k_hi = 0;
    std::size_t n_paths = 0;
    RowStatus status = RowStatus::error;
    std::string message;
    double wall_seconds = 0.0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;

    bool all_pass() const;
    int exit_code() const { return all_pass() ? 0 : 1; }
};

struct RunOptions {
    unsigned workers = 1;
    double tolerance_scale = 1.0;
    bool write_files = true;
    bool resume = true;
};

/// Runs every experiment in order. With write_files, each finished experiment
/// is stored as <output_dir>/experiments/<name>-<hash>.json and skipped on the
/// next run; report.csv (no timings) and report.txt are written at the end,
/// together with the first path's box-count curve per target under curves/.
ExperimentReport run_experiments(const ExperimentConfig& config, const RunOptions& options = {});

/// Columns: experiment, model, target, theoretical, provenance, estimate,
/// stderr, gap, tolerance, k_lo, k_hi, n_paths, status, message.
std::string report_csv(const ExperimentReport& report);
std::string report_text(const ExperimentReport& report);

/// Theory table over the built-in model suite: model, description, quantity, value, provenance.
std::string theory_table_csv();
void emit_theory_table(const std::string& path);

struct ConvergenceRow {
    double c = 0.0;
    double ks = 0.0;
};

/// KS distance between c^-beta N_c (replicates renewal counts) and the limit
/// E_1 for each scale c. Pareto waits are compared with E_1 = D(1)^-beta drawn
/// independently; deterministic waits with the point mass at 1.
std::vector<ConvergenceRow> convergence_study(const WaitingLaw& waits, const std::vector<double>& scales,
                                              std::size_t replicates, std::uint64_t seed);
/// Uses Pareto waits with the index of the spec's stable subordinator.
std::vector<ConvergenceRow> convergence_study(const ModelSpec& spec, const std::vector<double>& scales,
                                              std::size_t replicates, std::uint64_t seed);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Writes text to path, creating parent directories.
void write_text_file(const std::string& path, const std::string& text);

std::string csv_field(const std::string& field);

}  // namespace ctrw
