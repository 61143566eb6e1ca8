#include "ctrw/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ctrw/error.hpp"
#include "ctrw/monte_carlo.hpp"
#include "ctrw/ks.hpp"
#include "ctrw/theory.hpp"

namespace ctrw {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(RowStatus status) {
    switch (status) {
        case RowStatus::pass: return "pass";
        case RowStatus::fail: return "fail";
        case RowStatus::error: return "error";
        case RowStatus::timeout: return "timeout";
    }
    return "?";
}

bool ExperimentReport::all_pass() const {
    for (const auto& r : rows) {
        if (r.status != RowStatus::pass) return false;
    }
    return true;
}

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_text_file(const std::string& path, const std::string& text) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

RowStatus status_from_string(const std::string& s) {
    for (RowStatus st : {RowStatus::pass, RowStatus::fail, RowStatus::error, RowStatus::timeout}) {
        if (to_string(st) == s) return st;
    }
    throw ConfigError("bad status '" + s + "' in stored experiment");
}

json row_to_json(const ReportRow& r) {
    return {{"experiment", r.experiment}, {"model", r.model},         {"target", r.target},
            {"theoretical", r.theoretical}, {"provenance", r.provenance}, {"estimate", r.estimate},
            {"stderr", r.std_error},       {"gap", r.gap},             {"tolerance", r.tolerance},
            {"k_lo", r.k_lo},              {"k_hi", r.k_hi},           {"n_paths", r.n_paths},
            {"status", to_string(r.status)}, {"message", r.message},   {"wall_seconds", r.wall_seconds}};
}

ReportRow row_from_json(const json& j) {
    ReportRow r;
    r.experiment = j.at("experiment").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.target = j.at("target").get<std::string>();
    r.theoretical = j.at("theoretical").get<double>();
    r.provenance = j.at("provenance").get<std::string>();
    r.estimate = j.at("estimate").get<double>();
    r.std_error = j.at("stderr").get<double>();
    r.gap = j.at("gap").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.k_lo = j.at("k_lo").get<int>();
    r.k_hi = j.at("k_hi").get<int>();
    r.n_paths = j.at("n_paths").get<std::size_t>();
    r.status = status_from_string(j.at("status").get<std::string>());
    r.message = j.at("message").get<std::string>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
}

std::vector<ReportRow> run_one(const ExperimentSpec& e, std::uint64_t seed, const RunOptions& options,
                               std::vector<std::pair<std::string, BoxCountCurve>>& curves) {
    std::vector<ReportRow> rows;
    const auto start = std::chrono::steady_clock::now();
    MonteCarloOptions mc = monte_carlo_options(e, seed, options.workers);
    if (e.time_budget_seconds > 0.0) {
        mc.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(e.time_budget_seconds));
    }
    for (const auto& t : e.targets) {
        const auto t0 = std::chrono::steady_clock::now();
        ReportRow row;
        row.experiment = e.name;
        row.model = describe(e.model);
        row.target = to_string(t.target);
        row.tolerance = t.tolerance * options.tolerance_scale;
        try {
            const auto theory = theoretical_target(e.model, t.target);
            row.theoretical = theory.value;
            row.provenance = theory.provenance;
            const auto result = monte_carlo_dimension(e.model, t.target, mc);
            row.estimate = result.estimate.slope;
            row.std_error = result.estimate.std_error;
            row.gap = result.gap;
            row.k_lo = result.estimate.k_lo;
            row.k_hi = result.estimate.k_hi;
            row.n_paths = result.estimate.n_paths;
            row.status = std::abs(row.gap) <= row.tolerance ? RowStatus::pass : RowStatus::fail;
            curves.emplace_back(row.target, result.first_curve);
        } catch (const TimeoutError& err) {
            row.status = RowStatus::timeout;
            row.message = err.what();
        } catch (const std::exception& err) {
            row.status = RowStatus::error;
            row.message = err.what();
        }
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ExperimentReport run_experiments(const ExperimentConfig& config, const RunOptions& options) {
    if (!(options.tolerance_scale > 0.0)) throw ConfigError("tolerance scale must be positive");
    ExperimentReport report;
    const fs::path out_dir(config.output_dir);
    for (std::size_t i = 0; i < config.experiments.size(); ++i) {
        const auto& e = config.experiments[i];
        const std::uint64_t seed = experiment_seed(config, i);
        const fs::path stored = out_dir / "experiments" / (e.name + "-" + config_hash(e, seed) + ".json");

        if (options.write_files && options.resume && fs::exists(stored)) {
            const json j = json::parse(read_text_file(stored.string()));
            for (const auto& r : j.at("rows")) {
                ReportRow row = row_from_json(r);
                // Stored rows keep the raw tolerance; apply this run's scale.
                const double raw = r.at("tolerance").get<double>() / j.value("tolerance_scale", 1.0);
                row.tolerance = raw * options.tolerance_scale;
                if (row.status == RowStatus::pass || row.status == RowStatus::fail) {
                    row.status = std::abs(row.gap) <= row.tolerance ? RowStatus::pass : RowStatus::fail;
                }
                report.rows.push_back(std::move(row));
            }
            continue;
        }

        std::vector<std::pair<std::string, BoxCountCurve>> curves;
        auto rows = run_one(e, seed, options, curves);
        bool complete = true;
        json stored_rows = json::array();
        for (const auto& r : rows) {
            if (r.status == RowStatus::error || r.status == RowStatus::timeout) complete = false;
            stored_rows.push_back(row_to_json(r));
        }
        if (options.write_files) {
            for (const auto& [target, curve] : curves) {
                write_text_file((out_dir / "curves" / (e.name + "-" + target + ".csv")).string(), to_csv(curve));
            }
            if (complete) {
                const json j = {{"config", json::parse(canonical_json(e, seed))},
                                {"tolerance_scale", options.tolerance_scale},
                                {"rows", stored_rows}};
                write_text_file(stored.string(), j.dump(2) + "\n");
            }
        }
        for (auto& r : rows) report.rows.push_back(std::move(r));
    }
    if (options.write_files) {
        write_text_file((out_dir / "report.csv").string(), report_csv(report));
        write_text_file((out_dir / "report.txt").string(), report_text(report));
    }
    return report;
}

std::string report_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "experiment,model,target,theoretical,provenance,estimate,stderr,gap,tolerance,k_lo,k_hi,n_paths,status,"
          "message\n";
    for (const auto& r : report.rows) {
        os << csv_field(r.experiment) << ',' << csv_field(r.model) << ',' << r.target << ','
           << format_double(r.theoretical) << ',' << csv_field(r.provenance) << ',' << format_double(r.estimate)
           << ',' << format_double(r.std_error) << ',' << format_double(r.gap) << ','
           << format_double(r.tolerance) << ',' << r.k_lo << ',' << r.k_hi << ',' << r.n_paths << ','
           << to_string(r.status) << ',' << csv_field(r.message) << '\n';
    }
    return os.str();
}

std::string report_text(const ExperimentReport& report) {
    std::ostringstream os;
    os << std::left << std::setw(28) << "experiment" << std::setw(11) << "target" << std::right << std::setw(9)
       << "theory" << std::setw(9) << "estimate" << std::setw(8) << "stderr" << std::setw(9) << "gap"
       << std::setw(7) << "tol" << std::setw(9) << "window" << std::setw(9) << "status" << std::setw(9) << "time"
       << '\n';
    std::size_t passed = 0;
    for (const auto& r : report.rows) {
        std::ostringstream window;
        window << r.k_lo << '-' << r.k_hi;
        os << std::left << std::setw(28) << r.experiment << std::setw(11) << r.target << std::right << std::fixed
           << std::setprecision(4) << std::setw(9) << r.theoretical << std::setw(9) << r.estimate
           << std::setw(8) << r.std_error << std::showpos << std::setw(9) << r.gap << std::noshowpos
           << std::setprecision(3) << std::setw(7) << r.tolerance << std::setw(9) << window.str() << std::setw(9)
           << to_string(r.status) << std::setprecision(1) << std::setw(8) << r.wall_seconds << "s\n";
        if (!r.message.empty()) os << "    " << r.message << '\n';
        if (r.status == RowStatus::pass) ++passed;
    }
    os << passed << " of " << report.rows.size() << " rows pass\n";
    return os.str();
}

std::string theory_table_csv() {
    std::ostringstream os;
    os << "model,description,quantity,value,provenance\n";
    for (const auto& [name, spec] : builtin_model_suite()) {
        const DimensionReport r = theoretical_dimensions(spec);
        auto row = [&](const char* quantity, const DimensionValue& v) {
            os << name << ',' << csv_field(describe(spec)) << ',' << quantity << ',' << format_double(v.value) << ','
               << csv_field(v.provenance) << '\n';
        };
        row("range_hausdorff", r.range_hausdorff);
        row("range_packing", r.range_packing);
        row("graph_hausdorff", r.graph_hausdorff);
        row("graph_packing", r.graph_packing);
        if (r.parametric_set) row("parametric_set", *r.parametric_set);
        if (r.z_range) row("z_range", *r.z_range);
    }
    return os.str();
}

void emit_theory_table(const std::string& path) { write_text_file(path, theory_table_csv()); }

std::vector<ConvergenceRow> convergence_study(const WaitingLaw& waits, const std::vector<double>& scales,
                                              std::size_t replicates, std::uint64_t seed) {
    if (replicates == 0) throw ParameterError("need at least one replicate");
    const double beta = waiting_exponent(waits);
    std::vector<double> limit(replicates, 1.0);
    if (const auto* pareto = std::get_if<ParetoWaiting>(&waits)) {
        RandomStream stream(seed, 0);
        for (auto& v : limit) v = std::pow(draw_one_sided_stable(pareto->beta, stream), -pareto->beta);
    }
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double c = scales[i];
        if (!(c >= 1.0)) throw ParameterError("scales must be >= 1");
        RandomStream stream(seed, 1 + i);
        std::vector<double> sample(replicates);
        for (auto& v : sample) v = static_cast<double>(renewal_count(waits, c, stream)) * std::pow(c, -beta);
        rows.push_back({c, ks_statistic(sample, limit)});
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const ModelSpec& spec, const std::vector<double>& scales,
                                              std::size_t replicates, std::uint64_t seed) {
    validate(spec);
    if (spec.coupling != Coupling::uncoupled) throw UnsupportedModelError("convergence study needs an uncoupled model");
    const auto* stable = std::get_if<StableSubordinator>(&spec.inner);
    if (!stable) throw UnsupportedModelError("convergence study needs a stable subordinator");
    return convergence_study(ParetoWaiting{stable->beta}, scales, replicates, seed);
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "c,ks\n";
    for (const auto& r : rows) out += format_double(r.c) + "," + format_double(r.ks) + "\n";
    return out;
}

}  // namespace ctrw
