// ctrwdim: simulate time-changed processes and estimate fractal dimensions.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ctrw/boxcount.hpp"
#include "ctrw/config.hpp"
#include "ctrw/error.hpp"
#include "ctrw/harness.hpp"
#include "ctrw/monte_carlo.hpp"
#include "ctrw/paths.hpp"
#include "ctrw/theory.hpp"

namespace fs = std::filesystem;
using namespace ctrw;

namespace {

// A --config file may hold a bare model or a full experiment config; for the
// latter the first experiment's model is used.
ModelSpec model_from_file(const std::string& path) {
    const std::string text = read_text_file(path);
    if (text.find("\"experiments\"") != std::string::npos) {
        const auto config = parse_config(text);
        if (config.experiments.empty()) throw ConfigError("config has no experiments");
        return config.experiments.front().model;
    }
    return parse_model(text);
}

std::string estimate_csv(const DimEstimate& e, double theoretical, double gap) {
    return "slope,stderr,k_lo,k_hi,n_paths,theoretical,gap\n" + format_double(e.slope) + "," +
           format_double(e.std_error) + "," + std::to_string(e.k_lo) + "," + std::to_string(e.k_hi) + "," +
           std::to_string(e.n_paths) + "," + format_double(theoretical) + "," + format_double(gap) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractal dimensions of time-changed processes"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 1;
    bool seed_given = false;
    unsigned workers = 1;
    double tolerance_scale = 1.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON model or experiment config");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { seed = s, seed_given = true; }, "base seed");
        sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* simulate = app.add_subcommand("simulate", "simulate one path and write CSV files");
    add_common(simulate);
    std::size_t n = 1 << 16;
    double refinement = 1.0;
    simulate->add_option("--n", n, "grid intervals on [0, horizon]");
    simulate->add_option("--refinement", refinement, "x-grid step is dt / refinement");

    auto* boxcount = app.add_subcommand("boxcount", "box-count a point cloud CSV or simulated paths");
    add_common(boxcount);
    std::string input, target_name = "graph";
    std::size_t paths = 1;
    int k_min = 0, k_max = 0;
    boxcount->add_option("--input", input, "point cloud CSV (header row, one point per line)");
    boxcount->add_option("--target", target_name, "range, graph, parametric or z_range");
    boxcount->add_option("--paths", paths, "Monte Carlo paths");
    boxcount->add_option("--n", n, "grid intervals per path");
    boxcount->add_option("--k-min", k_min, "coarsest level");
    boxcount->add_option("--k-max", k_max, "finest level (0: automatic)");

    auto* theory = app.add_subcommand("theory", "theoretical dimensions for a model, or the full table");
    add_common(theory);

    auto* experiment = app.add_subcommand("experiment", "run an experiment config");
    add_common(experiment);
    experiment->add_option("--tolerance-scale", tolerance_scale, "multiply every tolerance")
        ->check(CLI::PositiveNumber);
    bool fresh = false;
    experiment->add_flag("--fresh", fresh, "ignore stored experiment results");

    auto* convergence = app.add_subcommand("convergence", "KS distance of c^-beta N_c to E_1 across scales");
    add_common(convergence);
    double beta = 0.8;
    std::vector<double> scales{1.0, 1e2, 1e3, 1e4};
    std::size_t replicates = 10000;
    bool deterministic = false;
    convergence->add_option("--beta", beta, "Pareto tail index (ignored with --config)");
    convergence->add_option("--c", scales, "scales c");
    convergence->add_option("--replicates", replicates, "replicates per scale");
    convergence->add_flag("--deterministic", deterministic, "unit waiting times");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            if (config_path.empty()) throw ConfigError("simulate needs --config");
            const ModelSpec spec = model_from_file(config_path);
            RandomStream stream(seed, 0);
            SimulationOptions opts;
            opts.dx = spec.horizon / static_cast<double>(n) / refinement;
            const ModelPaths p = simulate_model(spec, n, stream, opts);
            const fs::path dir(out_dir);
            write_text_file((dir / "process.csv").string(), to_csv(p.process));
            write_text_file((dir / "outer.csv").string(), to_csv(p.outer));
            if (p.subordinator) write_text_file((dir / "subordinator.csv").string(), to_csv(*p.subordinator));
            if (p.time_change) write_text_file((dir / "time_change.csv").string(), to_csv(*p.time_change));
            std::cout << describe(spec) << ": " << p.process.size() << " points written to " << dir.string() << '\n';
            return 0;
        }
        if (boxcount->parsed()) {
            const fs::path dir(out_dir);
            MonteCarloOptions mc;
            mc.k_min = k_min;
            mc.k_max = k_max;
            mc.n = n;
            mc.paths = paths;
            mc.seed = seed;
            mc.workers = workers;
            if (!input.empty()) {
                const PointCloud cloud = read_point_cloud_csv(read_text_file(input));
                BoxCountCurve curve;
                const DimEstimate e = estimate_cloud(cloud, cloud.size(), mc, &curve);
                write_text_file((dir / "curve.csv").string(), to_csv(curve));
                write_text_file((dir / "estimate.csv").string(), estimate_csv(e, std::nan(""), std::nan("")));
                std::cout << "slope " << e.slope << " +- " << e.std_error << " over k = " << e.k_lo << ".." << e.k_hi
                          << '\n';
                return 0;
            }
            if (config_path.empty()) throw ConfigError("boxcount needs --input or --config");
            const ModelSpec spec = model_from_file(config_path);
            const Target target = parse_target(target_name);
            const auto r = monte_carlo_dimension(spec, target, mc);
            write_text_file((dir / "curve.csv").string(), to_csv(r.first_curve));
            write_text_file((dir / "estimate.csv").string(), estimate_csv(r.estimate, r.theoretical, r.gap));
            std::cout << describe(spec) << ' ' << target_name << ": " << r.estimate.slope << " +- "
                      << r.estimate.std_error << " (theory " << r.theoretical << ")\n";
            return 0;
        }
        if (theory->parsed()) {
            if (config_path.empty()) {
                const fs::path file = fs::path(out_dir) / "theory_table.csv";
                emit_theory_table(file.string());
                std::cout << theory_table_csv();
                return 0;
            }
            const ModelSpec spec = model_from_file(config_path);
            const auto report = theoretical_dimensions(spec);
            write_text_file((fs::path(out_dir) / "theory.csv").string(), report_csv(report));
            std::cout << describe(spec) << '\n' << report_text(report);
            return 0;
        }
        if (experiment->parsed()) {
            if (config_path.empty()) throw ConfigError("experiment needs --config");
            ExperimentConfig config = load_config(config_path);
            if (seed_given) config.seed = seed;
            if (experiment->count("--out")) config.output_dir = out_dir;
            RunOptions run;
            run.workers = experiment->count("--workers") ? workers : config.workers;
            run.tolerance_scale = tolerance_scale;
            run.resume = !fresh;
            const auto report = run_experiments(config, run);
            std::cout << report_text(report);
            return report.exit_code();
        }
        if (convergence->parsed()) {
            std::vector<ConvergenceRow> rows;
            if (deterministic) {
                rows = convergence_study(DeterministicWaiting{1.0}, scales, replicates, seed);
            } else if (!config_path.empty()) {
                rows = convergence_study(model_from_file(config_path), scales, replicates, seed);
            } else {
                rows = convergence_study(ParetoWaiting{beta}, scales, replicates, seed);
            }
            const std::string csv = convergence_csv(rows);
            write_text_file((fs::path(out_dir) / "convergence.csv").string(), csv);
            std::cout << csv;
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
