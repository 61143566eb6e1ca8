#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctrw/boxcount.hpp"
#include "ctrw/model.hpp"
#include "ctrw/paths.hpp"
#include "ctrw/theory.hpp"

namespace ctrw {

enum class Target { range, graph, parametric, z_range };

std::string to_string(Target target);
/// Accepts "range", "graph", "parametric", "z_range". Throws ParameterError otherwise.
Target parse_target(const std::string& name);

struct MonteCarloOptions {
    std::size_t paths = 20;
    std::size_t n = std::size_t{1} << 20;  // grid intervals per path
    std::uint64_t seed = 1;
    unsigned workers = 1;
    FitPolicy fit;
    int k_min = 0;
    /// Finest level; 0 picks log2(n) + 8, capped by the coordinate range.
    int k_max = 0;
    /// x-grid step is dt / refinement.
    double refinement = 1.0;
    bool left_limit = false;
    /// Add the x-grid samples of Y to range, graph and parametric clouds of
    /// time-changed models (see simulate_target_cloud).
    bool operational_points = true;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Point cloud of the requested set for one simulated path on n intervals.
///
/// With operational_points, the t-grid samples are joined by the x-grid
/// samples with x_j < E(horizon): Y(x_j) for the range, (D(x_j), Y(x_j)) for
/// the graph and (x_j, Y(x_j)) for the parametric set. These lie on the same
/// sets, since X([0, T]) = Y([0, E_T]) and X(D(x)) = Y(x), and they resolve
/// the stretches where E moves fast. The Z-range uses (D(x), Y(x)) for x in
/// [0, horizon] on n steps.
PointCloud simulate_target_cloud(const ModelSpec& spec, Target target, std::size_t n, RandomStream& stream,
                                 const MonteCarloOptions& options = {});

/// Box-count fit of a single cloud with the level range chosen as in MonteCarloOptions.
DimEstimate estimate_cloud(const PointCloud& cloud, std::size_t n, const MonteCarloOptions& options,
                           BoxCountCurve* curve_out = nullptr);

struct MonteCarloResult {
    DimEstimate estimate;       // mean slope, stderr of the mean, widest window
    std::vector<double> slopes;  // per path, in path order
    double theoretical = 0.0;
    std::string provenance;
    double gap = 0.0;  // estimate - theoretical
    BoxCountCurve first_curve;  // path 0, for plotting
};

/// Path p uses RandomStream(seed, p). Paths run on a worker pool and are
/// reduced in path order, so results do not depend on the worker count.
MonteCarloResult monte_carlo_dimension(const ModelSpec& spec, Target target, const MonteCarloOptions& options);

/// Theoretical (Hausdorff) value for a target; throws UnsupportedModelError when absent.
DimensionValue theoretical_target(const ModelSpec& spec, Target target);

}  // namespace ctrw
