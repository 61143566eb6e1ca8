#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ctrw/model.hpp"
#include "ctrw/random.hpp"

namespace ctrw {

/// Samples D(0), D(dx), D(2dx), ... of a strictly increasing subordinator.
struct SubordinatorPath {
    double dx = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Inverse subordinator E on the t-grid t_i = i dt.
struct TimeChange {
    double dt = 0.0;
    double dx = 0.0;
    std::vector<double> e_values;
    /// passage_index[i] = min{j : D(x_j) >= t_i}; e_values[i] = passage_index[i] * dx.
    std::vector<std::size_t> passage_index;

    std::size_t size() const { return e_values.size(); }
};

/// Uniform-grid samples of a process in R^dim, stored row-major.
struct GridPath {
    double dt = 0.0;
    std::size_t dim = 1;
    std::vector<double> coords;
    std::string meta;

    GridPath() = default;
    GridPath(double step, std::size_t dimension, std::size_t n_points, std::string description = {})
        : dt(step), dim(dimension), coords(n_points * dimension, 0.0), meta(std::move(description)) {}

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
    std::span<double> point(std::size_t i) { return {coords.data() + i * dim, dim}; }
    double& at(std::size_t i, std::size_t c) { return coords[i * dim + c]; }
    double at(std::size_t i, std::size_t c) const { return coords[i * dim + c]; }
};

// ---- subordinators and their inverses -------------------------------------

/// Cumulative sums of per-component increments d_k dx^{1/beta_k} S, extended
/// until the path exceeds the horizon.
SubordinatorPath simulate_subordinator(const InnerModel& inner, double horizon, double dx,
                                       RandomStream& stream);

/// Fixed number of increments; values has steps + 1 entries.
SubordinatorPath simulate_subordinator_steps(const InnerModel& inner, std::size_t steps, double dx,
                                             RandomStream& stream);

/// min{j : D(x_j) >= t}. Throws CoverageError if D never reaches t.
std::size_t passage_index_at(const SubordinatorPath& path, double t);

/// E on the grid t_i = i dt, i = 0..round(horizon/dt).
TimeChange invert_subordinator(const SubordinatorPath& path, double dt, double horizon);

// ---- outer processes on the x-grid ----------------------------------------

/// Independent symmetric alpha-stable coordinates, Y(0) = 0.
GridPath simulate_levy_outer(double alpha, std::size_t dim, std::size_t n_points, double dx,
                             RandomStream& stream);

/// Fractional Brownian motion with Var B(x) = x^{2H} per coordinate.
/// n_points must be 2^k + 1.
GridPath simulate_fbm_outer(double hurst, std::size_t dim, std::size_t n_points, double dx,
                            RandomStream& stream);

/// Fractional Gaussian noise (unit-step increments) of length n via circulant
/// embedding, with dense Cholesky fallback for n <= 4096.
std::vector<double> fractional_gaussian_noise(double hurst, std::size_t n, RandomStream& stream);

struct CoupledPaths {
    SubordinatorPath subordinator;
    GridPath outer;
};

/// Shlesinger coupling: dD ~ dx^{1/beta} S, dY | dD ~ N(0, 2 dD). Extended past the horizon.
CoupledPaths simulate_coupled_shlesinger(double beta, double horizon, double dx, RandomStream& stream);
CoupledPaths simulate_coupled_shlesinger_steps(double beta, std::size_t steps, double dx,
                                               RandomStream& stream);

/// X(t_i) = Y(x_{passage_index[i]}); with left_limit the previous x-index is
/// used wherever the passage index advanced at t_i.
GridPath compose_time_change(const GridPath& outer, const TimeChange& tc, bool left_limit = false);

// ---- pre-limit walks ------------------------------------------------------

struct GaussianJumps {};  // N(0, 2): the alpha = 2 convention
struct StableJumps {
    double alpha;
};
struct ZeroJumps {};
using JumpLaw = std::variant<GaussianJumps, StableJumps, ZeroJumps>;

/// P{W > u} = u^{-beta} / Gamma(1 - beta) for u >= Gamma(1 - beta)^{-1/beta};
/// T(cx)/c^{1/beta} then converges to the subordinator with exponent s^beta.
struct ParetoWaiting {
    double beta;
};
struct DeterministicWaiting {
    double wait = 1.0;
};
using WaitingLaw = std::variant<ParetoWaiting, DeterministicWaiting>;

struct CtrwPath {
    GridPath position;                 // c^{-beta/alpha} S(N_{ct}) on the t-grid
    std::vector<std::uint64_t> counts;  // N_{ct} on the t-grid
    double time_exponent = 1.0;        // beta (1 for deterministic waits)
    double space_exponent = 0.5;       // 1/alpha
};

CtrwPath simulate_ctrw_discrete(const JumpLaw& jumps, const WaitingLaw& waits, double c,
                                double horizon, double dt, RandomStream& stream);

/// N_c = max{n : W_1 + ... + W_n <= c}.
std::uint64_t renewal_count(const WaitingLaw& waits, double c, RandomStream& stream);

/// Tail exponent of the waiting law (beta, or 1 for deterministic waits).
double waiting_exponent(const WaitingLaw& waits);

/// Partial sums of a long-memory moving average (fractionally integrated
/// noise with d = H - 1/2, coefficients ~ i^{H - 3/2}), normalized so the
/// value at t = 1 has asymptotic variance 1. Path has n + 1 points on [0, 1].
GridPath simulate_correlated_jump_walk(double hurst, std::size_t n, RandomStream& stream);

/// Long-run constant C with Var(S_n) ~ C n^{2H} for unit-variance innovations.
double fractional_sum_variance_constant(double hurst);

// ---- full model -----------------------------------------------------------

struct SimulationOptions {
    /// Operational-time step; 0 selects dx = dt.
    double dx = 0.0;
    bool left_limit = false;
};

struct ModelPaths {
    std::optional<SubordinatorPath> subordinator;
    std::optional<TimeChange> time_change;
    GridPath outer;    // Y on the x-grid
    GridPath process;  // X on the t-grid
};

/// Simulates X = Y(E_t) on n_intervals + 1 grid points over [0, horizon].
ModelPaths simulate_model(const ModelSpec& spec, std::size_t n_intervals, RandomStream& stream,
                          const SimulationOptions& options = {});

// ---- CSV ------------------------------------------------------------------

std::string to_csv(const GridPath& path);          // t, x_1..x_d
std::string to_csv(const SubordinatorPath& path);  // x, D
std::string to_csv(const TimeChange& tc);          // t, E, passage_index
std::string format_double(double value);

}  // namespace ctrw
