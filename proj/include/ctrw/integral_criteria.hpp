#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctrw/exponent.hpp"
#include "ctrw/model.hpp"

namespace ctrw {

struct IndexSearchOptions {
    int shell_lo = 20;  // first dyadic shell 2^m <= |xi| < 2^{m+1} used in the growth fit
    int shell_hi = 44;
    double tolerance = 1e-3;  // bisection tolerance on gamma
};

struct GrowthDiagnostic {
    double gamma;
    double growth_slope;  // fitted log2 shell integral per shell; < 0 means convergent
};

struct IndexResult {
    double gamma_star = 0.0;
    bool saturated = false;  // series converges for every gamma in the bracket
    std::vector<GrowthDiagnostic> diagnostics;
};

/// sup{gamma < d : int_{|xi| >= 1} Re(1/(1 + psi(xi))) |xi|^{-(d - gamma)} dxi < inf},
/// located from the geometric growth rate of dyadic shell integrals.
IndexResult range_dim_by_integral(const CharExponent& psi, std::size_t d,
                                  const IndexSearchOptions& options = {});

/// max{1, chi}, chi the critical exponent of the integral of
/// Re(1/(1 + sigma(eta) + psi(xi))) (|eta| + |xi|)^{-(1 + d - gamma)} over |eta| + |xi| >= 1.
IndexResult graph_dim_by_integral(const MixtureSubordinatorExponent& sigma, const StableRadialExponent& psi,
                                  const IndexSearchOptions& options = {});

/// W(r) = int_{R^p} Re(1/(1 + Phi(xi/r))) prod_j 1/(1 + xi_j^2) dxi, for p = input_dim(phi) <= 2.
std::vector<double> packing_profile(const CharExponent& phi, std::span<const double> r_grid,
                                    double relative_tolerance = 1e-4);

/// The graph profile: W with Phi(eta, xi) = sigma(eta) + psi(xi) on R^{1+d}, d = 1.
std::vector<double> graph_packing_profile(const MixtureSubordinatorExponent& sigma,
                                          const StableRadialExponent& psi, std::span<const double> r_grid,
                                          double relative_tolerance = 1e-4);

/// Least-squares slope of log W against log r, clipped to [0, p].
double packing_index(std::span<const double> r_grid, std::span<const double> profile, std::size_t p);

struct SandwichResult {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double k_empirical = 0.0;  // max(max_ratio, 1/min_ratio)
    std::size_t points = 0;
    bool all_finite = true;
    bool real_part_nonnegative = true;

    bool passes(double k_bound) const {
        return all_finite && real_part_nonnegative && min_ratio > 0.0 && k_empirical <= k_bound;
    }
};

/// Ratio Re(1/(1 + Phi(eta, xi))) (|eta|^{beta_n} + |xi|^alpha) over the grid
/// eta_values x xi_radii restricted to |eta| + |xi| >= 1.
SandwichResult sandwich_check(const SumExponent& fam, std::span<const double> eta_values,
                              std::span<const double> xi_radii);

/// n points geometrically spaced from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace ctrw
