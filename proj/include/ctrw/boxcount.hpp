#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctrw/paths.hpp"

namespace ctrw {

/// Finite multiset of points in R^dim, row-major.
struct PointCloud {
    std::size_t dim = 1;
    std::vector<double> coords;

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

PointCloud extract_range(const GridPath& path);
/// Points (t, X(t)); ambient dimension d + 1.
PointCloud extract_graph(const GridPath& path);
/// Points (E_t, X(t)) on the shared t-grid.
PointCloud extract_parametric_set(const TimeChange& tc, const GridPath& path);
/// Points (D(x), Y(x)) on the shared x-grid.
PointCloud extract_z_range(const SubordinatorPath& subordinator, const GridPath& outer);

std::size_t count_distinct(const PointCloud& cloud);

/// Occupied dyadic box counts N_k for box side 2^-k, k = k_min..k_max.
struct BoxCountCurve {
    std::vector<int> scales;
    std::vector<std::size_t> counts;
    std::size_t points = 0;
    std::size_t distinct_points = 0;
};

/// Largest k_max for which every coordinate lies within +-2^(40 - k_max).
int max_supported_level(const PointCloud& cloud);

/// Boxes are [m 2^-k, (m+1) 2^-k) per coordinate, anchored at the origin.
/// Throws ParameterError if a coordinate exceeds 2^(40 - k_max) in magnitude.
BoxCountCurve box_count(const PointCloud& cloud, int k_min, int k_max);

struct FitPolicy {
    /// Automatic window {k : min_count <= N_k <= distinct_points / saturation_divisor}.
    double min_count = 100.0;
    double saturation_divisor = 10.0;
    std::optional<int> k_lo;
    std::optional<int> k_hi;
};

struct DimEstimate {
    double slope = 0.0;
    double std_error = 0.0;
    int k_lo = 0;
    int k_hi = 0;
    std::size_t n_paths = 1;
};

/// Least-squares slope of log2 N_k against k over the fit window. Throws
/// ResolutionError when fewer than 4 scales remain.
DimEstimate fit_dimension(const BoxCountCurve& curve, const FitPolicy& policy = {});

/// CSV with columns k, N_k.
std::string to_csv(const BoxCountCurve& curve);

/// Reads a header row followed by comma-separated coordinates.
PointCloud read_point_cloud_csv(const std::string& text);

}  // namespace ctrw
