#include "ctrw/boxcount.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "ctrw/error.hpp"

namespace ctrw {

namespace {

constexpr int kIndexBits = 40;
constexpr std::uint64_t kBias = std::uint64_t{1} << kIndexBits;

void append(PointCloud& cloud, std::span<const double> head, std::span<const double> tail) {
    cloud.coords.insert(cloud.coords.end(), head.begin(), head.end());
    cloud.coords.insert(cloud.coords.end(), tail.begin(), tail.end());
}

int msb(std::uint64_t x) { return x == 0 ? -1 : 63 - std::countl_zero(x); }

}  // namespace

PointCloud extract_range(const GridPath& path) {
    if (path.size() == 0) throw ParameterError("empty path");
    return PointCloud{path.dim, path.coords};
}

PointCloud extract_graph(const GridPath& path) {
    if (path.size() == 0) throw ParameterError("empty path");
    PointCloud cloud{path.dim + 1, {}};
    cloud.coords.reserve(path.size() * cloud.dim);
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double t = static_cast<double>(i) * path.dt;
        append(cloud, std::span<const double>(&t, 1), path.point(i));
    }
    return cloud;
}

PointCloud extract_parametric_set(const TimeChange& tc, const GridPath& path) {
    if (tc.size() != path.size() || tc.size() == 0) throw ParameterError("time change and path grids differ");
    if (std::abs(tc.dt - path.dt) > 1e-12 * std::max(tc.dt, path.dt)) {
        throw ParameterError("time change and path use different steps");
    }
    PointCloud cloud{path.dim + 1, {}};
    cloud.coords.reserve(path.size() * cloud.dim);
    for (std::size_t i = 0; i < path.size(); ++i) {
        append(cloud, std::span<const double>(&tc.e_values[i], 1), path.point(i));
    }
    return cloud;
}

PointCloud extract_z_range(const SubordinatorPath& subordinator, const GridPath& outer) {
    const std::size_t n = std::min(subordinator.size(), outer.size());
    if (n == 0) throw ParameterError("empty subordinator or outer path");
    PointCloud cloud{outer.dim + 1, {}};
    cloud.coords.reserve(n * cloud.dim);
    for (std::size_t i = 0; i < n; ++i) {
        append(cloud, std::span<const double>(&subordinator.values[i], 1), outer.point(i));
    }
    return cloud;
}

std::size_t count_distinct(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        const auto pa = cloud.point(a), pb = cloud.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t distinct = n == 0 ? 0 : 1;
    for (std::size_t i = 1; i < n; ++i) distinct += less(order[i - 1], order[i]) ? 1 : 0;
    return distinct;
}

int max_supported_level(const PointCloud& cloud) {
    double extent = 1.0;
    for (double c : cloud.coords) extent = std::max(extent, std::abs(c));
    return kIndexBits - static_cast<int>(std::ceil(std::log2(extent))) - 1;
}

BoxCountCurve box_count(const PointCloud& cloud, int k_min, int k_max) {
    if (cloud.dim == 0 || cloud.size() == 0) throw ParameterError("point cloud is empty");
    if (k_min < 0 || k_min >= k_max) throw ParameterError("box_count needs 0 <= k_min < k_max");
    if (k_max > kIndexBits) throw ParameterError("k_max exceeds the supported index range");
    const double limit = std::ldexp(1.0, kIndexBits - k_max);
    const std::size_t n = cloud.size(), dim = cloud.dim;

    // Integer multi-indices at the finest level; coarser boxes are right shifts.
    std::vector<std::uint64_t> index(n * dim);
    for (std::size_t i = 0; i < n * dim; ++i) {
        const double c = cloud.coords[i];
        if (!std::isfinite(c)) throw ParameterError("point cloud has a non-finite coordinate");
        if (std::abs(c) >= limit) {
            throw ParameterError("coordinate " + std::to_string(c) + " exceeds 2^" +
                                 std::to_string(kIndexBits - k_max) + " at k_max = " + std::to_string(k_max));
        }
        index[i] = static_cast<std::uint64_t>(static_cast<std::int64_t>(std::floor(std::ldexp(c, k_max)))) + kBias;
    }

    // Z-order keeps every dyadic box contiguous at every level at once.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const std::uint64_t* pa = &index[a * dim];
        const std::uint64_t* pb = &index[b * dim];
        std::size_t lead = 0;
        std::uint64_t lead_xor = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            const std::uint64_t x = pa[c] ^ pb[c];
            if (lead_xor < x && lead_xor < (lead_xor ^ x)) {
                lead = c;
                lead_xor = x;
            }
        }
        return pa[lead] < pb[lead];
    });

    // Neighbours whose indices first differ at bit b lie in different boxes for all k >= k_max - b.
    std::vector<std::size_t> split_at_bit(kIndexBits + 2, 0);
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < n; ++i) {
        const std::uint64_t* pa = &index[order[i - 1] * dim];
        const std::uint64_t* pb = &index[order[i] * dim];
        int top = -1;
        for (std::size_t c = 0; c < dim; ++c) top = std::max(top, msb(pa[c] ^ pb[c]));
        if (top >= 0) ++split_at_bit[static_cast<std::size_t>(top)];
        const auto a = cloud.point(order[i - 1]), b = cloud.point(order[i]);
        if (!std::equal(a.begin(), a.end(), b.begin())) ++distinct;
    }

    BoxCountCurve curve;
    curve.points = n;
    curve.distinct_points = distinct;
    for (int k = k_min; k <= k_max; ++k) {
        std::size_t count = 1;
        for (int b = k_max - k; b <= kIndexBits + 1; ++b) count += split_at_bit[static_cast<std::size_t>(b)];
        curve.scales.push_back(k);
        curve.counts.push_back(count);
    }
    return curve;
}

DimEstimate fit_dimension(const BoxCountCurve& curve, const FitPolicy& policy) {
    if (curve.scales.size() != curve.counts.size()) throw ParameterError("malformed box-count curve");
    const double ceiling = static_cast<double>(curve.distinct_points) / policy.saturation_divisor;
    std::vector<double> ks, logs;
    for (std::size_t i = 0; i < curve.scales.size(); ++i) {
        const int k = curve.scales[i];
        const double nk = static_cast<double>(curve.counts[i]);
        bool keep;
        if (policy.k_lo || policy.k_hi) {
            keep = k >= policy.k_lo.value_or(curve.scales.front()) && k <= policy.k_hi.value_or(curve.scales.back());
        } else {
            keep = nk >= policy.min_count && nk <= ceiling;
        }
        if (keep) {
            ks.push_back(k);
            logs.push_back(std::log2(nk));
        }
    }
    if (ks.size() < 4) {
        throw ResolutionError("only " + std::to_string(ks.size()) +
                              " scales fall inside the fit window; increase the number of points");
    }
    const double m = static_cast<double>(ks.size());
    const double kbar = std::accumulate(ks.begin(), ks.end(), 0.0) / m;
    const double lbar = std::accumulate(logs.begin(), logs.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        sxx += (ks[i] - kbar) * (ks[i] - kbar);
        sxy += (ks[i] - kbar) * (logs[i] - lbar);
    }
    DimEstimate est;
    est.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double r = logs[i] - lbar - est.slope * (ks[i] - kbar);
        rss += r * r;
    }
    est.std_error = std::sqrt(rss / (m - 2.0) / sxx);
    est.k_lo = static_cast<int>(ks.front());
    est.k_hi = static_cast<int>(ks.back());
    return est;
}

std::string to_csv(const BoxCountCurve& curve) {
    std::string out = "k,N_k\n";
    for (std::size_t i = 0; i < curve.scales.size(); ++i) {
        out += std::to_string(curve.scales[i]) + "," + std::to_string(curve.counts[i]) + "\n";
    }
    return out;
}

PointCloud read_point_cloud_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    PointCloud cloud{0, {}};
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            cloud.dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::size_t fields = 0;
        while (std::getline(row, cell, ',')) {
            cloud.coords.push_back(std::stod(cell));
            ++fields;
        }
        if (fields != cloud.dim) throw ParameterError("row has " + std::to_string(fields) + " fields, expected " +
                                                      std::to_string(cloud.dim));
    }
    if (cloud.size() == 0) throw ParameterError("point cloud CSV has no rows");
    return cloud;
}

}  // namespace ctrw
