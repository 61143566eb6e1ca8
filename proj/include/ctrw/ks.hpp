#pragma once

#include <cstddef>
#include <span>

namespace ctrw {

/// sup |F_a - F_b| of the two empirical distribution functions.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample critical value sqrt(-ln(level/2)/2) sqrt((n+m)/(nm)).
double ks_critical_value(double level, std::size_t n, std::size_t m);

struct KsResult {
    double statistic = 0.0;
    double critical = 0.0;
    bool rejects() const { return statistic > critical; }
};

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double level);

}  // namespace ctrw
