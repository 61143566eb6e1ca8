#include "ctrw/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctrw/error.hpp"

namespace ctrw {

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ParameterError("KS statistic needs two non-empty samples");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double ks_critical_value(double level, std::size_t n, std::size_t m) {
    if (!(level > 0.0 && level < 1.0) || n == 0 || m == 0) throw ParameterError("bad KS level or sample size");
    const double c = std::sqrt(-0.5 * std::log(0.5 * level));
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double level) {
    return {ks_statistic(a, b), ks_critical_value(level, a.size(), b.size())};
}

}  // namespace ctrw
