#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctrw/error.hpp"
#include "ctrw/paths.hpp"

namespace ctrw {

namespace {

struct Component {
    double beta;
    double step_scale;  // d_k dx^{1/beta_k}
};

std::vector<Component> components(const InnerModel& inner, double dx) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw ParameterError("dx must be positive");
    std::vector<Component> out;
    for (const auto& atom : subordinator_atoms(inner)) {
        if (!(atom.beta > 0.0 && atom.beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
        if (!(atom.scale > 0.0)) throw ParameterError("mixture scale d_k must be positive");
        out.push_back({atom.beta, atom.scale * std::pow(dx, 1.0 / atom.beta)});
    }
    return out;
}

// Increments below one ulp of the running value are lifted to the next
// representable double so stored samples stay strictly increasing.
void append_steps(std::vector<double>& values, std::size_t steps,
                  const std::vector<Component>& parts, RandomStream& stream) {
    double current = values.back();
    for (std::size_t s = 0; s < steps; ++s) {
        double increment = 0.0;
        for (const auto& part : parts) increment += part.step_scale * draw_one_sided_stable(part.beta, stream);
        const double next = current + increment;
        current = next > current ? next : std::nextafter(current, std::numeric_limits<double>::infinity());
        values.push_back(current);
    }
}

}  // namespace

SubordinatorPath simulate_subordinator_steps(const InnerModel& inner, std::size_t steps, double dx,
                                             RandomStream& stream) {
    const auto parts = components(inner, dx);
    SubordinatorPath path{dx, {}};
    path.values.reserve(steps + 1);
    path.values.push_back(0.0);
    append_steps(path.values, steps, parts, stream);
    return path;
}

SubordinatorPath simulate_subordinator(const InnerModel& inner, double horizon, double dx,
                                       RandomStream& stream) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("horizon must be positive");
    const auto parts = components(inner, dx);
    SubordinatorPath path{dx, {0.0}};
    std::size_t block = 1024;
    while (path.values.back() <= horizon) {
        // Blocks are drawn one step at a time, so the result does not depend on block size
        // beyond where the loop stops; stop as soon as the horizon is passed.
        for (std::size_t s = 0; s < block && path.values.back() <= horizon; ++s) {
            append_steps(path.values, 1, parts, stream);
        }
        block = std::min<std::size_t>(block * 2, 1u << 22);
    }
    return path;
}

std::size_t passage_index_at(const SubordinatorPath& path, double t) {
    const auto it = std::lower_bound(path.values.begin(), path.values.end(), t);
    if (it == path.values.end()) {
        throw CoverageError("subordinator path ends at " + std::to_string(path.values.back()) +
                            ", below level " + std::to_string(t));
    }
    return static_cast<std::size_t>(it - path.values.begin());
}

TimeChange invert_subordinator(const SubordinatorPath& path, double dt, double horizon) {
    if (!(dt > 0.0)) throw ParameterError("dt must be positive");
    if (path.values.empty() || !(path.values.back() > horizon)) {
        throw CoverageError("subordinator path does not cover the horizon " + std::to_string(horizon));
    }
    const auto n_intervals = static_cast<std::size_t>(std::llround(horizon / dt));
    TimeChange tc;
    tc.dt = dt;
    tc.dx = path.dx;
    tc.e_values.resize(n_intervals + 1);
    tc.passage_index.resize(n_intervals + 1);
    std::size_t j = 0;
    for (std::size_t i = 0; i <= n_intervals; ++i) {
        const double t = static_cast<double>(i) * dt;
        while (j + 1 < path.values.size() && path.values[j] < t) ++j;
        if (path.values[j] < t) throw CoverageError("subordinator path does not cover the t-grid");
        tc.passage_index[i] = j;
        tc.e_values[i] = static_cast<double>(j) * path.dx;
    }
    return tc;
}

}  // namespace ctrw
