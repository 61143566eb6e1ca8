#include <cmath>
#include <sstream>
#include <string>

#include "ctrw/error.hpp"
#include "ctrw/paths.hpp"

namespace ctrw {

GridPath compose_time_change(const GridPath& outer, const TimeChange& tc, bool left_limit) {
    if (tc.size() == 0) throw CoverageError("empty time change");
    const std::size_t last = tc.passage_index.back();
    if (last >= outer.size()) {
        throw CoverageError("outer path has " + std::to_string(outer.size()) +
                            " points but the time change reaches index " + std::to_string(last));
    }
    if (std::abs(outer.dt - tc.dx) > 1e-12 * std::max(outer.dt, tc.dx)) {
        throw CoverageError("outer grid step does not match the subordinator grid step");
    }
    GridPath out(tc.dt, outer.dim, tc.size(), outer.meta + " o E");
    if (left_limit) out.meta += "-";
    for (std::size_t i = 0; i < tc.size(); ++i) {
        std::size_t j = tc.passage_index[i];
        if (left_limit && i > 0 && j > tc.passage_index[i - 1]) --j;
        const auto src = outer.point(j);
        std::copy(src.begin(), src.end(), out.point(i).begin());
    }
    return out;
}

namespace {

std::size_t fbm_points_covering(std::size_t needed) {
    std::size_t intervals = 1;
    while (intervals + 1 < needed) intervals <<= 1;
    return intervals + 1;
}

GridPath simulate_outer(const OuterModel& outer, std::size_t n_points, double dx, RandomStream& stream) {
    if (const auto* s = std::get_if<StableLevyOuter>(&outer)) {
        return simulate_levy_outer(s->alpha, s->dim, n_points, dx, stream);
    }
    if (const auto* b = std::get_if<BrownianOuter>(&outer)) {
        auto path = simulate_levy_outer(2.0, b->dim, n_points, dx, stream);
        path.meta = "brownian(d=" + std::to_string(b->dim) + ")";
        return path;
    }
    if (const auto* f = std::get_if<FbmOuter>(&outer)) {
        return simulate_fbm_outer(f->hurst, f->dim, fbm_points_covering(n_points), dx, stream);
    }
    throw UnsupportedModelError("outer process needs a coupling-specific simulator");
}

}  // namespace

ModelPaths simulate_model(const ModelSpec& spec, std::size_t n_intervals, RandomStream& stream,
                          const SimulationOptions& options) {
    validate(spec);
    if (n_intervals == 0) throw ParameterError("n_intervals must be positive");
    const double dt = spec.horizon / static_cast<double>(n_intervals);
    const double dx = options.dx > 0.0 ? options.dx : dt;
    ModelPaths out;

    if (std::holds_alternative<NoTimeChange>(spec.inner)) {
        out.outer = simulate_outer(spec.outer, n_intervals + 1, dt, stream);
        out.process = out.outer;
        out.process.meta = out.outer.meta;
        return out;
    }

    switch (spec.coupling) {
        case Coupling::shlesinger: {
            const double beta = std::get<StableSubordinator>(spec.inner).beta;
            auto coupled = simulate_coupled_shlesinger(beta, spec.horizon, dx, stream);
            out.subordinator = std::move(coupled.subordinator);
            out.outer = std::move(coupled.outer);
            break;
        }
        case Coupling::identity: {
            out.subordinator = simulate_subordinator(spec.inner, spec.horizon, dx, stream);
            out.outer = GridPath(dx, 1, 0, "subordinator");
            out.outer.coords = out.subordinator->values;
            break;
        }
        case Coupling::uncoupled: {
            out.subordinator = simulate_subordinator(spec.inner, spec.horizon, dx, stream);
            break;
        }
    }
    out.time_change = invert_subordinator(*out.subordinator, dt, spec.horizon);
    if (spec.coupling == Coupling::uncoupled) {
        const std::size_t needed = out.time_change->passage_index.back() + 1;
        out.outer = simulate_outer(spec.outer, needed, dx, stream);
    }
    out.process = compose_time_change(out.outer, *out.time_change, options.left_limit);
    out.process.meta = describe(spec);
    return out;
}

}  // namespace ctrw
