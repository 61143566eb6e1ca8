#include "ctrw/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ctrw/error.hpp"

namespace ctrw {

std::string to_string(Target target) {
    switch (target) {
        case Target::range: return "range";
        case Target::graph: return "graph";
        case Target::parametric: return "parametric";
        case Target::z_range: return "z_range";
    }
    return "?";
}

Target parse_target(const std::string& name) {
    for (Target t : {Target::range, Target::graph, Target::parametric, Target::z_range}) {
        if (to_string(t) == name) return t;
    }
    throw ParameterError("unknown target '" + name + "'");
}

DimensionValue theoretical_target(const ModelSpec& spec, Target target) {
    const DimensionReport report = theoretical_dimensions(spec);
    switch (target) {
        case Target::range: return report.range_hausdorff;
        case Target::graph: return report.graph_hausdorff;
        case Target::parametric:
            if (report.parametric_set) return *report.parametric_set;
            break;
        case Target::z_range:
            if (report.z_range) return *report.z_range;
            break;
    }
    throw UnsupportedModelError("no formula for the " + to_string(target) + " of " + describe(spec));
}

namespace {

GridPath z_outer(const ModelSpec& spec, std::size_t n, double dx, RandomStream& stream) {
    if (const auto* s = std::get_if<StableLevyOuter>(&spec.outer)) {
        return simulate_levy_outer(s->alpha, s->dim, n + 1, dx, stream);
    }
    if (const auto* b = std::get_if<BrownianOuter>(&spec.outer)) {
        return simulate_levy_outer(2.0, b->dim, n + 1, dx, stream);
    }
    if (const auto* f = std::get_if<FbmOuter>(&spec.outer)) {
        return simulate_fbm_outer(f->hurst, f->dim, n + 1, dx, stream);
    }
    throw UnsupportedModelError("Z-range needs an independent outer process");
}

}  // namespace

namespace {

void append_operational_points(PointCloud& cloud, const ModelPaths& paths, Target target, bool left_limit) {
    const TimeChange& tc = *paths.time_change;
    const SubordinatorPath& d = *paths.subordinator;
    const GridPath& y = paths.outer;
    const std::size_t last = tc.passage_index.back();
    for (std::size_t j = 0; j < last; ++j) {
        if (target == Target::graph) cloud.coords.push_back(d.values[j]);
        if (target == Target::parametric) cloud.coords.push_back(static_cast<double>(j) * tc.dx);
        const std::size_t src = left_limit && target == Target::graph && j > 0 ? j - 1 : j;
        const auto p = y.point(src);
        cloud.coords.insert(cloud.coords.end(), p.begin(), p.end());
    }
}

}  // namespace

PointCloud simulate_target_cloud(const ModelSpec& spec, Target target, std::size_t n, RandomStream& stream,
                                 const MonteCarloOptions& mc) {
    if (!(mc.refinement >= 1.0)) throw ParameterError("refinement must be >= 1");
    SimulationOptions options;
    options.dx = spec.horizon / static_cast<double>(n) / mc.refinement;
    options.left_limit = mc.left_limit;
    if (target == Target::z_range) {
        validate(spec);
        if (std::holds_alternative<NoTimeChange>(spec.inner)) {
            throw UnsupportedModelError("Z-range needs a subordinator");
        }
        const double dx = spec.horizon / static_cast<double>(n);
        if (spec.coupling == Coupling::shlesinger) {
            const double beta = std::get<StableSubordinator>(spec.inner).beta;
            auto coupled = simulate_coupled_shlesinger_steps(beta, n, dx, stream);
            return extract_z_range(coupled.subordinator, coupled.outer);
        }
        if (spec.coupling == Coupling::identity) {
            auto d = simulate_subordinator_steps(spec.inner, n, dx, stream);
            GridPath outer(dx, 1, d.size());
            outer.coords = d.values;
            return extract_z_range(d, outer);
        }
        auto d = simulate_subordinator_steps(spec.inner, n, dx, stream);
        return extract_z_range(d, z_outer(spec, n, dx, stream));
    }
    const ModelPaths paths = simulate_model(spec, n, stream, options);
    PointCloud cloud;
    if (target == Target::range) {
        cloud = extract_range(paths.process);
    } else if (target == Target::graph || !paths.time_change) {
        // Without a time change E_t = t and the parametric set is the graph.
        cloud = extract_graph(paths.process);
    } else {
        cloud = extract_parametric_set(*paths.time_change, paths.process);
    }
    if (mc.operational_points && paths.time_change && paths.subordinator) {
        append_operational_points(cloud, paths, target, mc.left_limit);
    }
    return cloud;
}

DimEstimate estimate_cloud(const PointCloud& cloud, std::size_t n, const MonteCarloOptions& options,
                           BoxCountCurve* curve_out) {
    int k_max = options.k_max;
    if (k_max <= 0) k_max = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 8;
    k_max = std::min(k_max, max_supported_level(cloud));
    if (k_max <= options.k_min) throw ResolutionError("point cloud is too spread out for dyadic box counting");
    const BoxCountCurve curve = box_count(cloud, options.k_min, k_max);
    if (curve_out) *curve_out = curve;
    return fit_dimension(curve, options.fit);
}

MonteCarloResult monte_carlo_dimension(const ModelSpec& spec, Target target, const MonteCarloOptions& options) {
    validate(spec);
    if (options.paths == 0) throw ParameterError("need at least one path");
    const DimensionValue theory = theoretical_target(spec, target);

    std::vector<DimEstimate> per_path(options.paths);
    BoxCountCurve first_curve;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (!stop.load()) {
            const std::size_t p = next.fetch_add(1);
            if (p >= options.paths) return;
            try {
                if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
                    throw TimeoutError("wall-time budget exhausted after " + std::to_string(p) + " paths");
                }
                RandomStream stream(options.seed, p);
                const PointCloud cloud = simulate_target_cloud(spec, target, options.n, stream, options);
                per_path[p] = estimate_cloud(cloud, options.n, options, p == 0 ? &first_curve : nullptr);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                stop = true;
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(options.paths)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    MonteCarloResult result;
    result.theoretical = theory.value;
    result.provenance = theory.provenance;
    result.first_curve = std::move(first_curve);
    double mean = 0.0, m2 = 0.0;
    DimEstimate& est = result.estimate;
    est.k_lo = per_path.front().k_lo;
    est.k_hi = per_path.front().k_hi;
    for (std::size_t p = 0; p < per_path.size(); ++p) {
        const double x = per_path[p].slope;
        result.slopes.push_back(x);
        const double delta = x - mean;
        mean += delta / static_cast<double>(p + 1);
        m2 += delta * (x - mean);
        est.k_lo = std::min(est.k_lo, per_path[p].k_lo);
        est.k_hi = std::max(est.k_hi, per_path[p].k_hi);
    }
    const double m = static_cast<double>(per_path.size());
    est.slope = mean;
    est.std_error = per_path.size() > 1 ? std::sqrt(m2 / (m - 1.0) / m) : per_path.front().std_error;
    est.n_paths = per_path.size();
    result.gap = mean - theory.value;
    return result;
}

}  // namespace ctrw
