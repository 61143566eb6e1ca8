#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "near.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ctrw/boxcount.hpp"
#include "ctrw/error.hpp"
#include "ctrw/monte_carlo.hpp"
#include "ctrw/paths.hpp"

using namespace ctrw;

namespace {

BoxCountCurve synthetic(int k_lo, int k_hi, double slope) {
    BoxCountCurve c;
    for (int k = k_lo; k <= k_hi; ++k) {
        c.scales.push_back(k);
        c.counts.push_back(static_cast<std::size_t>(std::llround(std::exp2(slope * k))));
    }
    c.points = c.distinct_points = c.counts.back() * 1000;
    return c;
}

PointCloud line_cloud(std::size_t n) {
    PointCloud c{1, {}};
    for (std::size_t i = 0; i < n; ++i) c.coords.push_back(static_cast<double>(i) / static_cast<double>(n));
    return c;
}

PointCloud brownian_graph(std::size_t n, std::uint64_t seed) {
    RandomStream s(seed, 0);
    const auto p = simulate_model(ModelSpec{BrownianOuter{1}, NoTimeChange{}}, n, s);
    return extract_graph(p.process);
}

}  // namespace

TEST_CASE("line and plane counts") {
    const auto line = box_count(line_cloud(1000), 0, 14);
    for (std::size_t i = 0; i < line.scales.size(); ++i) {
        CHECK(line.counts[i] == std::min<std::size_t>(std::size_t{1} << line.scales[i], 1000));
    }
    PointCloud square{2, {}};
    for (int i = 0; i < 256; ++i) {
        for (int j = 0; j < 256; ++j) {
            square.coords.push_back(i / 256.0);
            square.coords.push_back(j / 256.0);
        }
    }
    const auto plane = box_count(square, 0, 8);
    for (std::size_t i = 0; i < plane.scales.size(); ++i) CHECK(plane.counts[i] == std::size_t{1} << (2 * plane.scales[i]));

    const auto single = box_count(PointCloud{3, {0.3, -0.2, 0.7}}, 0, 30);
    CHECK(std::all_of(single.counts.begin(), single.counts.end(), [](std::size_t c) { return c == 1; }));
    CHECK(single.distinct_points == 1);
}

TEST_CASE("boxes are half-open and anchored at the origin") {
    const auto c = box_count(PointCloud{1, {-0.5, -1e-12, 0.0, 0.5, 1.0}}, 0, 1);
    CHECK(c.counts[0] == 3);  // [-1, 0), [0, 1), [1, 2)
    CHECK(c.counts[1] == 4);  // [-1/2, 0) twice, [0, 1/2), [1/2, 1), [1, 3/2)
}

TEST_CASE("slope fits on exact curves") {
    const auto one = fit_dimension(synthetic(2, 12, 1.0), {.min_count = 0, .saturation_divisor = 1});
    CHECK_NEAR(one.slope, 1.0, 0.001);
    CHECK(one.k_lo == 2);
    CHECK(one.k_hi == 12);
    CHECK(one.std_error < 1e-9);
    CHECK_NEAR(fit_dimension(synthetic(1, 10, 2.0)).slope, 2.0, 1e-9);
    CHECK_NEAR(fit_dimension(synthetic(1, 20, 1.4)).slope, 1.4, 0.01);
}

TEST_CASE("fit window follows the policy") {
    const auto c = synthetic(0, 20, 1.0);
    const auto automatic = fit_dimension(c);
    CHECK(std::exp2(automatic.k_lo) >= 100.0);
    CHECK(std::exp2(automatic.k_lo - 1) < 100.0);
    const auto fixed = fit_dimension(c, {.k_lo = 3, .k_hi = 9});
    CHECK(fixed.k_lo == 3);
    CHECK(fixed.k_hi == 9);
    CHECK_THROWS_AS(fit_dimension(c, {.k_lo = 3, .k_hi = 5}), ResolutionError);
    CHECK_THROWS_AS(fit_dimension(box_count(line_cloud(50), 0, 12)), ResolutionError);
}

TEST_CASE("counts are monotone and subadditive") {
    const auto a = brownian_graph(1 << 14, 1);
    const auto b = brownian_graph(1 << 14, 2);
    PointCloud both = a;
    both.coords.insert(both.coords.end(), b.coords.begin(), b.coords.end());
    PointCloud half{2, {a.coords.begin(), a.coords.begin() + static_cast<std::ptrdiff_t>(a.coords.size() / 2)}};
    const auto ca = box_count(a, 0, 24), cb = box_count(b, 0, 24), cu = box_count(both, 0, 24), ch = box_count(half, 0, 24);
    bool nondecreasing = true, subadditive = true, subset = true, bounded = true;
    for (std::size_t i = 0; i < ca.counts.size(); ++i) {
        if (i > 0 && ca.counts[i] < ca.counts[i - 1]) nondecreasing = false;
        if (cu.counts[i] > ca.counts[i] + cb.counts[i]) subadditive = false;
        if (ch.counts[i] > ca.counts[i] || ca.counts[i] > cu.counts[i]) subset = false;
        if (ca.counts[i] > ca.points) bounded = false;
    }
    CHECK(nondecreasing);
    CHECK(subadditive);
    CHECK(subset);
    CHECK(bounded);
}

TEST_CASE("translation changes the slope only slightly") {
    const auto cloud = brownian_graph(1 << 18, 3);
    const MonteCarloOptions options{.n = 1 << 18};
    const double base = estimate_cloud(cloud, 1 << 18, options).slope;
    RandomStream s(4, 0);
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        PointCloud moved = cloud;
        const double shift[2] = {s.uniform(), s.uniform()};
        for (std::size_t i = 0; i < moved.coords.size(); ++i) moved.coords[i] += shift[i % 2];
        worst = std::max(worst, std::abs(estimate_cloud(moved, 1 << 18, options).slope - base));
    }
    CHECK(worst < 0.02);
}

TEST_CASE("index overflow is rejected") {
    CHECK_THROWS_AS(box_count(PointCloud{1, {std::ldexp(1.0, 20)}}, 0, 21), ParameterError);
    CHECK_NOTHROW(box_count(PointCloud{1, {std::ldexp(1.0, 20) - 1.0}}, 0, 20));
    CHECK(max_supported_level(PointCloud{1, {-3.0, 2.0}}) == 37);
}

TEST_CASE("extractors") {
    GridPath flat(1.0 / 65536, 1, 65537);
    for (std::size_t i = 0; i < flat.size(); ++i) flat.at(i, 0) = 0.25;
    CHECK(count_distinct(extract_range(flat)) == 1);
    const auto graph = extract_graph(flat);
    CHECK(graph.dim == 2);
    CHECK(graph.size() == flat.size());
    CHECK_NEAR(fit_dimension(box_count(graph, 0, 24), {.min_count = 10}).slope, 1.0, 0.02);

    RandomStream s(5, 0);
    const auto bm = simulate_model(ModelSpec{BrownianOuter{1}, NoTimeChange{}}, 1 << 20, s).process;
    const auto range = extract_range(bm);
    const auto [lo, hi] = std::minmax_element(range.coords.begin(), range.coords.end());
    CHECK(range.size() == bm.size());
    CHECK(static_cast<double>(box_count(range, 0, 1).counts[0]) <= std::ceil(*hi - *lo) + 1.0);

    // Identity coupling: every value of X = D(E_t) is a value of D.
    ModelSpec identity{SubordinatorOuter{}, StableSubordinator{0.7}};
    identity.coupling = Coupling::identity;
    const auto ip = simulate_model(identity, 4096, s);
    const std::set<double> d_values(ip.subordinator->values.begin(), ip.subordinator->values.end());
    const auto ir = extract_range(ip.process);
    CHECK(std::all_of(ir.coords.begin(), ir.coords.end(), [&](double x) { return d_values.count(x) == 1; }));

    // Flats of E collapse to repeated points in the parametric set.
    const auto tp = simulate_model(ModelSpec{BrownianOuter{1}, StableSubordinator{0.6}}, 4096, s);
    const auto param = extract_parametric_set(*tp.time_change, tp.process);
    CHECK(param.size() == tp.process.size());
    const std::set<std::size_t> passages(tp.time_change->passage_index.begin(), tp.time_change->passage_index.end());
    CHECK(count_distinct(param) <= passages.size());
    CHECK(count_distinct(param) < param.size());

    TimeChange short_tc = *tp.time_change;
    short_tc.e_values.pop_back();
    short_tc.passage_index.pop_back();
    CHECK_THROWS(extract_parametric_set(short_tc, tp.process));
}

TEST_CASE("identity time change reproduces the graph") {
    RandomStream s(6, 0);
    const auto y = simulate_model(ModelSpec{BrownianOuter{1}, NoTimeChange{}}, 1024, s).process;
    TimeChange tc;
    tc.dt = tc.dx = y.dt;
    for (std::size_t i = 0; i < y.size(); ++i) {
        tc.passage_index.push_back(i);
        tc.e_values.push_back(static_cast<double>(i) * y.dt);
    }
    CHECK(extract_parametric_set(tc, y).coords == extract_graph(y).coords);
}

TEST_CASE("range never exceeds the graph on the same path") {
    const MonteCarloOptions options{.n = 1 << 18};
    for (const ModelSpec& spec : {ModelSpec{BrownianOuter{1}, StableSubordinator{0.8}},
                                  ModelSpec{StableLevyOuter{1.5, 1}, StableSubordinator{0.8}},
                                  ModelSpec{FbmOuter{0.6, 2}, StableSubordinator{0.8}}}) {
        RandomStream a(7, 0), b(7, 0);
        const auto range = estimate_cloud(simulate_target_cloud(spec, Target::range, options.n, a, options), options.n, options);
        const auto graph = estimate_cloud(simulate_target_cloud(spec, Target::graph, options.n, b, options), options.n, options);
        CAPTURE(describe(spec));
        CHECK(range.slope <= std::min(static_cast<double>(spatial_dim(spec)), graph.slope) + 0.05);
    }
}

TEST_CASE("left and right limit compositions agree") {
    MonteCarloOptions right{.paths = 4, .n = 1 << 16, .seed = 8};
    MonteCarloOptions left = right;
    left.left_limit = true;
    for (const ModelSpec& spec : {ModelSpec{BrownianOuter{1}, StableSubordinator{0.8}},
                                  ModelSpec{StableLevyOuter{1.5, 1}, StableSubordinator{0.6}}}) {
        const double r = monte_carlo_dimension(spec, Target::graph, right).estimate.slope;
        const double l = monte_carlo_dimension(spec, Target::graph, left).estimate.slope;
        CAPTURE(describe(spec));
        CHECK(std::abs(r - l) < 0.02);
    }
}

TEST_CASE("Monte Carlo aggregation") {
    const ModelSpec spec{BrownianOuter{1}, StableSubordinator{0.8}};
    MonteCarloOptions options{.paths = 3, .n = 1 << 16, .seed = 9};
    const auto one = monte_carlo_dimension(spec, Target::graph, options);
    options.workers = 3;
    const auto three = monte_carlo_dimension(spec, Target::graph, options);
    CHECK(one.slopes == three.slopes);
    CHECK(one.estimate.slope == three.estimate.slope);
    CHECK(one.estimate.n_paths == 3);
    double mean = 0.0;
    for (double s : one.slopes) mean += s / 3.0;
    CHECK_NEAR(one.estimate.slope, mean, 1e-12);
    CHECK_NEAR(one.theoretical, 1.4, 1e-12);
    CHECK_NEAR(one.gap, one.estimate.slope - 1.4, 1e-12);
    CHECK(!one.first_curve.counts.empty());
    CHECK_THROWS_AS(theoretical_target(ModelSpec{BrownianOuter{1}, MixtureSubordinator{{{0.5, 1.0}, {0.8, 1.0}}}},
                                       Target::z_range),
                    UnsupportedModelError);
}

TEST_CASE("documented Monte Carlo examples") {
    const MonteCarloOptions options{.paths = 20, .n = 1 << 20, .seed = 10};
    ModelSpec identity{SubordinatorOuter{}, StableSubordinator{0.7}};
    identity.coupling = Coupling::identity;
    CHECK_NEAR(monte_carlo_dimension(ModelSpec{BrownianOuter{1}, StableSubordinator{0.8}}, Target::graph, options).estimate.slope,
               1.4, 0.15);
    CHECK_NEAR(monte_carlo_dimension(identity, Target::range, options).estimate.slope, 0.7, 0.1);
    CHECK_NEAR(monte_carlo_dimension(ModelSpec{FbmOuter{0.3, 1}, StableSubordinator{0.8}}, Target::graph, options).estimate.slope,
               1.56, 0.15);
}
