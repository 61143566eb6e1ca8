// Acceptance checks: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: acceptance [scratch_dir]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ctrw/boxcount.hpp"
#include "ctrw/config.hpp"
#include "ctrw/exponent.hpp"
#include "ctrw/harness.hpp"
#include "ctrw/integral_criteria.hpp"
#include "ctrw/ks.hpp"
#include "ctrw/monte_carlo.hpp"
#include "ctrw/paths.hpp"
#include "ctrw/random.hpp"
#include "ctrw/theory.hpp"

using namespace ctrw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ModelSpec uncoupled(OuterModel outer, InnerModel inner) {
    ModelSpec s;
    s.outer = std::move(outer);
    s.inner = std::move(inner);
    return s;
}

struct MeanErr {
    double mean, err;
};

MeanErr mean_err(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return {m, std::sqrt(ss / (n - 1) / n)};
}

// Suite results shared by criteria 2-7 and 13.
struct SuiteRuns {
    std::map<std::pair<std::string, std::string>, ReportRow> rows;
    std::string csv_first, csv_second, csv_one_worker;
    std::string error;
    double seconds = 0.0;

    const ReportRow* row(const std::string& experiment, const std::string& target) const {
        const auto it = rows.find({experiment, target});
        return it == rows.end() ? nullptr : &it->second;
    }
};

SuiteRuns run_suite(const fs::path& scratch) {
    SuiteRuns s;
    const auto t0 = Clock::now();
    try {
        auto config = load_config(std::string(CTRW_SOURCE_DIR) + "/configs/suite.json");
        RunOptions run;
        run.resume = false;
        auto once = [&](const std::string& dir, unsigned workers) {
            config.output_dir = (scratch / dir).string();
            run.workers = workers;
            const auto report = run_experiments(config, run);
            return std::pair{report, read_text_file((scratch / dir / "report.csv").string())};
        };
        auto [report, csv] = once("suite_w8_a", 8);
        for (const auto& r : report.rows) s.rows[{r.experiment, r.target}] = r;
        s.csv_first = csv;
        s.csv_second = once("suite_w8_b", 8).second;
        s.csv_one_worker = once("suite_w1", 1).second;
    } catch (const std::exception& e) {
        s.error = e.what();
    }
    s.seconds = seconds_since(t0);
    return s;
}

// Checks one suite row against its closed form and an absolute tolerance.
void check_row(Outcome& o, const SuiteRuns& s, const std::string& experiment, const std::string& target,
               double expected, double tolerance) {
    const ReportRow* r = s.row(experiment, target);
    if (!r) {
        o.require(false, experiment + "/" + target + " missing");
        return;
    }
    o.detail << ' ' << experiment << '/' << target << '=' << r->estimate << " (theory " << expected << ')';
    o.require(r->status == RowStatus::pass || r->status == RowStatus::fail, experiment + "/" + target + ": " + r->message);
    o.require(std::abs(r->theoretical - expected) < 1e-12, experiment + "/" + target + " theory value");
    o.require(std::abs(r->estimate - expected) <= tolerance, experiment + "/" + target + " outside tolerance");
}

Outcome criterion_theory() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t checks = 0;
    auto same = [&](double got, double want, const std::string& what) {
        ++checks;
        o.require(std::abs(got - want) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(want)), what);
    };
    const std::vector<double> betas{0.1, 0.3, 0.5, 0.7, 0.8, 0.95};
    for (double beta : betas) {
        for (double alpha : {0.3, 0.7, 1.0, 1.2, 1.5, 1.9, 2.0}) {
            for (std::size_t d : {1u, 2u, 3u}) {
                const double dd = static_cast<double>(d);
                const auto r = alpha == 2.0 ? theoretical_dimensions(uncoupled(BrownianOuter{d}, StableSubordinator{beta}))
                                            : theoretical_dimensions(uncoupled(StableLevyOuter{alpha, d}, StableSubordinator{beta}));
                same(r.range_hausdorff.value, std::min(dd, alpha), "range min{d, alpha}");
                if (alpha > dd) {
                    same(r.graph_hausdorff.value, 1.0 + beta * (1.0 - 1.0 / alpha), "graph 1 + beta (1 - 1/alpha)");
                    same(r.parametric_set->value, 2.0 - 1.0 / alpha, "parametric 2 - 1/alpha");
                } else {
                    same(r.graph_hausdorff.value, std::max(1.0, alpha), "graph max{1, alpha}");
                }
                if (alpha == 2.0) same(r.graph_hausdorff.value, d == 1 ? 1.0 + beta / 2.0 : 2.0, "brownian graph");
            }
        }
        ModelSpec identity{SubordinatorOuter{}, StableSubordinator{beta}, Coupling::identity};
        const auto id = theoretical_dimensions(identity);
        same(id.range_hausdorff.value, beta, "identity range");
        same(id.graph_hausdorff.value, 1.0, "identity graph");
        same(theoretical_dimensions(shlesinger_model(beta)).graph_hausdorff.value, std::max(1.0, beta + 0.5),
             "shlesinger graph");
        for (double low : {0.05, 0.5 * beta}) {
            for (double alpha : {1.2, 1.7, 2.0}) {
                const auto m = theoretical_dimensions(
                    uncoupled(StableLevyOuter{alpha, 1}, MixtureSubordinator{{{low, 1.0}, {beta, 2.0}}}));
                same(m.graph_hausdorff.value, 1.0 + beta * (1.0 - 1.0 / alpha), "mixture graph");
            }
        }
        for (double h : {0.1, 0.3, 0.45, 0.6, 0.9}) {
            for (std::size_t d : {1u, 2u}) {
                const double dd = static_cast<double>(d);
                const auto f = theoretical_dimensions(uncoupled(FbmOuter{h, d}, StableSubordinator{beta}));
                same(f.range_hausdorff.value, std::min(dd, 1.0 / h), "fbm range");
                if (h * dd < 1.0) same(f.graph_hausdorff.value, beta + (1.0 - h * beta) * dd, "fbm graph");
            }
        }
    }
    const double t = seconds_since(t0);
    o.require(t < 1.0, "runtime");
    o.detail << ' ' << checks << " closed forms in " << t << " s";
    return o;
}

Outcome criterion_shlesinger_transform() {
    Outcome o;
    const double beta = 0.8;
    for (auto [eta, xi] : {std::pair{0.0, 1.0}, std::pair{1.0, 0.0}, std::pair{0.5, 0.7}}) {
        RandomStream s(505, static_cast<std::uint64_t>(eta * 10 + xi * 100));
        std::vector<double> v(10000);
        for (auto& x : v) {
            const auto p = simulate_coupled_shlesinger_steps(beta, 8, 0.125, s);
            x = std::cos(xi * p.outer.at(8, 0)) * std::exp(-eta * p.subordinator.values.back());
        }
        const auto m = mean_err(v);
        const double want = std::exp(-std::pow(eta + xi * xi, beta));
        o.detail << " (" << eta << ',' << xi << "): " << m.mean << " vs " << want;
        o.require(std::abs(m.mean - want) < 3 * m.err, "transform at a grid point");
    }
    return o;
}

Outcome criterion_integrals() {
    Outcome o;
    const auto t0 = Clock::now();
    struct RangeCase {
        double alpha;
        std::size_t d;
    };
    for (auto [alpha, d] : {RangeCase{0.6, 1}, RangeCase{0.8, 1}, RangeCase{1.5, 1}, RangeCase{2.0, 1}, RangeCase{1.5, 2}}) {
        const double got = range_dim_by_integral(StableRadialExponent{alpha, d}, d).gamma_star;
        const double want = std::min(static_cast<double>(d), alpha);
        o.detail << " range(" << alpha << ',' << d << ")=" << got;
        o.require(std::abs(got - want) <= 0.05, "range integral");
    }
    struct GraphCase {
        MixtureSubordinatorExponent sigma;
        double alpha;
        double want;
    };
    const std::vector<GraphCase> graphs{
        {{{{0.8, 1.0}}}, 2.0, 1.4},
        {{{{0.5, 1.0}, {0.8, 1.0}}}, 2.0, 1.4},
        {{{{0.8, 1.0}}}, 0.5, 1.0},
        {{{{0.6, 1.0}}}, 1.5, 1.0 + 0.6 / 3.0},
        {{{{0.3, 1.0}, {0.7, 1.0}}}, 1.8, 1.0 + 0.7 * (1.0 - 1.0 / 1.8)},
    };
    for (const auto& g : graphs) {
        const double got = graph_dim_by_integral(g.sigma, {g.alpha, 1}).gamma_star;
        o.detail << " graph=" << got << '/' << g.want;
        o.require(std::abs(got - g.want) <= 0.05, "graph integral");
    }
    // Radii deep enough for the leading power of W to dominate.
    const auto radii = log_grid(std::ldexp(1.0, -40), std::ldexp(1.0, -30), 6);
    struct PackCase {
        double alpha;
        std::size_t d;
    };
    for (auto [alpha, d] : {PackCase{0.8, 1}, PackCase{0.5, 1}, PackCase{1.5, 2}}) {
        const auto w = packing_profile(StableRadialExponent{alpha, d}, radii);
        const double got = packing_index(radii, w, d);
        const double want = std::min(static_cast<double>(d), alpha);
        o.detail << " packing(" << alpha << ',' << d << ")=" << got;
        o.require(std::abs(got - want) <= 0.05, "packing slope");
    }
    const double t = seconds_since(t0);
    o.detail << " in " << t << " s";
    o.require(t < 60.0, "runtime");
    return o;
}

Outcome criterion_sandwich() {
    Outcome o;
    const auto grid = log_grid(1.0, 1e6, 25);
    const std::vector<SumExponent> cases{
        {{{{0.5, 1.0}}}, {2.0, 1}},
        {{{{0.5, 1.0}, {0.8, 1.0}}}, {2.0, 1}},
        {{{{0.3, 1.0}, {0.8, 2.0}}}, {1.5, 1}},
        {{{{0.2, 0.5}, {0.6, 1.0}, {0.9, 1.0}}}, {0.8, 1}},
    };
    for (const auto& c : cases) {
        const auto r = sandwich_check(c, grid, grid);
        o.detail << " K=" << r.k_empirical;
        o.require(r.all_finite, "finite ratios");
        o.require(r.real_part_nonnegative, "nonnegative real part");
        o.require(r.passes(100.0), "K <= 100");
    }
    return o;
}

Outcome criterion_inverse() {
    Outcome o;
    bool identities = true;
    for (std::uint64_t p = 0; p < 100; ++p) {
        RandomStream s(1010, p);
        const auto d = simulate_subordinator(StableSubordinator{0.7}, 1.0, 1e-4, s);
        const double dt = 1e-3;
        const auto tc = invert_subordinator(d, dt, 1.0);
        for (std::size_t i = 0; i < tc.size(); ++i) {
            identities = identities && d.values[tc.passage_index[i]] >= static_cast<double>(i) * dt;
        }
        for (std::size_t j = 0; j < d.size() && d.values[j] <= 1.0; ++j) {
            identities = identities && passage_index_at(d, d.values[j]) == j;
        }
    }
    o.require(identities, "E(D(x)) = x and D(E_t) >= t");
    o.detail << " grid identities on 100 paths: " << (identities ? "hold" : "violated");

    const std::size_t reps = 10000;
    const double beta = 0.7, alpha = 1.5;
    RandomStream s(1011, 0);
    std::vector<double> d4(reps), d1(reps);
    for (auto& v : d4) v = simulate_subordinator_steps(StableSubordinator{beta}, 8, 0.5, s).values.back() / std::pow(4.0, 1.0 / beta);
    for (auto& v : d1) v = simulate_subordinator_steps(StableSubordinator{beta}, 8, 0.125, s).values.back();
    const auto kd = ks_two_sample(d4, d1, 0.01);

    ModelSpec spec = uncoupled(StableLevyOuter{alpha, 1}, StableSubordinator{beta});
    std::vector<double> e2(reps), e1(reps), x2(reps), x1(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        spec.horizon = 2.0;
        const auto p2 = simulate_model(spec, 64, s, {1.0 / 256, false});
        e2[r] = p2.time_change->e_values.back() / std::pow(2.0, beta);
        x2[r] = p2.process.at(p2.process.size() - 1, 0) / std::pow(2.0, beta / alpha);
        spec.horizon = 1.0;
        const auto p1 = simulate_model(spec, 32, s, {1.0 / 512, false});
        e1[r] = p1.time_change->e_values.back();
        x1[r] = p1.process.at(p1.process.size() - 1, 0);
    }
    const auto ke = ks_two_sample(e2, e1, 0.01), kx = ks_two_sample(x2, x1, 0.01);
    o.detail << "; KS D " << kd.statistic << ", E " << ke.statistic << ", X " << kx.statistic << " (1% critical "
             << kd.critical << ')';
    o.require(!kd.rejects(), "D self-similarity");
    o.require(!ke.rejects(), "E self-similarity");
    o.require(!kx.rejects(), "X self-similarity");
    return o;
}

Outcome criterion_convergence() {
    Outcome o;
    const auto rows = convergence_study(ParetoWaiting{0.8}, {1e2, 1e3, 1e4}, 10000, 1111);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        o.detail << " c=" << rows[i].c << ": " << rows[i].ks;
        if (i > 0) o.require(rows[i].ks <= rows[i - 1].ks, "nonincreasing in c");
    }
    o.require(rows.back().ks < 0.05, "KS < 0.05 at c = 1e4");
    return o;
}

Outcome criterion_calibration() {
    Outcome o;
    PointCloud line{2, {}};
    for (std::size_t i = 0; i < (std::size_t{1} << 20); ++i) {
        const double x = static_cast<double>(i) / (1 << 20);
        line.coords.insert(line.coords.end(), {x, 0.5 * x});
    }
    const double line_slope = fit_dimension(box_count(line, 0, 28)).slope;

    PointCloud square{2, {}};
    for (int i = 0; i < 1024; ++i) {
        for (int j = 0; j < 1024; ++j) square.coords.insert(square.coords.end(), {i / 1024.0, j / 1024.0});
    }
    const double square_slope = fit_dimension(box_count(square, 0, 16)).slope;

    MonteCarloOptions mc;
    mc.seed = 1212;
    const auto bm = monte_carlo_dimension(uncoupled(BrownianOuter{1}, NoTimeChange{}), Target::graph, mc);

    BoxCountCurve synthetic;
    for (int k = 0; k <= 24; ++k) {
        synthetic.scales.push_back(k);
        synthetic.counts.push_back(static_cast<std::size_t>(std::llround(std::exp2(1.4 * k))));
    }
    synthetic.points = synthetic.distinct_points = synthetic.counts.back() * 10;
    const double synthetic_slope = fit_dimension(synthetic).slope;

    o.detail << " line " << line_slope << ", square " << square_slope << ", brownian graph " << bm.estimate.slope
             << ", synthetic " << synthetic_slope;
    o.require(std::abs(line_slope - 1.0) <= 0.02, "line");
    o.require(std::abs(square_slope - 2.0) <= 0.05, "square");
    o.require(std::abs(bm.estimate.slope - 1.5) <= 0.1, "brownian graph");
    o.require(std::abs(synthetic_slope - 1.4) <= 0.01, "synthetic curve");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "ctrw_acceptance";
    fs::create_directories(scratch);
    int failures = 0;
    auto report = [&](int id, const std::function<Outcome()>& check) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        if (!o.pass) ++failures;
        std::printf("AC%-2d %s (%.1f s)%s\n", id, o.pass ? "PASS" : "FAIL", seconds_since(t0), o.detail.str().c_str());
        std::fflush(stdout);
    };

    report(1, criterion_theory);

    SuiteRuns suite;
    const auto suite_t0 = Clock::now();
    suite = run_suite(scratch);
    std::printf("suite: three runs in %.1f s%s\n", seconds_since(suite_t0), suite.error.empty() ? "" : (" error: " + suite.error).c_str());

    report(2, [&] {
        Outcome o;
        check_row(o, suite, "brownian_beta0.8", "graph", 1.4, 0.15);
        check_row(o, suite, "brownian_beta0.8", "parametric", 1.5, 0.15);
        const auto* g = suite.row("brownian_beta0.8", "graph");
        const auto* p = suite.row("brownian_beta0.8", "parametric");
        o.require(g && p && std::abs(g->estimate - p->estimate) >= 0.05, "graph and parametric estimates differ");
        return o;
    });
    report(3, [&] {
        Outcome o;
        check_row(o, suite, "stable_a1.5_beta0.8", "graph", 1.0 + 0.8 * (1.0 - 1.0 / 1.5), 0.15);
        check_row(o, suite, "stable_a1.5_beta0.8", "range", 1.0, 0.1);
        return o;
    });
    report(4, [&] {
        Outcome o;
        check_row(o, suite, "identity_beta0.7", "range", 0.7, 0.1);
        check_row(o, suite, "identity_beta0.7", "graph", 1.0, 0.1);
        return o;
    });
    report(5, [&] {
        Outcome o = criterion_shlesinger_transform();
        check_row(o, suite, "shlesinger_beta0.8", "graph", 1.3, 0.15);
        return o;
    });
    report(6, [&] {
        Outcome o;
        check_row(o, suite, "fbm_H0.3_beta0.8", "graph", 0.8 + (1.0 - 0.3 * 0.8), 0.15);
        check_row(o, suite, "fbm_H0.3_beta0.8", "range", 1.0, 0.1);
        check_row(o, suite, "fbm_H0.6_d2_beta0.8", "range", 1.0 / 0.6, 0.2);
        return o;
    });
    report(7, [&] {
        Outcome o;
        check_row(o, suite, "mixture_0.5_0.8", "graph", 1.4, 0.15);
        check_row(o, suite, "mixture_0.3_0.8", "graph", 1.4, 0.15);
        const auto* a = suite.row("mixture_0.5_0.8", "graph");
        const auto* b = suite.row("mixture_0.3_0.8", "graph");
        o.require(a && b && std::abs(a->estimate - b->estimate) < 0.05, "estimate depends on the lower index");
        return o;
    });
    report(8, criterion_integrals);
    report(9, criterion_sandwich);
    report(10, criterion_inverse);
    report(11, criterion_convergence);
    report(12, criterion_calibration);
    report(13, [&] {
        Outcome o;
        o.require(suite.error.empty(), "suite ran");
        o.require(!suite.csv_first.empty(), "report written");
        o.require(suite.csv_first == suite.csv_second, "repeat run identical");
        o.require(suite.csv_first == suite.csv_one_worker, "1 vs 8 workers identical");
        o.detail << ' ' << suite.rows.size() << " rows, " << suite.csv_first.size() << " bytes, compared 3 runs";
        return o;
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
