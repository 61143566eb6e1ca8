#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "near.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ctrw/error.hpp"
#include "ctrw/ks.hpp"
#include "ctrw/random.hpp"

using namespace ctrw;

namespace {

struct Moments {
    double mean;
    double stderr_of_mean;
};

template <class F>
Moments mean_of(const std::vector<double>& xs, F f) {
    double s = 0, s2 = 0;
    for (double x : xs) {
        const double v = f(x);
        s += v;
        s2 += v * v;
    }
    const double n = static_cast<double>(xs.size());
    const double m = s / n;
    return {m, std::sqrt((s2 / n - m * m) / n)};
}

double quantile(std::vector<double> xs, double p) {
    const auto k = static_cast<std::size_t>(p * static_cast<double>(xs.size() - 1));
    std::nth_element(xs.begin(), xs.begin() + static_cast<long>(k), xs.end());
    return xs[k];
}

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
    RandomStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    std::vector<std::uint64_t> va, vb, vc, vd;
    for (int i = 0; i < 1000; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        vd.push_back(d());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
}

TEST_CASE("uniform draws lie in the open unit interval with mean one half") {
    RandomStream s(1, 0);
    double sum = 0, lo = 1, hi = 0;
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK_NEAR(sum / 100000, 0.5, 0.005);
}

TEST_CASE("one-sided stable: empty request and parameter checks") {
    RandomStream s(1, 0);
    CHECK(sample_one_sided_stable(0.5, 0, s).empty());
    CHECK_THROWS_AS(sample_one_sided_stable(0.0, 10, s), ParameterError);
    CHECK_THROWS_AS(sample_one_sided_stable(1.0, 10, s), ParameterError);
}

TEST_CASE("one-sided stable Laplace transform at s = 1 is exp(-1)") {
    for (double beta : {0.3, 0.5, 0.8}) {
        RandomStream s(7, static_cast<std::uint64_t>(beta * 100));
        const auto xs = sample_one_sided_stable(beta, 1000000, s);
        CHECK(*std::min_element(xs.begin(), xs.end()) > 0.0);
        const auto m = mean_of(xs, [](double x) { return std::exp(-x); });
        CHECK(std::abs(m.mean - std::exp(-1.0)) < 3 * m.stderr_of_mean);
        const auto m2 = mean_of(xs, [](double x) { return std::exp(-2.0 * x); });
        CHECK(std::abs(m2.mean - std::exp(-std::pow(2.0, beta))) < 3 * m2.stderr_of_mean);
    }
}

TEST_CASE("one-sided stable with beta = 1/2 has median from the erfc law") {
    // Root of erfc(1/(2 sqrt(x))) = 1/2.
    const double oracle = 1.0990546691588667;
    RandomStream s(11, 0);
    const auto xs = sample_one_sided_stable(0.5, 1000000, s);
    CHECK_NEAR(quantile(xs, 0.5), oracle, 0.011);
}

TEST_CASE("one-sided stable scaling: sum of c draws matches c^(1/beta) S") {
    const double beta = 0.6;
    const int c = 4;
    RandomStream s1(5, 1), s2(5, 2);
    std::vector<double> sums(100000), scaled(100000);
    for (auto& v : sums) {
        v = 0;
        for (int k = 0; k < c; ++k) v += draw_one_sided_stable(beta, s1);
    }
    for (auto& v : scaled) v = std::pow(c, 1.0 / beta) * draw_one_sided_stable(beta, s2);
    const auto ks = ks_two_sample(sums, scaled, 0.01);
    CHECK_FALSE(ks.rejects());
}

TEST_CASE("symmetric stable: alpha = 2 has variance 2") {
    RandomStream s(3, 0);
    const auto xs = sample_symmetric_stable(2.0, 1000000, s);
    const auto m = mean_of(xs, [](double x) { return x * x; });
    CHECK_NEAR(m.mean, 2.0, 0.02);
}

TEST_CASE("symmetric stable: alpha = 1 has interquartile range 2") {
    RandomStream s(3, 1);
    const auto xs = sample_symmetric_stable(1.0, 1000000, s);
    CHECK_NEAR(quantile(xs, 0.75) - quantile(xs, 0.25), 2.0, 0.04);
}

TEST_CASE("symmetric stable characteristic function at u = 1 is exp(-1)") {
    for (double alpha : {0.8, 1.0, 1.5, 2.0}) {
        RandomStream s(9, static_cast<std::uint64_t>(alpha * 10));
        const auto xs = sample_symmetric_stable(alpha, 1000000, s);
        const auto m = mean_of(xs, [](double x) { return std::cos(x); });
        CHECK(std::abs(m.mean - std::exp(-1.0)) < 3 * m.stderr_of_mean);
        const auto half = mean_of(xs, [](double x) { return std::cos(0.5 * x); });
        CHECK(std::abs(half.mean - std::exp(-std::pow(0.5, alpha))) < 3 * half.stderr_of_mean);
    }
    RandomStream s(1, 0);
    CHECK_THROWS_AS(sample_symmetric_stable(0.0, 1, s), ParameterError);
    CHECK_THROWS_AS(sample_symmetric_stable(2.5, 1, s), ParameterError);
}

TEST_CASE("triangular waiting times follow the conditional Pareto tail") {
    RandomStream s(4, 0);
    const auto w = sample_triangular_waiting(0.5, 1.0, 200000, s);
    CHECK(*std::min_element(w.begin(), w.end()) >= 1.0);
    const auto tail = mean_of(w, [](double x) { return x > 4.0 ? 1.0 : 0.0; });
    CHECK(std::abs(tail.mean - 0.5) < 3 * tail.stderr_of_mean);

    const auto w16 = sample_triangular_waiting(0.5, 16.0, 200000, s);
    CHECK(*std::min_element(w16.begin(), w16.end()) >= std::pow(16.0, -2.0));
    const auto tail16 = mean_of(w16, [](double x) { return x > 1.0 ? 1.0 : 0.0; });
    CHECK(std::abs(tail16.mean - 1.0 / 16.0) < 3 * tail16.stderr_of_mean);

    CHECK_THROWS_AS(sample_triangular_waiting(0.5, 0.0, 1, s), ParameterError);
}

TEST_CASE("mixture index draws") {
    RandomStream s(8, 0);
    const MixtureWeight single[] = {{0.7, 1.0}};
    bool always = true;
    for (int i = 0; i < 100; ++i) always = always && sample_mixture_index(single, s) == 0.7;
    CHECK(always);

    const MixtureWeight even[] = {{0.5, 0.5}, {0.8, 0.5}};
    std::vector<double> hits(100000);
    for (auto& h : hits) h = sample_mixture_index(even, s) == 0.5 ? 1.0 : 0.0;
    const auto f = mean_of(hits, [](double x) { return x; });
    CHECK(std::abs(f.mean - 0.5) < 3 * f.stderr_of_mean);

    const MixtureWeight skewed[] = {{0.3, 0.25}, {0.6, 0.75}};
    std::vector<double> draws(100000);
    for (auto& d : draws) d = sample_mixture_index(skewed, s);
    const auto m = mean_of(draws, [](double x) { return x; });
    CHECK(std::abs(m.mean - 0.525) < 3 * m.stderr_of_mean);

    const MixtureWeight bad[] = {{0.3, 0.5}, {0.6, 0.6}};
    CHECK_THROWS_AS(sample_mixture_index(bad, s), ParameterError);
}

TEST_CASE("KS statistic basics") {
    const std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4}, c{10, 11, 12, 13};
    CHECK(ks_statistic(a, b) == 0.0);
    CHECK(ks_statistic(a, c) == 1.0);
    CHECK_NEAR(ks_critical_value(0.01, 10000, 10000), 1.628 * std::sqrt(2.0 / 10000), 2e-5);
    CHECK_NEAR(ks_critical_value(0.05, 10000, 10000), 1.358 * std::sqrt(2.0 / 10000), 2e-5);
}
