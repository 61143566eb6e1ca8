#include "ctrw/theory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ctrw/error.hpp"
#include "ctrw/paths.hpp"

namespace ctrw {

namespace {

DimensionReport same_hp(std::size_t d, DimensionValue range, DimensionValue graph) {
    DimensionReport r;
    r.dim = d;
    r.range_hausdorff = range;
    r.range_packing = range;
    r.graph_hausdorff = graph;
    r.graph_packing = std::move(graph);
    return r;
}

// Stable Levy outer process of index alpha in R^d under the inverse of a
// subordinator whose small-scale index is beta (beta_n for mixtures).
DimensionReport stable_time_change(double alpha, std::size_t d, double beta, bool mixture) {
    const double dd = static_cast<double>(d);
    const std::string prop = mixture ? "stable outer, mixture subordinator" : "stable outer, stable subordinator";
    DimensionValue range{std::min(dd, alpha), prop + ": min{d, alpha}"};
    DimensionValue graph;
    if (alpha <= dd) {
        graph = {std::max(1.0, alpha), prop + ": max{1, alpha} (alpha <= d)"};
    } else {
        graph = {1.0 + beta * (1.0 - 1.0 / alpha),
                 prop + (mixture ? ": 1 + beta_n (1 - 1/alpha) (alpha > d = 1)"
                                 : ": 1 + beta (1 - 1/alpha) (alpha > d = 1)")};
    }
    if (alpha == 2.0) {
        graph.provenance = d == 1 ? prop + ", Brownian case: 1 + beta/2 (d = 1)"
                                  : prop + ", Brownian case: 2 (d >= 2)";
        if (mixture && d == 1) graph.provenance = prop + ", Brownian case: 1 + beta_n/2 (d = 1)";
    }
    auto r = same_hp(d, range, graph);
    if (alpha <= dd) {
        r.parametric_set = DimensionValue{std::max(1.0, alpha), "parametric set = graph of Y: max{1, alpha} (alpha <= d)"};
    } else {
        r.parametric_set = DimensionValue{2.0 - 1.0 / alpha, "parametric set = graph of Y: 2 - 1/alpha (alpha > d = 1)"};
    }
    if (!mixture) {
        if (alpha <= beta) {
            r.z_range = DimensionValue{beta, "range of Z = (D, Y): beta (alpha <= beta)"};
        } else if (alpha <= dd) {
            r.z_range = DimensionValue{alpha, "range of Z = (D, Y): alpha (beta < alpha <= d)"};
        } else {
            r.z_range = DimensionValue{1.0 + beta * (1.0 - 1.0 / alpha),
                                       "range of Z = (D, Y): 1 + beta (1 - 1/alpha) (alpha > d = 1)"};
        }
    }
    return r;
}

DimensionReport fbm_time_change(double hurst, std::size_t d, double beta) {
    const double dd = static_cast<double>(d);
    DimensionValue range{std::min(dd, 1.0 / hurst), "fBm outer, stable subordinator: min{d, 1/H}"};
    DimensionValue graph = hurst * dd >= 1.0
                               ? DimensionValue{1.0 / hurst, "fBm outer, stable subordinator: 1/H (Hd >= 1)"}
                               : DimensionValue{beta + (1.0 - hurst * beta) * dd, "fBm outer, stable subordinator: beta + (1 - H beta) d (Hd < 1)"};
    auto r = same_hp(d, range, graph);
    r.z_range = DimensionValue{graph.value, "range of Z = (D, Y), fBm outer: same case split as the graph"};
    r.parametric_set = DimensionValue{std::min(1.0 / hurst, 1.0 + (1.0 - hurst) * dd),
                                      "parametric set = graph of fBm: min{1/H, 1 + (1 - H) d}"};
    return r;
}

DimensionReport outer_without_time_change(const ModelSpec& spec) {
    const std::size_t d = spatial_dim(spec);
    const double dd = static_cast<double>(d);
    double alpha = 0.0;
    if (const auto* s = std::get_if<StableLevyOuter>(&spec.outer)) alpha = s->alpha;
    if (std::holds_alternative<BrownianOuter>(spec.outer)) alpha = 2.0;
    if (const auto* f = std::get_if<FbmOuter>(&spec.outer)) {
        const double h = f->hurst;
        return same_hp(d, {std::min(dd, 1.0 / h), "uniform Holder index H: min{d, 1/H}"},
                       {std::min(1.0 / h, 1.0 + (1.0 - h) * dd), "uniform Holder index H: min{1/H, 1 + (1 - H) d}"});
    }
    if (alpha == 0.0) throw UnsupportedModelError("no formula for this outer process without time change");
    DimensionValue graph = alpha <= dd ? DimensionValue{std::max(1.0, alpha), "Gr Y: max{1, alpha} (alpha <= d)"}
                                       : DimensionValue{2.0 - 1.0 / alpha, "Gr Y: 2 - 1/alpha (alpha > d = 1)"};
    return same_hp(d, {std::min(dd, alpha), "range of stable Y: min{d, alpha}"}, graph);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

DimensionReport theoretical_dimensions(const ModelSpec& spec) {
    validate(spec);
    if (std::holds_alternative<NoTimeChange>(spec.inner)) return outer_without_time_change(spec);

    switch (spec.coupling) {
        case Coupling::identity: {
            if (!std::holds_alternative<StableSubordinator>(spec.inner)) {
                throw UnsupportedModelError("identity coupling is covered for a single stable subordinator only");
            }
            const double beta = std::get<StableSubordinator>(spec.inner).beta;
            auto r = same_hp(1, {beta, "identity coupling X = D(E_t): beta"}, {1.0, "identity coupling X = D(E_t): 1"});
            r.z_range = DimensionValue{beta, "range of Z = (D, D): beta"};
            return r;
        }
        case Coupling::shlesinger: {
            const double beta = std::get<StableSubordinator>(spec.inner).beta;
            const double alpha = 2.0 * beta;
            auto r = same_hp(1, {std::min(1.0, alpha), "Shlesinger coupling, range of Y preserved: min{1, 2 beta}"},
                             {std::max(1.0, beta + 0.5), "Shlesinger coupling: max{1, beta + 1/2}"});
            r.z_range = alpha <= 1.0 ? DimensionValue{alpha, "Shlesinger range of Z = (D, Y): 2 beta (2 beta <= 1)"}
                                     : DimensionValue{0.5 + beta, "Shlesinger range of Z = (D, Y): 1/2 + beta (2 beta > 1)"};
            r.parametric_set = alpha <= 1.0
                                   ? DimensionValue{1.0, "parametric set = graph of Y: max{1, alpha} (alpha = 2 beta <= 1)"}
                                   : DimensionValue{2.0 - 1.0 / alpha, "parametric set = graph of Y: 2 - 1/alpha (alpha = 2 beta > 1)"};
            return r;
        }
        case Coupling::uncoupled:
            break;
    }

    const bool mixture = std::holds_alternative<MixtureSubordinator>(spec.inner);
    const double beta = dominant_beta(spec.inner);
    const std::size_t d = spatial_dim(spec);
    if (const auto* s = std::get_if<StableLevyOuter>(&spec.outer)) return stable_time_change(s->alpha, d, beta, mixture);
    if (std::holds_alternative<BrownianOuter>(spec.outer)) return stable_time_change(2.0, d, beta, mixture);
    if (const auto* f = std::get_if<FbmOuter>(&spec.outer)) {
        if (mixture) throw UnsupportedModelError("fBm outer with a mixture subordinator is not covered");
        return fbm_time_change(f->hurst, d, beta);
    }
    throw UnsupportedModelError("model not covered: " + describe(spec));
}

std::vector<NamedModel> builtin_model_suite() {
    std::vector<NamedModel> suite;
    auto uncoupled = [](OuterModel outer, InnerModel inner) {
        ModelSpec spec;
        spec.outer = std::move(outer);
        spec.inner = std::move(inner);
        return spec;
    };
    suite.push_back({"brownian_d1_beta0.8", uncoupled(BrownianOuter{1}, StableSubordinator{0.8})});
    suite.push_back({"brownian_d2_beta0.8", uncoupled(BrownianOuter{2}, StableSubordinator{0.8})});
    suite.push_back({"stable_a1.5_d1_beta0.8", uncoupled(StableLevyOuter{1.5, 1}, StableSubordinator{0.8})});
    suite.push_back({"stable_a0.5_d1_beta0.8", uncoupled(StableLevyOuter{0.5, 1}, StableSubordinator{0.8})});
    suite.push_back({"stable_a1.5_d2_beta0.6", uncoupled(StableLevyOuter{1.5, 2}, StableSubordinator{0.6})});
    ModelSpec identity;
    identity.outer = SubordinatorOuter{};
    identity.inner = StableSubordinator{0.7};
    identity.coupling = Coupling::identity;
    suite.push_back({"identity_beta0.7", identity});
    suite.push_back({"shlesinger_beta0.8", shlesinger_model(0.8)});
    suite.push_back({"shlesinger_beta0.4", shlesinger_model(0.4)});
    suite.push_back({"mixture_0.5_0.8_brownian",
                     uncoupled(BrownianOuter{1}, MixtureSubordinator{{{0.5, 1.0}, {0.8, 1.0}}})});
    suite.push_back({"mixture_0.3_0.8_stable1.5",
                     uncoupled(StableLevyOuter{1.5, 1}, MixtureSubordinator{{{0.3, 1.0}, {0.8, 1.0}}})});
    suite.push_back({"fbm_H0.3_d1_beta0.8", uncoupled(FbmOuter{0.3, 1}, StableSubordinator{0.8})});
    suite.push_back({"fbm_H0.6_d2_beta0.8", uncoupled(FbmOuter{0.6, 2}, StableSubordinator{0.8})});
    suite.push_back({"fbm_H0.7_d1_beta0.5", uncoupled(FbmOuter{0.7, 1}, StableSubordinator{0.5})});
    return suite;
}

std::string report_csv(const DimensionReport& r) {
    std::ostringstream os;
    os << "quantity,value,provenance\n";
    auto row = [&](const char* name, const DimensionValue& v) {
        os << name << ',' << format_double(v.value) << ",\"" << v.provenance << "\"\n";
    };
    row("range_hausdorff", r.range_hausdorff);
    row("range_packing", r.range_packing);
    row("graph_hausdorff", r.graph_hausdorff);
    row("graph_packing", r.graph_packing);
    if (r.parametric_set) row("parametric_set", *r.parametric_set);
    if (r.z_range) row("z_range", *r.z_range);
    return os.str();
}

std::string report_text(const DimensionReport& r) {
    std::ostringstream os;
    auto row = [&](const char* name, const DimensionValue& v) {
        os << std::left << std::setw(18) << name << std::right << std::setw(10) << std::fixed
           << std::setprecision(6) << v.value << "  " << v.provenance << '\n';
    };
    row("range_hausdorff", r.range_hausdorff);
    row("range_packing", r.range_packing);
    row("graph_hausdorff", r.graph_hausdorff);
    row("graph_packing", r.graph_packing);
    if (r.parametric_set) row("parametric_set", *r.parametric_set);
    if (r.z_range) row("z_range", *r.z_range);
    return os.str();
}

}  // namespace ctrw
