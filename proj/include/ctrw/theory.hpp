#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctrw/model.hpp"

namespace ctrw {

struct DimensionValue {
    double value;
    std::string provenance;
};

/// Closed-form Hausdorff/packing dimensions of the range and graph of X = Y(E_t),
/// of the parametric set {(E_t, X(t))}, and of the range of Z = (D, Y).
struct DimensionReport {
    std::size_t dim = 1;
    DimensionValue range_hausdorff;
    DimensionValue range_packing;
    DimensionValue graph_hausdorff;
    DimensionValue graph_packing;
    std::optional<DimensionValue> parametric_set;
    std::optional<DimensionValue> z_range;
};

/// Throws UnsupportedModelError when no formula covers the model.
DimensionReport theoretical_dimensions(const ModelSpec& spec);

struct NamedModel {
    std::string name;
    ModelSpec spec;
};

/// Built-in suite spanning every formula family in the table.
std::vector<NamedModel> builtin_model_suite();

/// CSV with columns quantity, value, provenance.
std::string report_csv(const DimensionReport& report);

/// Aligned plain-text rendering.
std::string report_text(const DimensionReport& report);

}  // namespace ctrw
