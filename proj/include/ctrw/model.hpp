#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace ctrw {

// Outer processes Y(x).
struct StableLevyOuter {
    double alpha = 2.0;
    std::size_t dim = 1;
};
struct BrownianOuter {
    std::size_t dim = 1;
};
struct FbmOuter {
    double hurst = 0.5;
    std::size_t dim = 1;
};
/// Y = D, the subordinator itself (identity coupling W_n = J_n).
struct SubordinatorOuter {};

using OuterModel = std::variant<StableLevyOuter, BrownianOuter, FbmOuter, SubordinatorOuter>;

// Inner processes: the subordinator D whose inverse is the time change.
struct StableSubordinator {
    double beta = 0.8;
};
struct MixtureAtom {
    double beta;
    double scale;  // d_k in D = sum_k d_k D_k
};
struct MixtureSubordinator {
    std::vector<MixtureAtom> atoms;  // strictly increasing beta
};
/// No time change: X = Y on the t-grid.
struct NoTimeChange {};

using InnerModel = std::variant<StableSubordinator, MixtureSubordinator, NoTimeChange>;

enum class Coupling { uncoupled, identity, shlesinger };

struct ModelSpec {
    OuterModel outer = BrownianOuter{};
    InnerModel inner = StableSubordinator{};
    Coupling coupling = Coupling::uncoupled;
    double horizon = 1.0;
};

/// Throws ParameterError when the spec violates a parameter range or the
/// coupling constraints (identity needs a subordinator outer; Shlesinger needs
/// d = 1, alpha = 2 beta and a single stable subordinator).
void validate(const ModelSpec& spec);

/// Spatial dimension d of Y.
std::size_t spatial_dim(const ModelSpec& spec);

/// Largest stability index of the inner subordinator (beta or beta_n).
double dominant_beta(const InnerModel& inner);

/// Mixture view of a stable or mixture inner model; throws for NoTimeChange.
std::vector<MixtureAtom> subordinator_atoms(const InnerModel& inner);

/// Short human-readable description, e.g. "brownian(d=1) o E[stable(0.8)]".
std::string describe(const ModelSpec& spec);

std::string to_string(Coupling coupling);

/// Shlesinger model with waiting-time index beta: Y is 2beta-stable in R^1.
ModelSpec shlesinger_model(double beta, double horizon = 1.0);

}  // namespace ctrw
