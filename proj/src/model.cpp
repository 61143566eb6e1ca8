#include "ctrw/model.hpp"

#include <cmath>
#include <sstream>

#include "ctrw/error.hpp"

namespace ctrw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw ParameterError(message);
}

void validate_dim(std::size_t dim) { require(dim >= 1, "spatial dimension must be >= 1"); }

}  // namespace

void validate(const ModelSpec& spec) {
    require(spec.horizon > 0.0 && std::isfinite(spec.horizon), "horizon must be positive");
    std::visit(overloaded{
                   [](const StableLevyOuter& o) {
                       require(o.alpha > 0.0 && o.alpha <= 2.0, "alpha must lie in (0, 2]");
                       validate_dim(o.dim);
                   },
                   [](const BrownianOuter& o) { validate_dim(o.dim); },
                   [](const FbmOuter& o) {
                       require(o.hurst > 0.0 && o.hurst < 1.0, "Hurst index must lie in (0, 1)");
                       validate_dim(o.dim);
                   },
                   [](const SubordinatorOuter&) {},
               },
               spec.outer);
    std::visit(overloaded{
                   [](const StableSubordinator& s) {
                       require(s.beta > 0.0 && s.beta < 1.0, "beta must lie in (0, 1)");
                   },
                   [](const MixtureSubordinator& m) {
                       require(!m.atoms.empty(), "mixture subordinator needs at least one atom");
                       for (std::size_t k = 0; k < m.atoms.size(); ++k) {
                           const auto& atom = m.atoms[k];
                           require(atom.beta > 0.0 && atom.beta < 1.0, "mixture beta_k must lie in (0, 1)");
                           require(atom.scale > 0.0 && std::isfinite(atom.scale), "mixture d_k must be positive");
                           if (k > 0) {
                               require(atom.beta > m.atoms[k - 1].beta,
                                       "mixture indices must be strictly increasing");
                           }
                       }
                   },
                   [](const NoTimeChange&) {},
               },
               spec.inner);

    const bool subordinator_outer = std::holds_alternative<SubordinatorOuter>(spec.outer);
    const bool has_time_change = !std::holds_alternative<NoTimeChange>(spec.inner);
    switch (spec.coupling) {
        case Coupling::uncoupled:
            require(!subordinator_outer, "subordinator outer process requires identity coupling");
            break;
        case Coupling::identity:
            require(subordinator_outer, "identity coupling requires the subordinator outer process");
            require(has_time_change, "identity coupling requires a subordinator");
            break;
        case Coupling::shlesinger: {
            const auto* stable = std::get_if<StableLevyOuter>(&spec.outer);
            const auto* inner = std::get_if<StableSubordinator>(&spec.inner);
            require(stable && inner, "Shlesinger coupling needs stable outer and stable subordinator");
            require(stable->dim == 1, "Shlesinger coupling forces d = 1");
            require(std::abs(stable->alpha - 2.0 * inner->beta) < 1e-12,
                    "Shlesinger coupling forces alpha = 2 beta");
            break;
        }
    }
}

std::size_t spatial_dim(const ModelSpec& spec) {
    return std::visit(overloaded{
                          [](const StableLevyOuter& o) { return o.dim; },
                          [](const BrownianOuter& o) { return o.dim; },
                          [](const FbmOuter& o) { return o.dim; },
                          [](const SubordinatorOuter&) { return std::size_t{1}; },
                      },
                      spec.outer);
}

double dominant_beta(const InnerModel& inner) {
    return std::visit(overloaded{
                          [](const StableSubordinator& s) { return s.beta; },
                          [](const MixtureSubordinator& m) {
                              if (m.atoms.empty()) throw ParameterError("empty mixture");
                              return m.atoms.back().beta;
                          },
                          [](const NoTimeChange&) -> double {
                              throw ParameterError("model has no subordinator");
                          },
                      },
                      inner);
}

std::vector<MixtureAtom> subordinator_atoms(const InnerModel& inner) {
    return std::visit(overloaded{
                          [](const StableSubordinator& s) {
                              return std::vector<MixtureAtom>{{s.beta, 1.0}};
                          },
                          [](const MixtureSubordinator& m) { return m.atoms; },
                          [](const NoTimeChange&) -> std::vector<MixtureAtom> {
                              throw ParameterError("model has no subordinator");
                          },
                      },
                      inner);
}

std::string to_string(Coupling coupling) {
    switch (coupling) {
        case Coupling::uncoupled: return "uncoupled";
        case Coupling::identity: return "identity";
        case Coupling::shlesinger: return "shlesinger";
    }
    return "unknown";
}

std::string describe(const ModelSpec& spec) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const StableLevyOuter& o) { os << "stable(alpha=" << o.alpha << ",d=" << o.dim << ")"; },
                   [&](const BrownianOuter& o) { os << "brownian(d=" << o.dim << ")"; },
                   [&](const FbmOuter& o) { os << "fbm(H=" << o.hurst << ",d=" << o.dim << ")"; },
                   [&](const SubordinatorOuter&) { os << "subordinator"; },
               },
               spec.outer);
    std::visit(overloaded{
                   [&](const StableSubordinator& s) { os << " o E[stable(beta=" << s.beta << ")]"; },
                   [&](const MixtureSubordinator& m) {
                       os << " o E[mixture(";
                       for (std::size_t k = 0; k < m.atoms.size(); ++k) {
                           if (k) os << ";";
                           os << m.atoms[k].beta << ":" << m.atoms[k].scale;
                       }
                       os << ")]";
                   },
                   [&](const NoTimeChange&) {},
               },
               spec.inner);
    if (spec.coupling != Coupling::uncoupled) os << " [" << to_string(spec.coupling) << "]";
    return os.str();
}

ModelSpec shlesinger_model(double beta, double horizon) {
    ModelSpec spec;
    spec.outer = StableLevyOuter{2.0 * beta, 1};
    spec.inner = StableSubordinator{beta};
    spec.coupling = Coupling::shlesinger;
    spec.horizon = horizon;
    return spec;
}

}  // namespace ctrw
