#include <cmath>
#include <sstream>

#include "ctrw/error.hpp"
#include "ctrw/paths.hpp"

namespace ctrw {

namespace {

struct WaitingSampler {
    const WaitingLaw& law;
    double pareto_scale = 1.0;  // Gamma(1 - beta)

    explicit WaitingSampler(const WaitingLaw& l) : law(l) {
        if (const auto* p = std::get_if<ParetoWaiting>(&law)) {
            if (!(p->beta > 0.0 && p->beta < 1.0)) throw ParameterError("waiting index must lie in (0, 1)");
            pareto_scale = std::tgamma(1.0 - p->beta);
        } else if (!(std::get<DeterministicWaiting>(law).wait > 0.0)) {
            throw ParameterError("deterministic wait must be positive");
        }
    }

    double operator()(RandomStream& stream) const {
        if (const auto* p = std::get_if<ParetoWaiting>(&law)) {
            return std::pow(pareto_scale * stream.uniform(), -1.0 / p->beta);
        }
        return std::get<DeterministicWaiting>(law).wait;
    }
};

double jump_exponent(const JumpLaw& jumps) {
    if (const auto* s = std::get_if<StableJumps>(&jumps)) {
        if (!(s->alpha > 0.0 && s->alpha <= 2.0)) throw ParameterError("jump index must lie in (0, 2]");
        return 1.0 / s->alpha;
    }
    return 0.5;
}

double draw_jump(const JumpLaw& jumps, RandomStream& stream) {
    if (std::holds_alternative<GaussianJumps>(jumps)) return draw_symmetric_stable(2.0, stream);
    if (const auto* s = std::get_if<StableJumps>(&jumps)) return draw_symmetric_stable(s->alpha, stream);
    return 0.0;
}

}  // namespace

double waiting_exponent(const WaitingLaw& waits) {
    if (const auto* p = std::get_if<ParetoWaiting>(&waits)) return p->beta;
    return 1.0;
}

std::uint64_t renewal_count(const WaitingLaw& waits, double c, RandomStream& stream) {
    if (!(c > 0.0)) throw ParameterError("scale c must be positive");
    const WaitingSampler draw(waits);
    std::uint64_t n = 0;
    double time = 0.0;
    for (;;) {
        time += draw(stream);
        if (time > c) return n;
        ++n;
    }
}

CtrwPath simulate_ctrw_discrete(const JumpLaw& jumps, const WaitingLaw& waits, double c,
                                double horizon, double dt, RandomStream& stream) {
    if (!(c >= 1.0)) throw ParameterError("scale c must be >= 1");
    if (!(horizon > 0.0) || !(dt > 0.0)) throw ParameterError("horizon and dt must be positive");
    const WaitingSampler draw(waits);
    CtrwPath out;
    out.time_exponent = waiting_exponent(waits);
    out.space_exponent = jump_exponent(jumps);
    const double space_norm = std::pow(c, -out.time_exponent * out.space_exponent);

    const auto n_intervals = static_cast<std::size_t>(std::llround(horizon / dt));
    std::ostringstream meta;
    meta << "ctrw(c=" << c << ",norm=c^-" << out.time_exponent * out.space_exponent << ")";
    out.position = GridPath(dt, 1, n_intervals + 1, meta.str());
    out.counts.assign(n_intervals + 1, 0);

    // Walk through renewal epochs T_n in physical time c*t.
    std::uint64_t n = 0;
    double position = 0.0;
    double next_epoch = draw(stream);
    for (std::size_t i = 0; i <= n_intervals; ++i) {
        const double physical = c * static_cast<double>(i) * dt;
        while (next_epoch <= physical) {
            ++n;
            position += draw_jump(jumps, stream);
            next_epoch += draw(stream);
        }
        out.counts[i] = n;
        out.position.at(i, 0) = space_norm * position;
    }
    return out;
}

}  // namespace ctrw
