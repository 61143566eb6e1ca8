#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace ctrw {

/// Counter-based random stream (Philox4x32-10).
///
/// The key is the 64-bit seed; the upper half of the 128-bit counter holds the
/// stream id and the lower half the block index. Streams with distinct ids
/// therefore never overlap, and a stream can be created on one thread and
/// consumed on another. Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard exponential (mean 1).
    double exponential();
    /// Standard normal.
    double normal();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int cursor_ = 4;  // in 64-bit words; 2 per block
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// Mixture atom for categorical index draws: index value and its probability.
struct MixtureWeight {
    double beta;
    double probability;
};

// Scalar samplers. Conventions: one-sided E[exp(-sS)] = exp(-s^beta),
// symmetric E[exp(iuX)] = exp(-|u|^alpha). Parameters are not re-validated.
double draw_one_sided_stable(double beta, RandomStream& stream);
double draw_symmetric_stable(double alpha, RandomStream& stream);

std::vector<double> sample_one_sided_stable(double beta, std::size_t n, RandomStream& stream);
std::vector<double> sample_symmetric_stable(double alpha, std::size_t n, RandomStream& stream);

/// Pareto-type waiting times with P{W > u} = u^{-beta} / c for u >= c^{-1/beta}.
std::vector<double> sample_triangular_waiting(double beta, double c, std::size_t n,
                                              RandomStream& stream);

/// Categorical draw of an index value with the given probabilities.
double sample_mixture_index(std::span<const MixtureWeight> weights, RandomStream& stream);

}  // namespace ctrw
