#include "ctrw/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ctrw/error.hpp"

namespace ctrw {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

void require_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw ParameterError("stability index beta must lie in (0, 1), got " + std::to_string(beta));
    }
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw ParameterError("stability index alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RandomStream::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    buffer_ = philox4x32(ctr, key);
    ++block_;
    cursor_ = 0;
}

RandomStream::result_type RandomStream::operator()() {
    if (cursor_ >= 2) refill();
    const std::uint64_t lo = buffer_[2 * cursor_];
    const std::uint64_t hi = buffer_[2 * cursor_ + 1];
    ++cursor_;
    return (hi << 32) | lo;
}

double RandomStream::uniform() {
    // (k + 0.5) / 2^53 for k in [0, 2^53): never 0, never 1.
    const std::uint64_t k = (*this)() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_normal_ = radius * std::sin(angle);
    has_spare_normal_ = true;
    return radius * std::cos(angle);
}

// Kanter's representation of the positive stable law with Laplace transform exp(-s^beta).
double draw_one_sided_stable(double beta, RandomStream& stream) {
    constexpr double pi = std::numbers::pi;
    for (;;) {
        const double u = stream.uniform();
        const double w = stream.exponential();
        const double value = std::sin(beta * pi * u) / std::pow(std::sin(pi * u), 1.0 / beta) *
                             std::pow(std::sin((1.0 - beta) * pi * u) / w, (1.0 - beta) / beta);
        // underflow to zero or overflow is astronomically rare; redraw keeps support (0, inf)
        if (value > 0.0 && std::isfinite(value)) return value;
    }
}

// Chambers-Mallows-Stuck, symmetric case. alpha = 2 is sqrt(2) * N(0, 1).
double draw_symmetric_stable(double alpha, RandomStream& stream) {
    constexpr double pi = std::numbers::pi;
    if (alpha == 2.0) return std::numbers::sqrt2 * stream.normal();
    const double v = pi * (stream.uniform() - 0.5);
    if (alpha == 1.0) return std::tan(v);
    const double w = stream.exponential();
    return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_one_sided_stable(double beta, std::size_t n, RandomStream& stream) {
    require_beta(beta);
    std::vector<double> out(n);
    for (auto& value : out) value = draw_one_sided_stable(beta, stream);
    return out;
}

std::vector<double> sample_symmetric_stable(double alpha, std::size_t n, RandomStream& stream) {
    require_alpha(alpha);
    std::vector<double> out(n);
    for (auto& value : out) value = draw_symmetric_stable(alpha, stream);
    return out;
}

std::vector<double> sample_triangular_waiting(double beta, double c, std::size_t n,
                                              RandomStream& stream) {
    require_beta(beta);
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ParameterError("waiting-time scale c must be positive, got " + std::to_string(c));
    }
    // Inverse CDF: P{(cU)^{-1/beta} > u} = P{U < u^{-beta}/c}.
    std::vector<double> out(n);
    for (auto& value : out) value = std::pow(c * stream.uniform(), -1.0 / beta);
    return out;
}

double sample_mixture_index(std::span<const MixtureWeight> weights, RandomStream& stream) {
    if (weights.empty()) throw ParameterError("mixture needs at least one atom");
    double total = 0.0;
    for (const auto& w : weights) {
        if (!(w.probability > 0.0)) throw ParameterError("mixture probabilities must be positive");
        total += w.probability;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ParameterError("mixture probabilities must sum to 1, got " + std::to_string(total));
    }
    const double u = stream.uniform();
    double cumulative = 0.0;
    for (const auto& w : weights) {
        cumulative += w.probability;
        if (u < cumulative) return w.beta;
    }
    return weights.back().beta;
}

}  // namespace ctrw
