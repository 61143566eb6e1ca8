#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <tuple>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "ctrw/error.hpp"
#include "ctrw/paths.hpp"

namespace ctrw {

namespace {

// The FFTW planner is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer make_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!p) throw std::bad_alloc();
    return FftwBuffer(p);
}

/// In-place forward DFT of length n.
void fft_inplace(fftw_complex* data, std::size_t n, int sign = FFTW_FORWARD) {
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

struct FftwRealFree {
    void operator()(double* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwRealFree>;

RealBuffer make_real_buffer(std::size_t n) {
    auto* p = fftw_alloc_real(n);
    if (!p) throw std::bad_alloc();
    return RealBuffer(p);
}

void real_forward(double* in, fftw_complex* out, std::size_t n) {
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

/// Unnormalized inverse of real_forward; overwrites in.
void real_backward(fftw_complex* in, double* out, std::size_t n) {
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

using Spectrum = std::shared_ptr<const std::vector<std::complex<double>>>;

/// DFT of the fractional-integration weights a_0..a_lags, zero padded to m; cached.
Spectrum arfima_spectrum(double d, std::size_t lags, std::size_t m) {
    static std::mutex mutex;
    static std::map<std::tuple<double, std::size_t, std::size_t>, Spectrum> cache;
    std::lock_guard lock(mutex);
    const auto key = std::make_tuple(d, lags, m);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto coeff = make_real_buffer(m);
    double a = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0 && i <= lags) a *= (static_cast<double>(i) - 1.0 + d) / static_cast<double>(i);
        coeff[i] = i <= lags ? a : 0.0;
    }
    auto freq = make_buffer(m / 2 + 1);
    real_forward(coeff.get(), freq.get(), m);
    auto out = std::make_shared<std::vector<std::complex<double>>>(m / 2 + 1);
    for (std::size_t k = 0; k <= m / 2; ++k) (*out)[k] = {freq[k][0], freq[k][1]};
    if (cache.size() >= 8) cache.clear();
    cache.emplace(key, out);
    return out;
}

double fgn_autocovariance(double hurst, std::size_t k) {
    const double two_h = 2.0 * hurst;
    const double kk = static_cast<double>(k);
    return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) + std::pow(std::abs(kk - 1.0), two_h));
}

std::vector<double> fgn_cholesky(double hurst, std::size_t n, RandomStream& stream) {
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) cov(i, j) = fgn_autocovariance(hurst, i > j ? i - j : j - i);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw NumericalError("fGn covariance factorization failed");
    Eigen::VectorXd z(n);
    for (std::size_t i = 0; i < n; ++i) z(i) = stream.normal();
    const Eigen::VectorXd x = llt.matrixL() * z;
    return {x.data(), x.data() + n};
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

GridPath simulate_levy_outer(double alpha, std::size_t dim, std::size_t n_points, double dx,
                             RandomStream& stream) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0, 2]");
    if (dim == 0 || n_points == 0) throw ParameterError("dim and n_points must be positive");
    if (!(dx > 0.0)) throw ParameterError("dx must be positive");
    std::ostringstream meta;
    meta << "stable_levy(alpha=" << alpha << ",d=" << dim << ")";
    GridPath path(dx, dim, n_points, meta.str());
    const double scale = std::pow(dx, 1.0 / alpha);
    for (std::size_t i = 1; i < n_points; ++i) {
        for (std::size_t c = 0; c < dim; ++c) {
            path.at(i, c) = path.at(i - 1, c) + scale * draw_symmetric_stable(alpha, stream);
        }
    }
    return path;
}

std::vector<double> fractional_gaussian_noise(double hurst, std::size_t n, RandomStream& stream) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw ParameterError("Hurst index must lie in (0, 1)");
    if (n == 0) return {};
    if (hurst == 0.5) {
        std::vector<double> out(n);
        for (auto& v : out) v = stream.normal();
        return out;
    }
    // Circulant embedding of size 2n.
    const std::size_t m = 2 * n;
    auto eig = make_buffer(m);
    for (std::size_t k = 0; k < m; ++k) {
        eig[k][0] = fgn_autocovariance(hurst, k <= n ? k : m - k);
        eig[k][1] = 0.0;
    }
    fft_inplace(eig.get(), m);
    double max_eig = 0.0, min_eig = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        max_eig = std::max(max_eig, eig[k][0]);
        min_eig = std::min(min_eig, eig[k][0]);
    }
    if (min_eig < -1e-10 * max_eig) {
        if (n <= 4096) return fgn_cholesky(hurst, n, stream);
        throw NumericalError("circulant embedding has negative eigenvalues and n exceeds the dense fallback");
    }
    auto work = make_buffer(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double amplitude = std::sqrt(std::max(eig[k][0], 0.0) / static_cast<double>(m));
        work[k][0] = amplitude * stream.normal();
        work[k][1] = amplitude * stream.normal();
    }
    fft_inplace(work.get(), m);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = work[k][0];
    return out;
}

GridPath simulate_fbm_outer(double hurst, std::size_t dim, std::size_t n_points, double dx,
                            RandomStream& stream) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw ParameterError("Hurst index must lie in (0, 1)");
    if (dim == 0) throw ParameterError("dim must be positive");
    if (n_points < 2 || !is_power_of_two(n_points - 1)) {
        throw ParameterError("fBm needs n_points = 2^k + 1, got " + std::to_string(n_points));
    }
    if (!(dx > 0.0)) throw ParameterError("dx must be positive");
    std::ostringstream meta;
    meta << "fbm(H=" << hurst << ",d=" << dim << ")";
    GridPath path(dx, dim, n_points, meta.str());
    const double scale = std::pow(dx, hurst);
    for (std::size_t c = 0; c < dim; ++c) {
        const auto noise = fractional_gaussian_noise(hurst, n_points - 1, stream);
        for (std::size_t i = 1; i < n_points; ++i) path.at(i, c) = path.at(i - 1, c) + scale * noise[i - 1];
    }
    return path;
}

namespace {

CoupledPaths empty_shlesinger(double beta, double dx) {
    if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
    if (!(dx > 0.0)) throw ParameterError("dx must be positive");
    CoupledPaths out;
    out.subordinator.dx = dx;
    out.subordinator.values.push_back(0.0);
    std::ostringstream meta;
    meta << "shlesinger_outer(beta=" << beta << ")";
    out.outer = GridPath(dx, 1, 1, meta.str());
    return out;
}

// One operational-time step: the jump dY is normal with variance 2 dD.
void shlesinger_step(CoupledPaths& paths, double beta, double step_scale, RandomStream& stream) {
    const double d = paths.subordinator.values.back();
    const double y = paths.outer.coords.back();
    const double jump = step_scale * draw_one_sided_stable(beta, stream);
    const double next = d + jump;
    paths.subordinator.values.push_back(
        next > d ? next : std::nextafter(d, std::numeric_limits<double>::infinity()));
    paths.outer.coords.push_back(y + std::sqrt(2.0 * jump) * stream.normal());
}

}  // namespace

CoupledPaths simulate_coupled_shlesinger_steps(double beta, std::size_t steps, double dx,
                                               RandomStream& stream) {
    CoupledPaths out = empty_shlesinger(beta, dx);
    out.subordinator.values.reserve(steps + 1);
    out.outer.coords.reserve(steps + 1);
    const double step_scale = std::pow(dx, 1.0 / beta);
    for (std::size_t s = 0; s < steps; ++s) shlesinger_step(out, beta, step_scale, stream);
    return out;
}

CoupledPaths simulate_coupled_shlesinger(double beta, double horizon, double dx, RandomStream& stream) {
    if (!(horizon > 0.0)) throw ParameterError("horizon must be positive");
    CoupledPaths out = empty_shlesinger(beta, dx);
    const double step_scale = std::pow(dx, 1.0 / beta);
    while (out.subordinator.values.back() <= horizon) shlesinger_step(out, beta, step_scale, stream);
    return out;
}

double fractional_sum_variance_constant(double hurst) {
    const double d = hurst - 0.5;
    return std::tgamma(1.0 - 2.0 * d) / ((2.0 * d + 1.0) * std::tgamma(1.0 + d) * std::tgamma(1.0 - d));
}

GridPath simulate_correlated_jump_walk(double hurst, std::size_t n, RandomStream& stream) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw ParameterError("Hurst index must lie in (0, 1)");
    if (n == 0) throw ParameterError("walk needs at least one step");
    const double d = hurst - 0.5;
    std::ostringstream meta;
    meta << "correlated_jump_walk(H=" << hurst << ",n=" << n << ")";
    GridPath path(1.0 / static_cast<double>(n), 1, n + 1, meta.str());

    std::vector<double> jumps(n);
    if (d == 0.0) {
        for (auto& j : jumps) j = stream.normal();
    } else {
        // J_t = sum_{i=0}^{L} a_i eps_{t-i}, a_i = Gamma(i+d) / (Gamma(d) Gamma(i+1)), by circular
        // convolution of length m >= n + L; entries L..L+n-1 never wrap.
        std::size_t m = 1;
        while (m < 17 * n) m <<= 1;
        const std::size_t lags = m - n;
        const auto spectrum = arfima_spectrum(d, lags, m);
        auto noise = make_real_buffer(m);
        for (std::size_t k = 0; k < n + lags; ++k) noise[k] = stream.normal();
        auto freq = make_buffer(m / 2 + 1);
        real_forward(noise.get(), freq.get(), m);
        for (std::size_t k = 0; k <= m / 2; ++k) {
            const std::complex<double> product = (*spectrum)[k] * std::complex<double>(freq[k][0], freq[k][1]);
            freq[k][0] = product.real();
            freq[k][1] = product.imag();
        }
        real_backward(freq.get(), noise.get(), m);
        for (std::size_t t = 0; t < n; ++t) jumps[t] = noise[lags + t] / static_cast<double>(m);
    }
    const double norm = std::sqrt(fractional_sum_variance_constant(hurst)) * std::pow(static_cast<double>(n), hurst);
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sum += jumps[t];
        path.at(t + 1, 0) = sum / norm;
    }
    return path;
}

}  // namespace ctrw
