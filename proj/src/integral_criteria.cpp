#include "ctrw/integral_criteria.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>

#include "ctrw/error.hpp"

namespace ctrw {

namespace {

constexpr double kLn2 = std::numbers::ln2;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};

const GaussRule& gauss20() {
    static const GaussRule rule = [] {
        using boost::math::quadrature::gauss;
        GaussRule r;
        const auto& abscissa = gauss<double, 20>::abscissa();
        const auto& weights = gauss<double, 20>::weights();
        for (std::size_t i = 0; i < abscissa.size(); ++i) {
            r.x.push_back(abscissa[i]);
            r.w.push_back(weights[i]);
            r.x.push_back(-abscissa[i]);
            r.w.push_back(weights[i]);
        }
        return r;
    }();
    return rule;
}

template <class F>
double gauss_legendre(F&& f, double a, double b) {
    const auto& rule = gauss20();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) sum += rule.w[i] * f(mid + half * rule.x[i]);
    return half * sum;
}

/// int_0^b f, pieces [b 2^{-j-1}, b 2^{-j}] resolve boundary layers at 0.
template <class F>
double dyadic_from_zero(F&& f, double b, int levels) {
    double total = 0.0;
    double hi = b;
    for (int j = 0; j < levels; ++j) {
        const double lo = 0.5 * hi;
        total += gauss_legendre(f, lo, hi);
        hi = lo;
    }
    return total + gauss_legendre(f, 0.0, hi);
}

struct Adaptive {
    double value = 0.0;
    double error = 0.0;
};

/// G7-K15 on [a, b] for an f returning either a value or a value with its own
/// error; errors of f are carried through with the Kronrod weights.
template <class F>
Adaptive kronrod_piece(F&& f, double a, double b) {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    static const auto& kx = gauss_kronrod<double, 15>::abscissa();
    static const auto& kw = gauss_kronrod<double, 15>::weights();
    static const auto& gw = gauss<double, 7>::weights();
    auto eval = [&](double x) -> Adaptive {
        if constexpr (std::is_same_v<std::invoke_result_t<F&, double>, Adaptive>) {
            return f(x);
        } else {
            return {f(x), 0.0};
        }
    };
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double kronrod = 0.0, gauss_sum = 0.0, inner = 0.0;
    for (std::size_t i = 0; i < kx.size(); ++i) {
        const Adaptive lo = eval(mid - half * kx[i]);
        const Adaptive hi = i == 0 ? Adaptive{} : eval(mid + half * kx[i]);
        const double sum = lo.value + hi.value;
        kronrod += kw[i] * sum;
        inner += kw[i] * (lo.error + hi.error);
        if (i % 2 == 0) gauss_sum += gw[i / 2] * sum;
    }
    return {half * kronrod, half * (std::abs(kronrod - gauss_sum) + inner)};
}

/// Fixed G7-K15 on dyadic pieces toward both ends of [0, b].
template <class F>
Adaptive fixed_both_ends(F&& f, double b, int levels_lo, int levels_hi) {
    Adaptive out;
    auto piece = [&](double lo, double hi) {
        const Adaptive part = kronrod_piece(f, lo, hi);
        out.value += part.value;
        out.error += part.error;
    };
    const double mid = 0.5 * b;
    double hi = mid;
    for (int j = 0; j <= levels_lo; ++j) {
        const double lo = j == levels_lo ? 0.0 : 0.5 * hi;
        piece(lo, hi);
        hi = lo;
    }
    double gap = mid;
    for (int j = 0; j <= levels_hi; ++j) {
        const double next = j == levels_hi ? 0.0 : 0.5 * gap;
        piece(b - gap, b - next);
        gap = next;
    }
    return out;
}

double sphere_area(std::size_t p) {
    const double half = 0.5 * static_cast<double>(p);
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Shell integrals J_m(gamma) = ln2 int_m^{m+1} 2^{u (gamma + shift)} A(2^u) du from values of A at
/// the Gauss nodes of every shell.
class ShellSeries {
public:
    ShellSeries(int lo, int hi, double shift) : lo_(lo), hi_(hi), shift_(shift) {}

    template <class F>
    void tabulate(F&& radial) {
        const auto& rule = gauss20();
        for (int m = lo_; m <= hi_; ++m) {
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double u = m + 0.5 + 0.5 * rule.x[i];
                const double a = radial(std::exp2(u));
                if (!std::isfinite(a) || a < 0.0) {
                    throw NumericalError("shell integrand is not finite and nonnegative at |xi| = 2^" +
                                         std::to_string(u));
                }
                values_.push_back(a);
            }
        }
    }

    double growth_slope(double gamma) const {
        const auto& rule = gauss20();
        std::vector<double> ms, logs;
        std::size_t k = 0;
        for (int m = lo_; m <= hi_; ++m) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.x.size(); ++i, ++k) {
                const double u = m + 0.5 + 0.5 * rule.x[i];
                sum += 0.5 * rule.w[i] * std::exp2(u * (gamma + shift_)) * values_[k];
            }
            const double shell = kLn2 * sum;
            if (!(shell > 0.0) || !std::isfinite(shell)) {
                throw NumericalError("shell integral vanished or overflowed; diagnostics are flat");
            }
            ms.push_back(m);
            logs.push_back(std::log2(shell));
        }
        return least_squares_slope(ms, logs);
    }

private:
    int lo_, hi_;
    double shift_;
    std::vector<double> values_;
};

IndexResult bisect_critical(const ShellSeries& series, double upper, double tol) {
    IndexResult result;
    auto slope = [&](double gamma) {
        const double g = series.growth_slope(gamma);
        result.diagnostics.push_back({gamma, g});
        return g;
    };
    if (slope(upper) < 0.0) {
        result.gamma_star = upper;
        result.saturated = true;
        return result;
    }
    double lo = 0.0, hi = upper;
    if (slope(lo) >= 0.0) {
        result.gamma_star = 0.0;
        return result;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    result.gamma_star = 0.5 * (lo + hi);
    return result;
}

void check_options(const IndexSearchOptions& o) {
    if (o.shell_lo < 0 || o.shell_hi - o.shell_lo < 3) throw ParameterError("need at least 4 shells with m >= 0");
    if (!(o.tolerance > 0.0)) throw ParameterError("bisection tolerance must be positive");
}

double real_resolvent(std::complex<double> phi) { return (1.0 / (1.0 + phi)).real(); }

}  // namespace

IndexResult range_dim_by_integral(const CharExponent& psi, std::size_t d, const IndexSearchOptions& options) {
    check_options(options);
    if (input_dim(psi) != d) throw ParameterError("exponent dimension does not match d");
    const bool isotropic = is_isotropic(psi);
    if (!isotropic && d > 2) throw UnsupportedModelError("non-isotropic exponents are supported for d <= 2 only");

    // A(r) = integral over the sphere of radius r of Re(1/(1 + psi)), per unit r^{d-1} dr.
    auto angular = [&](double r) -> double {
        std::vector<double> point(d, 0.0);
        if (isotropic) {
            point[0] = r;
            return sphere_area(d) * real_resolvent(eval_at(psi, point));
        }
        if (d == 1) {
            point[0] = r;
            double total = real_resolvent(eval_at(psi, point));
            point[0] = -r;
            return total + real_resolvent(eval_at(psi, point));
        }
        auto on_circle = [&](double theta) {
            const double p[2] = {r * std::cos(theta), r * std::sin(theta)};
            return real_resolvent(eval_at(psi, p));
        };
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(on_circle, 0.0, 2.0 * std::numbers::pi,
                                                                             10, 1e-10);
    };
    // |xi|^{gamma - d} r^{d-1} dr = 2^{u gamma} ln2 du.
    ShellSeries series(options.shell_lo, options.shell_hi, 0.0);
    series.tabulate(angular);
    return bisect_critical(series, static_cast<double>(d), options.tolerance);
}

IndexResult graph_dim_by_integral(const MixtureSubordinatorExponent& sigma, const StableRadialExponent& psi,
                                  const IndexSearchOptions& options) {
    check_options(options);
    if (sigma.atoms.empty()) throw ParameterError("subordinator exponent needs at least one atom");
    if (psi.dim > 2) throw UnsupportedModelError("graph criterion is evaluated for d <= 2");
    const std::size_t d = psi.dim;
    const double omega = sphere_area(d);
    const CharExponent sigma_fam = sigma;

    // G(rho) = int_0^1 Re(1/(1 + sigma(rho s) + psi(rho (1 - s)))) omega_d (rho (1 - s))^{d-1} ds,
    // over eta = rho s >= 0, r = rho (1 - s); eta < 0 contributes the conjugate, hence the factor 2.
    auto shell_profile = [&](double rho) -> double {
        auto integrand = [&](double s, double one_minus_s) {
            const double eta = rho * s;
            const double r = rho * one_minus_s;
            const std::complex<double> phi =
                eval_exponent(sigma_fam, eta, {}) + (r == 0.0 ? 0.0 : std::pow(r, psi.alpha));
            return real_resolvent(phi) * omega * std::pow(r, static_cast<double>(d) - 1.0);
        };
        const int levels = 64;
        const double near_zero = dyadic_from_zero([&](double s) { return integrand(s, 1.0 - s); }, 0.5, levels);
        const double near_one = dyadic_from_zero([&](double v) { return integrand(1.0 - v, v); }, 0.5, levels);
        return 2.0 * (near_zero + near_one);
    };
    // rho^{gamma - 1 - d} rho drho = 2^{u (gamma + 1 - d)} ln2 du.
    ShellSeries series(options.shell_lo, options.shell_hi, 1.0 - static_cast<double>(d));
    series.tabulate(shell_profile);
    auto result = bisect_critical(series, 1.0 + static_cast<double>(d), options.tolerance);
    result.gamma_star = std::max(1.0, result.gamma_star);
    return result;
}

std::vector<double> packing_profile(const CharExponent& phi, std::span<const double> r_grid,
                                    double relative_tolerance) {
    const std::size_t p = input_dim(phi);
    if (p > 2) throw UnsupportedModelError("packing profile is evaluated for p <= 2");
    constexpr double half_pi = std::numbers::pi / 2.0;
    std::vector<double> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) {
        if (!(r > 0.0 && r <= 1.0)) throw ParameterError("packing profile radius must lie in (0, 1]");
        // xi_j = tan(theta_j) turns the Cauchy weight into d theta_j on (-pi/2, pi/2). Re 1/(1 + Phi)
        // is even under xi -> -xi (Phi(-xi) is the conjugate), so half the sign patterns suffice.
        const int levels = static_cast<int>(std::ceil(std::log2(half_pi / r))) + 30;
        Adaptive total;
        if (p == 1) {
            auto f = [&](double theta) {
                const double xi = std::tan(theta) / r;
                return real_resolvent(eval_at(phi, std::span<const double>(&xi, 1)));
            };
            const auto part = fixed_both_ends(f, half_pi, levels, levels);
            total.value = 2.0 * part.value;
            total.error = 2.0 * part.error;
        } else {
            for (double sign2 : {1.0, -1.0}) {
                auto g = [&](double t1) {
                    const double x1 = std::tan(t1) / r;
                    auto f = [&](double t2) {
                        const double xi[2] = {x1, sign2 * std::tan(t2) / r};
                        return real_resolvent(eval_at(phi, xi));
                    };
                    return fixed_both_ends(f, half_pi, levels, 20);
                };
                const auto part = fixed_both_ends(g, half_pi, levels, 20);
                total.value += 2.0 * part.value;
                total.error += 2.0 * part.error;
            }
        }
        if (!(total.value > 0.0) || total.error > relative_tolerance * total.value) {
            std::ostringstream msg;
            msg << std::scientific << std::setprecision(3) << "packing profile quadrature did not converge at r = "
                << r << " (estimate " << total.value << ", error " << total.error << ")";
            throw NumericalError(msg.str());
        }
        out.push_back(total.value);
    }
    return out;
}

std::vector<double> graph_packing_profile(const MixtureSubordinatorExponent& sigma, const StableRadialExponent& psi,
                                          std::span<const double> r_grid, double relative_tolerance) {
    if (psi.dim != 1) throw UnsupportedModelError("graph packing profile is evaluated for d = 1");
    return packing_profile(SumExponent{sigma, psi}, r_grid, relative_tolerance);
}

double packing_index(std::span<const double> r_grid, std::span<const double> profile, std::size_t p) {
    if (r_grid.size() != profile.size() || r_grid.size() < 2) throw ParameterError("profile needs >= 2 radii");
    std::vector<double> lr, lw;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        lr.push_back(std::log(r_grid[i]));
        lw.push_back(std::log(profile[i]));
    }
    return std::clamp(least_squares_slope(lr, lw), 0.0, static_cast<double>(p));
}

SandwichResult sandwich_check(const SumExponent& fam, std::span<const double> eta_values,
                              std::span<const double> xi_radii) {
    if (fam.sigma.atoms.empty()) throw ParameterError("subordinator exponent needs at least one atom");
    double beta_n = 0.0;
    for (const auto& atom : fam.sigma.atoms) beta_n = std::max(beta_n, atom.beta);
    const CharExponent joint = fam;
    SandwichResult out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    out.max_ratio = 0.0;
    std::vector<double> xi(fam.psi.dim, 0.0);
    for (double eta : eta_values) {
        for (double r : xi_radii) {
            if (std::abs(eta) + r < 1.0) continue;
            xi[0] = r;
            const auto phi = eval_exponent(joint, eta, xi);
            if (phi.real() < 0.0) out.real_part_nonnegative = false;
            const double ratio =
                real_resolvent(phi) * (std::pow(std::abs(eta), beta_n) + std::pow(r, fam.psi.alpha));
            if (!std::isfinite(ratio)) {
                out.all_finite = false;
                continue;
            }
            out.min_ratio = std::min(out.min_ratio, ratio);
            out.max_ratio = std::max(out.max_ratio, ratio);
            ++out.points;
        }
    }
    out.k_empirical = out.points == 0 ? 0.0 : std::max(out.max_ratio, 1.0 / out.min_ratio);
    return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi >= lo) || n == 0) throw ParameterError("log grid needs 0 < lo <= hi and n >= 1");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = lo * std::pow(hi / lo, f);
    }
    return out;
}

}  // namespace ctrw
