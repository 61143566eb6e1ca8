#include "ctrw/exponent.hpp"

#include <cmath>
#include <numbers>

#include "ctrw/error.hpp"

namespace ctrw {

namespace {

double norm_of(std::span<const double> xi) {
    double s = 0.0;
    for (double v : xi) s += v * v;
    return std::sqrt(s);
}

double squared_norm(std::span<const double> xi) {
    double s = 0.0;
    for (double v : xi) s += v * v;
    return s;
}

std::complex<double> mixture_value(const MixtureSubordinatorExponent& m, double eta) {
    std::complex<double> total = 0.0;
    for (const auto& atom : m.atoms) total += minus_i_power(atom.scale * eta, atom.beta);
    return total;
}

double radial_value(const StableRadialExponent& s, std::span<const double> xi) {
    const double r = norm_of(xi);
    return r == 0.0 ? 0.0 : std::pow(r, s.alpha);
}

}  // namespace

std::complex<double> minus_i_power(double eta, double beta) {
    if (eta == 0.0) return 0.0;
    const double magnitude = std::pow(std::abs(eta), beta);
    const double angle = std::numbers::pi * beta / 2.0;
    return {magnitude * std::cos(angle), -std::copysign(magnitude * std::sin(angle), eta)};
}

std::size_t input_dim(const CharExponent& fam) {
    if (const auto* s = std::get_if<StableRadialExponent>(&fam)) return s->dim;
    if (std::holds_alternative<MixtureSubordinatorExponent>(fam)) return 1;
    if (std::holds_alternative<ShlesingerExponent>(fam)) return 2;
    return 1 + std::get<SumExponent>(fam).psi.dim;
}

bool is_isotropic(const CharExponent& fam) {
    if (std::holds_alternative<StableRadialExponent>(fam)) return true;
    return false;
}

std::complex<double> eval_exponent(const CharExponent& fam, double eta, std::span<const double> xi) {
    if (const auto* s = std::get_if<StableRadialExponent>(&fam)) return radial_value(*s, xi);
    if (const auto* m = std::get_if<MixtureSubordinatorExponent>(&fam)) return mixture_value(*m, eta);
    if (const auto* sh = std::get_if<ShlesingerExponent>(&fam)) {
        const std::complex<double> base(squared_norm(xi), -eta);
        if (base == 0.0) return 0.0;
        return std::pow(base, sh->beta);
    }
    const auto& sum = std::get<SumExponent>(fam);
    return mixture_value(sum.sigma, eta) + radial_value(sum.psi, xi);
}

std::complex<double> eval_at(const CharExponent& fam, std::span<const double> point) {
    if (point.size() != input_dim(fam)) throw ParameterError("exponent argument has the wrong dimension");
    if (std::holds_alternative<StableRadialExponent>(fam)) return eval_exponent(fam, 0.0, point);
    if (std::holds_alternative<MixtureSubordinatorExponent>(fam)) return eval_exponent(fam, point[0], {});
    return eval_exponent(fam, point[0], point.subspan(1));
}

double shlesinger_fourier_laplace(double beta, double eta, double xi) {
    return std::exp(-std::pow(eta + xi * xi, beta));
}

}  // namespace ctrw
