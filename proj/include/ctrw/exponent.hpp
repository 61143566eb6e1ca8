#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ctrw/model.hpp"

namespace ctrw {

/// psi(xi) = |xi|^alpha on R^dim (isotropic strictly stable).
struct StableRadialExponent {
    double alpha;
    std::size_t dim = 1;
};

/// sigma(eta) = sum_k (-i d_k eta)^{beta_k}: Fourier exponent of sum_k d_k D_k.
struct MixtureSubordinatorExponent {
    std::vector<MixtureAtom> atoms;
};

/// Phi(eta, xi) = (-i eta + xi^2)^beta: joint exponent of (D, Y) in the Shlesinger model.
struct ShlesingerExponent {
    double beta;
};

/// Phi(eta, xi) = sigma(eta) + psi(xi) for independent D and Y.
struct SumExponent {
    MixtureSubordinatorExponent sigma;
    StableRadialExponent psi;
};

using CharExponent =
    std::variant<StableRadialExponent, MixtureSubordinatorExponent, ShlesingerExponent, SumExponent>;

/// Number of real arguments the exponent takes (p with Phi: R^p -> C).
std::size_t input_dim(const CharExponent& fam);

/// True if the exponent depends on its argument only through the Euclidean norm.
bool is_isotropic(const CharExponent& fam);

/// Phi(eta, xi). Families on R^d ignore eta; the subordinator family ignores xi.
std::complex<double> eval_exponent(const CharExponent& fam, double eta, std::span<const double> xi);

/// Phi at a point of R^p, split as (eta, xi) for joint families.
std::complex<double> eval_at(const CharExponent& fam, std::span<const double> point);

/// (-i eta)^beta on the principal branch: |eta|^beta (cos(pi beta/2) - i sign(eta) sin(pi beta/2)).
std::complex<double> minus_i_power(double eta, double beta);

/// E exp(i xi Y(1) - eta D(1)) = exp(-(eta + xi^2)^beta) for eta >= 0.
double shlesinger_fourier_laplace(double beta, double eta, double xi);

}  // namespace ctrw
