#ifndef MULTIBOSON_COHERENT_HPP
#define MULTIBOSON_COHERENT_HPP

#include "multiboson/state.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace multiboson::coherent {

using cplx = std::complex<double>;

/// Components ζ^k/√(k!(α₀)_k), k < N (unnormalized).
StateVector coherent_amplitudes(cplx zeta, double alpha0, int N);

/// Smallest N with |ζ|^{2N}/(N!(α₀)_N) below 1e-16 of the accumulated norm².
int min_truncation(double abs_zeta, double alpha0);

/// ₀F₁(; α₀; x), the overlap ⟨η|ζ⟩ at x = η̄ζ.
cplx kernel(cplx x, double alpha0);

/// Rotation-invariant weight w(ρ) on ℂ, normalized so that ∫ |ζ|^{2k} w(|ζ|) d²ζ = k!(α₀)_k:
/// w(ρ) = 2ρ^{α₀−1} K_{α₀−1}(2ρ) / (π Γ(α₀)).
struct RadialMeasure {
    double alpha0 = 1.0;
    std::function<double(double)> weight;
    std::vector<double> moments;  // computed ∫ ρ^{2k} w(ρ) 2πρ dρ, k = 0..k_max
};

/// Builds the weight and checks its moments against k!(α₀)_k to 1e-6 relative.
/// Throws NumericalFailure when the check fails.
RadialMeasure radial_measure(double alpha0, int k_max = 6);

/// The printed weight ρ^{α₀} K_{α₀}(2ρ) / (2π Γ(α₀)), kept for comparison.
double printed_radial_weight(double alpha0, double rho);

/// ∫₀^∞ ρ^{2k} w(ρ) 2πρ dρ by adaptive quadrature.
double radial_moment(const std::function<double(double)>& weight, double alpha0, int k);

enum class Generator { A0, Aplus, Aminus };

/// Action on the coefficients c_k of Σ c_k ζ^k:
/// A0 = 2ζ d/dζ + α₀, Aplus = ζ, Aminus = (α₀ + ζ d/dζ) d/dζ.
std::vector<cplx> holo_apply(Generator which, const std::vector<cplx>& coeffs, double alpha0);

/// Element [[a, b], [b̄, ā]] of SU(1,1).
struct SU11Element {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};

    double determinant() const { return std::norm(a) - std::norm(b); }
};

SU11Element multiply(const SU11Element& x, const SU11Element& y);

/// One-parameter subgroup (a(t), b(t)) generated by H_μν. Uses cos/sin when μν > 0,
/// cosh/sinh when μν < 0 and the linear limit when μν = 0.
SU11Element su11_flow(double mu, double nu, double t);

/// Exponents (A, B) of φ(z) = (z+p)^A (z+1/p)^B with p = (√μ−√ν)/(√μ+√ν).
std::pair<double, double> disc_exponents(double lambda, double mu, double nu, double alpha0);

/// φ(z) for μ > ν > 0, |z| < 1, principal branches, unit constant.
/// Throws DomainError within 1e-8 of a branch point or outside the disc.
cplx disc_eigenfunction(double lambda, double mu, double nu, double alpha0, cplx z);

/// Residual of the first-order eigen-equation of H_μν on the disc:
/// (μ+ν)/2·(2zφ' + α₀φ) + (μ−ν)/2·((z²+1)φ' + α₀zφ) − λφ, with φ' by central differences.
cplx disc_residual(double lambda, double mu, double nu, double alpha0, cplx z);

} // namespace multiboson::coherent

#endif
