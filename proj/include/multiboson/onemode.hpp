#ifndef MULTIBOSON_ONEMODE_HPP
#define MULTIBOSON_ONEMODE_HPP

#include "multiboson/jacobi.hpp"
#include "multiboson/orthopoly.hpp"
#include "multiboson/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace multiboson::onemode {

/// H_μν = (μ+ν)/2·A₀ + (μ−ν)/2·(A₋+A₊) on a sector with initial value alpha0.
struct OneModeHamiltonian {
    double mu = 1.0;
    double nu = 0.0;
    double alpha0 = 1.0;

    OneModeHamiltonian() = default;
    OneModeHamiltonian(double mu, double nu, double alpha0);
};

/// Spectral case with the family and the affine map E = shift + scale·x onto the family variable.
/// `alternating` marks the cases whose Fock components carry an extra (−1)^k.
struct CaseLabel {
    int index = 0;
    std::optional<orthopoly::PolyFamily> family;  // empty for the diagonal case 9
    double shift = 0.0;
    double scale = 1.0;
    bool alternating = false;
    bool discrete = false;
};

/// a_k = (μ+ν)/2·(2k+α₀), b_k = (μ−ν)/2·√((k+α₀)(k+1)).
std::pair<double, double> coefficients(const OneModeHamiltonian& h, int k);

jacobi::JacobiOperator jacobi(const OneModeHamiltonian& h, int N);

/// Case classification by exact sign tests on (μ, ν).
CaseLabel classify(double mu, double nu, double alpha0);

/// Spectral measure with the case's affine map applied (atoms at H eigenvalues).
/// Case 9 carries unit atoms μ(2n+α₀) for n < n_atoms.
orthopoly::SpectralMeasure spectrum(const OneModeHamiltonian& h, bool normalize = true, int n_atoms = 64);

/// Closed-form eigenvalue E_n for the discrete cases 5–9.
double discrete_eigenvalue(const OneModeHamiltonian& h, int n);

/// Unit eigenvector for eigenvalue index n truncated to N Fock components (cases 5–9),
/// component 0 positive before the case's (−1)^k rule. Throws UnsupportedCase otherwise.
StateVector eigenvectors_discrete(const OneModeHamiltonian& h, int n, int N);

/// Generalized eigenvector components P_k(x) for k < N at a physical energy E
/// (continuous cases 1–4), including the case's sign rule.
Eigen::VectorXd generalized_eigenvector(const OneModeHamiltonian& h, double energy, int N);

/// Default truncation N = max(100, 20·⌈|scale|⌉).
int default_truncation(const OneModeHamiltonian& h);

struct EvolveOptions {
    int N = 0;                 // 0 selects default_truncation
    double tail_tol = 1e-8;    // norm allowed in the top tenth of the basis
};

/// e^{+itH} ψ₀. Discrete cases use closed-form eigenpairs (capturing the full spectral weight
/// of ψ₀ is checked); continuous cases use the truncated Jacobi eigendecomposition.
/// Throws TruncationOverflow when the top tenth carries more than tail_tol.
StateVector evolve(const OneModeHamiltonian& h, const StateVector& psi0, double t, const EvolveOptions& opt = {});

} // namespace multiboson::onemode

#endif
