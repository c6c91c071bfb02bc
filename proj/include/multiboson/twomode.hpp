#ifndef MULTIBOSON_TWOMODE_HPP
#define MULTIBOSON_TWOMODE_HPP

#include "multiboson/bogoliubov.hpp"
#include "multiboson/errors.hpp"
#include "multiboson/jacobi.hpp"
#include "multiboson/orthopoly.hpp"
#include "multiboson/rep.hpp"
#include "multiboson/state.hpp"

#include <Eigen/Sparse>

#include <string>
#include <utility>
#include <vector>

namespace multiboson::twomode {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct TwoModeHamiltonian {
    rep::TwoModeRep reps;
    bogoliubov::GroupElement g{1.0, -1};
    bogoliubov::GroupElement h{1.0, 1};
    int r0 = 0;
    int r1 = 0;
};

/// Canonical elements: (1,−1),(1,1) gives H_D and (1,−1),(−1,1) gives H_C.
TwoModeHamiltonian canonical_d(const rep::TwoModeRep& reps, int r0 = 0, int r1 = 0);
TwoModeHamiltonian canonical_c(const rep::TwoModeRep& reps, int r0 = 0, int r1 = 0);

/// Coefficients c(j,k) of A_j B_k, index order (0, −, +), from the five-term expansion.
Eigen::Matrix3d ham_coefficients(const bogoliubov::GroupElement& g, const bogoliubov::GroupElement& h);

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

/// Matrix on the (r₀, r₁) sector product basis |k₀,k₁⟩, k_i < N, index k₀·N + k₁.
SparseMatrix build_h_matrix(const TwoModeHamiltonian& h, int N_per_mode);

/// Matrix on the full two-mode Fock space |n₀,n₁⟩, n_i < N, index n₀·N + n₁.
SparseMatrix build_h_full(const TwoModeHamiltonian& h, int N_per_mode);

/// ½(C_D − C_A − C_B) assembled from the Bogoliubov images of the generator matrices,
/// an independent construction used to check the five-term expansion.
Eigen::MatrixXd h_from_casimirs(const TwoModeHamiltonian& h, int N_per_mode);

enum class CanonicalForm { D, C };

/// Occupation pairs (k₀, k₁) in sector coordinates for block coordinates k.
/// D: |k, K−k⟩, k = 0..K. C: |K+k, k⟩ for K ≥ 0 and |k, k−K⟩ for K < 0, k < count.
std::vector<std::pair<int, int>> manley_rowe_blocks(CanonicalForm form, int K, int count = 0);

struct DBlock {
    int K = 0;
    double alpha0 = 1.0;
    double beta0 = 1.0;
};

struct CBlock {
    int K = 0;
    double alpha0 = 1.0;
    double beta0 = 1.0;
    int N = 4000;
};

enum class Convention { OperatorDerived, Printed };

jacobi::JacobiOperator hd_block_jacobi(const DBlock& b, Convention conv = Convention::OperatorDerived);

/// E_n = n(n+α₀+β₀−1) + ½α₀β₀, n = 0..K, ascending.
std::vector<double> hd_spectrum(const DBlock& b);

/// Dual Hahn family with γ = α₀−1, δ = β₀−1 and K points; its atoms are E_n − ½α₀β₀.
orthopoly::PolyFamily hd_family(const DBlock& b);

/// Unit eigenvector for E_n in block coordinates, component 0 positive.
StateVector hd_eigenvectors(const DBlock& b, int n);

jacobi::JacobiOperator hc_block_jacobi(const CBlock& b);

struct UVWParams {
    double u = 0.0, v = 0.0, w = 0.0;
    std::string branch;
};

/// Raised when β₀ − α₀ sits exactly on an endpoint of the piecewise tables.
class BoundaryAmbiguity : public DomainError {
public:
    BoundaryAmbiguity(const std::string& what, UVWParams left, UVWParams right)
        : DomainError(what), left_(std::move(left)), right_(std::move(right)) {}
    const UVWParams& left() const { return left_; }
    const UVWParams& right() const { return right_; }

private:
    UVWParams left_, right_;
};

UVWParams uvw_params(int K, double alpha0, double beta0);

/// ¼((α₀−1)² + (β₀−1)² − 1); the block acts as x − this shift on the family variable.
double hc_shift(double alpha0, double beta0);

/// Continuum (−∞, −shift) and atoms (u+n)² − shift for u+n < 0.
orthopoly::SpectralMeasure hc_spectrum(const CBlock& b, bool normalize = true);

/// Bound-state vector for atom n truncated to b.N components and normalized over them.
/// Throws UnsupportedCase when u + n ≥ 0.
StateVector hc_eigenvectors_discrete(const CBlock& b, int n);

struct CouplingSample {
    int n0 = 0, n1 = 0;
    double g00, g_pm, g_m0, g_0m, g_mm;  // NaN where the entry lies outside the truncation
};

/// Intensity-dependent couplings of H = g₀₀ + g₊₋(a₀*)^{l₀}a₁^{l₁} + g₋₀a₀^{l₀} + g₀₋a₁^{l₁}
/// + g₋₋a₀^{l₀}a₁^{l₁} + h.c., read off the full Fock matrix. Each g multiplies its ladder
/// monomial from the left, so it is sampled at the output occupation (n₀, n₁).
std::vector<CouplingSample> coupling_functions(const TwoModeHamiltonian& h, int N_per_mode,
                                               const std::vector<std::pair<int, int>>& grid);

} // namespace multiboson::twomode

#endif
