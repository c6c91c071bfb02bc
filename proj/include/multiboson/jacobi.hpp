#ifndef MULTIBOSON_JACOBI_HPP
#define MULTIBOSON_JACOBI_HPP

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

namespace multiboson::jacobi {

/// Truncated symmetric tridiagonal operator: diag has size N, offdiag has size N-1.
struct JacobiOperator {
    std::vector<double> diag;
    std::vector<double> offdiag;

    Eigen::Index size() const { return static_cast<Eigen::Index>(diag.size()); }
    Eigen::MatrixXd dense() const;
};

/// Coefficient stream k ↦ (a_k, b_k).
using CoefficientFn = std::function<std::pair<double, double>(int)>;

JacobiOperator truncate(const CoefficientFn& coeffs, int N);

/// All eigenvalues, ascending, from a tridiagonal QL solver.
Eigen::VectorXd eigenvalues(const JacobiOperator& j);

/// Lowest `count` eigenvalues (the independent oracle for closed-form spectra).
std::vector<double> oracle_eigs(const JacobiOperator& j, int count);

struct EigenSystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns
};

EigenSystem eigensystem(const JacobiOperator& j);

/// Unit eigenvector of j for an eigenvalue known in closed form, by a twisted factorization
/// of j − λ (forward and backward pivots, twist at the smallest pivot sum). Component 0 is
/// made positive, with its sign tracked through the factorization even when it underflows.
Eigen::VectorXd eigenvector_at(const JacobiOperator& j, double lambda);

struct PaddedVector {
    Eigen::VectorXd head;  // first N components of the unit eigenvector
    double tail_mass;      // squared norm beyond N
    int padded_size;
};

/// Eigenvector of the semi-infinite operator at an exact eigenvalue, computed on a padded
/// truncation that is doubled until its last tenth carries less than 1e-30 of the mass.
PaddedVector eigenvector_padded(const CoefficientFn& coeffs, double lambda, int N, int min_pad = 64);

/// e^{i·rate·J} ψ via the eigendecomposition.
Eigen::VectorXcd exp_apply(const EigenSystem& sys, const Eigen::VectorXcd& psi, double rate);

} // namespace multiboson::jacobi

#endif
