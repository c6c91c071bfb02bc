#include "multiboson/jacobi.hpp"

#include "multiboson/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace multiboson::jacobi {

namespace {

// Zero pivots are replaced by a rounding-level value relative to the operator scale, which keeps
// the ratios in the factorization finite when λ is an exact eigenvalue of a leading block.
double safe(double d, double pivot)
{
    return d != 0.0 ? d : pivot;
}

Eigen::VectorXd as_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_shape(const JacobiOperator& j)
{
    if (j.diag.empty())
        throw DomainError("Jacobi operator is empty");
    if (j.offdiag.size() + 1 != j.diag.size())
        throw DomainError("Jacobi operator: offdiag must have size N-1");
}

} // namespace

Eigen::MatrixXd JacobiOperator::dense() const
{
    const Eigen::Index n = size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        m(k, k) = diag[k];
        if (k + 1 < n) {
            m(k, k + 1) = offdiag[k];
            m(k + 1, k) = offdiag[k];
        }
    }
    return m;
}

JacobiOperator truncate(const CoefficientFn& coeffs, int N)
{
    if (N < 1)
        throw DomainError("truncate: N must be positive");
    JacobiOperator j;
    j.diag.resize(N);
    j.offdiag.resize(N - 1);
    for (int k = 0; k < N; ++k) {
        const auto [a, b] = coeffs(k);
        j.diag[k] = a;
        if (k + 1 < N)
            j.offdiag[k] = b;
    }
    return j;
}

Eigen::VectorXd eigenvalues(const JacobiOperator& j)
{
    check_shape(j);
    if (j.size() == 1)
        return Eigen::VectorXd::Constant(1, j.diag[0]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(as_vector(j.diag), as_vector(j.offdiag), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("tridiagonal eigenvalue solver did not converge");
    return solver.eigenvalues();
}

std::vector<double> oracle_eigs(const JacobiOperator& j, int count)
{
    const Eigen::VectorXd ev = eigenvalues(j);
    const int n = std::min<int>(count, static_cast<int>(ev.size()));
    return std::vector<double>(ev.data(), ev.data() + n);
}

EigenSystem eigensystem(const JacobiOperator& j)
{
    check_shape(j);
    if (j.size() == 1)
        return {Eigen::VectorXd::Constant(1, j.diag[0]), Eigen::MatrixXd::Identity(1, 1)};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(as_vector(j.diag), as_vector(j.offdiag), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("tridiagonal eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvector_at(const JacobiOperator& j, double lambda)
{
    check_shape(j);
    const Eigen::Index n = j.size();
    if (n == 1)
        return Eigen::VectorXd::Ones(1);
    double scale = std::abs(lambda);
    for (double d : j.diag)
        scale = std::max(scale, std::abs(d));
    for (double b : j.offdiag)
        scale = std::max(scale, std::abs(b));
    const double pivot = std::numeric_limits<double>::epsilon() * std::max(scale, std::numeric_limits<double>::min());
    std::vector<double> fwd(n), bwd(n);
    fwd[0] = j.diag[0] - lambda;
    for (Eigen::Index k = 1; k < n; ++k)
        fwd[k] = j.diag[k] - lambda - j.offdiag[k - 1] * j.offdiag[k - 1] / safe(fwd[k - 1], pivot);
    bwd[n - 1] = j.diag[n - 1] - lambda;
    for (Eigen::Index k = n - 2; k >= 0; --k)
        bwd[k] = j.diag[k] - lambda - j.offdiag[k] * j.offdiag[k] / safe(bwd[k + 1], pivot);

    Eigen::Index twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double g = std::abs(fwd[k] + bwd[k] - (j.diag[k] - lambda));
        if (g < best) {
            best = g;
            twist = k;
        }
    }

    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    z(twist) = 1.0;
    double sign0 = 1.0;
    for (Eigen::Index k = twist - 1; k >= 0; --k) {
        const double ratio = -j.offdiag[k] / safe(fwd[k], pivot);
        z(k) = ratio * z(k + 1);
        if (ratio < 0.0)
            sign0 = -sign0;
    }
    for (Eigen::Index k = twist + 1; k < n; ++k)
        z(k) = -j.offdiag[k - 1] * z(k - 1) / safe(bwd[k], pivot);

    const double norm = z.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NumericalFailure("eigenvector_at: twisted factorization produced a degenerate vector");
    z /= norm;
    // Ratios are exact zero only when an off-diagonal vanishes; then the sign carries no meaning.
    if (twist == 0)
        sign0 = z(0) < 0.0 ? -1.0 : 1.0;
    return sign0 * z;
}

PaddedVector eigenvector_padded(const CoefficientFn& coeffs, double lambda, int N, int min_pad)
{
    int M = 2 * N + min_pad;
    for (int attempt = 0; attempt < 12; ++attempt) {
        const JacobiOperator j = truncate(coeffs, M);
        const Eigen::VectorXd z = eigenvector_at(j, lambda);
        const int edge = M - M / 10;
        const double edge_mass = z.tail(M - edge).squaredNorm();
        if (edge_mass < 1e-30) {
            PaddedVector out;
            out.head = z.head(N);
            out.tail_mass = z.tail(M - N).squaredNorm();
            out.padded_size = M;
            return out;
        }
        M *= 2;
    }
    throw NumericalFailure("eigenvector_padded: eigenvector does not decay within the padded truncation");
}

Eigen::VectorXcd exp_apply(const EigenSystem& sys, const Eigen::VectorXcd& psi, double rate)
{
    if (psi.size() != sys.vectors.rows())
        throw DomainError("exp_apply: state size does not match operator size");
    const Eigen::VectorXcd coeff = sys.vectors.transpose().cast<std::complex<double>>() * psi;
    Eigen::VectorXcd phased(coeff.size());
    for (Eigen::Index n = 0; n < coeff.size(); ++n)
        phased(n) = std::polar(1.0, rate * sys.values(n)) * coeff(n);
    return sys.vectors.cast<std::complex<double>>() * phased;
}

} // namespace multiboson::jacobi
