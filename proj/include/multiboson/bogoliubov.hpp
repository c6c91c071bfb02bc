#ifndef MULTIBOSON_BOGOLIUBOV_HPP
#define MULTIBOSON_BOGOLIUBOV_HPP

#include "multiboson/rep.hpp"

#include <Eigen/Dense>

#include <utility>

namespace multiboson::bogoliubov {

/// Element (a, σ) of ℝ^× ⋊ ℤ₂ with (a,σ)(b,τ) = (a·b^σ, στ).
struct GroupElement {
    double a = 1.0;
    int sigma = 1;

    GroupElement() = default;
    GroupElement(double a, int sigma);
};

GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

/// Rows are the images of (A₀, A₋, A₊) expressed in the basis (A₀, A₋, A₊).
/// With this layout action_matrix(g·h) = action_matrix(g)·action_matrix(h).
Eigen::Matrix3d action_matrix(const GroupElement& g);

/// Images of generator matrices: 𝔟(X_i) = Σ_j M_ij X_j.
rep::Generators act(const GroupElement& g, const rep::Generators& x);

/// Label transformation (μ, ν) ↦ (μ/a, aν) for σ = 1 and (aν, μ/a) for σ = −1.
std::pair<double, double> act_on_labels(const GroupElement& g, double mu, double nu);

/// Orbit label μν.
double orbit_invariant(double mu, double nu);

struct Implementer {
    Eigen::MatrixXd U;              // N×N, column n is the image of |n⟩
    Eigen::VectorXd column_tail;    // squared norm of each exact column beyond row N
    int interior = 0;               // leading columns whose tail is below 1e-14
};

/// Unitary implementing 𝔟_{a,σ} on a sector with initial value alpha0, truncated to N×N.
/// Columns are the exact eigenvectors of 𝔟(A₀) at 2n + α₀, truncated at row N.
/// Throws UnsupportedCase for a ≤ 0.
Implementer implementer_with_tails(const GroupElement& g, double alpha0, int N);

Eigen::MatrixXd implementer(const GroupElement& g, double alpha0, int N);

} // namespace multiboson::bogoliubov

#endif
