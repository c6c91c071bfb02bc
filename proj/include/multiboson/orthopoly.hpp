#ifndef MULTIBOSON_ORTHOPOLY_HPP
#define MULTIBOSON_ORTHOPOLY_HPP

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multiboson::orthopoly {

enum class Tag { Laguerre, Meixner, MeixnerPollaczek, DualHahn, ContinuousDualHahn };

std::string to_string(Tag tag);

/// Tagged parameter record. Only the fields belonging to `tag` are meaningful; use the
/// factory functions, which enforce the admissible ranges.
struct PolyFamily {
    Tag tag = Tag::Laguerre;
    double alpha = 0.0;                  // Laguerre
    double beta = 0.0, c = 0.0;          // Meixner
    double lambda = 0.0, phi = 0.0;      // Meixner–Pollaczek
    double gamma = 0.0, delta = 0.0;     // dual Hahn
    int K = 0;                           // dual Hahn
    double u = 0.0, v = 0.0, w = 0.0;    // continuous dual Hahn

    static PolyFamily laguerre(double alpha);
    static PolyFamily meixner(double beta, double c);
    static PolyFamily meixner_pollaczek(double lambda, double phi);
    static PolyFamily dual_hahn(double gamma, double delta, int K);
    static PolyFamily continuous_dual_hahn(double u, double v, double w);

    /// Number of polynomials in the family, or -1 when infinite.
    int size() const { return tag == Tag::DualHahn ? K + 1 : -1; }
};

/// Recurrence coefficients (a_k, b_k) of x P_k = b_{k-1} P_{k-1} + a_k P_k + b_k P_{k+1} for the
/// orthonormal family in its own variable. Off-diagonals are nonnegative in this convention:
///   Laguerre   variable with density 2(2x)^α e^{-2x} on x > 0
///   Meixner    atoms at x = 0, 1, 2, ...
///   M–P        density e^{(2φ-π)x} |Γ(λ+ix)|² on ℝ
///   dual Hahn  atoms at x = n(n+γ+δ+1), n = 0..K
///   CDH        x = -y², continuum x < 0 and atoms at (u+n)² for u+n < 0
std::pair<double, double> recurrence(const PolyFamily& family, int k);

/// P_0(x), ..., P_n(x) by forward recurrence with P_{-1} = 0, P_0 = 1.
Eigen::VectorXd eval_all(const PolyFamily& family, int n, double x);

/// The single value P_n(x). Throws DomainError when n exceeds K for a dual Hahn family.
double eval_orthonormal(const PolyFamily& family, int n, double x);

struct Atom {
    double location;
    double weight;
};

/// Continuous part of a measure. `density` is evaluated in the family variable.
/// At a finite edge the integrator substitutes x = edge ± t^edge_power to absorb
/// power-law behaviour there.
struct ContinuousPart {
    double lower;
    double upper;
    std::function<double(double)> density;
    double edge_power = 1.0;
    std::string label;
};

/// Orthogonality measure. Physical locations are shift + scale·x for each family location x.
struct SpectralMeasure {
    std::vector<Atom> atoms;
    std::optional<ContinuousPart> continuous;
    double shift = 0.0;
    double scale = 1.0;
    bool normalized = false;
    /// True when an infinite atom sequence was cut where the remaining mass drops below 1e-30.
    bool atoms_truncated = false;

    double physical(double x) const { return shift + scale * x; }
    /// Copy with the affine map E = shift + scale·x composed on top of the current one.
    SpectralMeasure mapped(double new_shift, double new_scale) const;
    /// Total atomic mass (family-variable weights).
    double atom_mass() const;
};

/// Measure of the family. With normalize=false the weights are exactly those printed for the
/// corresponding Hamiltonian; with normalize=true they are divided by the closed-form total
/// mass so that P_0 = 1 is orthonormal.
SpectralMeasure measure(const PolyFamily& family, bool normalize = true);

/// ∫ f dμ over atoms and continuum, f vector-valued.
Eigen::VectorXd integrate(const SpectralMeasure& mu, const std::function<Eigen::VectorXd(double)>& f,
                          Eigen::Index dim);

/// Max |⟨P_i, P_j⟩ − δ_ij| for i, j ≤ n_max under the normalized measure.
double gram_check(const PolyFamily& family, int n_max);

} // namespace multiboson::orthopoly

#endif
