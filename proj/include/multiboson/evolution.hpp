#ifndef MULTIBOSON_EVOLUTION_HPP
#define MULTIBOSON_EVOLUTION_HPP

#include "multiboson/bogoliubov.hpp"
#include "multiboson/rep.hpp"
#include "multiboson/state.hpp"
#include "multiboson/twomode.hpp"

#include <Eigen/Sparse>

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace multiboson::evolution {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Enforce throws TruncationOverflow when the top tenth of a mode carries more than the
/// tolerance; Report only records the tail.
enum class TailPolicy { Enforce, Report };

/// H_int = scale·H(g, h) + offset·Id for the two-mode Hamiltonian of the given representations.
struct TwoModeInteraction {
    rep::TwoModeRep reps;
    bogoliubov::GroupElement g{1.0, -1};
    bogoliubov::GroupElement h{1.0, 1};
    double scale = 1.0;
    double offset = 0.0;
};

/// H_int = H_μν on every sector of `rep`.
struct OneModeInteraction {
    rep::MultibosonRep rep;
    double mu = 1.0;
    double nu = 0.0;
};

struct FullModel {
    double omega0 = 0.0;
    double omega1 = 0.0;  // ignored for one-mode models
    std::variant<TwoModeInteraction, OneModeInteraction> interaction;
    int N = 40;            // Fock levels per mode
    double tail_tol = 1e-8;
    TailPolicy tail_policy = TailPolicy::Enforce;

    int modes() const { return std::holds_alternative<TwoModeInteraction>(interaction) ? 2 : 1; }
    Eigen::Index dimension() const;
};

/// Fock-basis matrix of H_int (index n₀·N + n₁ for two modes).
SparseMatrix interaction_matrix(const FullModel& m);

/// Norm in the top tenth of any mode's Fock levels.
double fock_tail(const FullModel& m, const Eigen::VectorXcd& psi);

/// ψ(t) = e^{−iH₀t} e^{−iH_int t} ψ₀. D-blocks that fit inside the truncation use the closed-form
/// dual Hahn eigenpairs; cut D-blocks and C-blocks use the truncated tridiagonal eigensystem;
/// other group elements use a matrix exponential per sector. Throws NumericalFailure when the
/// norm drifts by more than 1e-10 and, under TailPolicy::Enforce, TruncationOverflow when the
/// initial or final tail exceeds tail_tol.
StateVector evolve_full(const FullModel& m, const StateVector& psi0, double t, bool include_free = true);

struct Observables {
    double mean0 = 0.0, var0 = 0.0, fano0 = 0.0;
    double mean1 = 0.0, var1 = 0.0, fano1 = 0.0;  // zero for one-mode states
};

/// Means, variances and Fano factors per mode; Fano is NaN when the mean is at most 1e-12.
Observables observables(const StateVector& psi, int modes);

struct SeriesRecord {
    double t = 0.0;
    Observables obs;
    double norm = 1.0;
    double tail = 0.0;
    double energy = 0.0;  // ⟨e^{iH₀t}ψ(t)| H_int |e^{iH₀t}ψ(t)⟩
};

struct ObservableSeries {
    std::vector<SeriesRecord> records;
    double max_tail = 0.0;
};

ObservableSeries run_series(const FullModel& m, const StateVector& psi0, const std::vector<double>& times);

enum class PresetName { HI, HII, HIII, HIV };
std::string to_string(PresetName p);
PresetName parse_preset(const std::string& s);

struct Preset {
    PresetName name;
    SparseMatrix matrix;             // built from a, a*, n on N levels per mode
    TwoModeInteraction mapping;      // framework parameters reproducing `matrix`
    std::string mapping_note;
};

Preset preset(PresetName name, int N);

/// Two-mode model whose interaction is the preset's framework mapping.
FullModel preset_model(PresetName name, int N, double omega0 = 1.0, double omega1 = 1.0);

/// |n₀, n₁⟩ on N levels per mode.
StateVector fock_state(int N, int n0, int n1);

/// One-mode vector with amplitudes ζ^k/√(k!(α₀(r))_k) on Fock levels kl + r < N, normalized.
Eigen::VectorXcd coherent_profile(const rep::MultibosonRep& rep, int r, std::complex<double> zeta, int N);

/// Product state a ⊗ b (index n₀·N + n₁).
StateVector product_state(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

} // namespace multiboson::evolution

#endif
