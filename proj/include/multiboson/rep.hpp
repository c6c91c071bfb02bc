#ifndef MULTIBOSON_REP_HPP
#define MULTIBOSON_REP_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace multiboson::rep {

/// Cluster size l and the l initial values α₀(r) > 0.
struct MultibosonRep {
    int l = 1;
    std::vector<double> alpha0_init{1.0};

    MultibosonRep() = default;
    MultibosonRep(int l, std::vector<double> alpha0_init);
};

/// A sector H_r truncated to n_levels states |k⟩_r, k < n_levels.
struct OneModeSector {
    MultibosonRep rep;
    int r = 0;
    int n_levels = 2;

    OneModeSector(MultibosonRep rep, int r, int n_levels);
    double alpha() const { return rep.alpha0_init[r]; }
};

struct TwoModeRep {
    MultibosonRep rep0;
    MultibosonRep rep1;
};

int residue(long n, int l);

/// Diagonal value of A₀ on |n⟩: 2⌊n/l⌋ + α₀(n mod l).
double alpha0(const MultibosonRep& rep, long n);

/// α₋(n) = √((⌊n/l⌋+α₀(r))(⌊n/l⌋+1) / (n+1)_l).
double alpha_minus(const MultibosonRep& rep, long n);

/// ⟨n|A₋|n+l⟩ = α₋(n)·√((n+1)_l).
double lowering_entry(const MultibosonRep& rep, long n);

/// Sector coefficients in the |k⟩_r basis for α = α₀(r).
double sector_diag(double alpha, long k);      // 2k + α
double sector_lowering(double alpha, long k);  // A₋|k⟩ = √(k(k+α-1)) |k-1⟩
double sector_raising(double alpha, long k);   // A₊|k⟩ = √((k+α)(k+1)) |k+1⟩

struct Generators {
    Eigen::MatrixXd A0, Am, Ap;
};

struct SparseGenerators {
    Eigen::SparseMatrix<double> A0, Am, Ap;
};

/// Largest N for which the dense builder is used by build_generators.
constexpr int dense_limit = 512;

/// Dense matrices of A₀, A₋, A₊ on Fock levels 0..N-1 (N ≤ dense_limit).
Generators build_generators_full(const MultibosonRep& rep, int N);

/// Banded (sparse) matrices of A₀, A₋, A₊ on Fock levels 0..N-1, any N > l. Entries are
/// produced by the same coefficient functions as the dense builder and are bit-identical.
SparseGenerators build_generators_banded(const MultibosonRep& rep, int N);

/// Sector generators in the |k⟩_r basis, k < n_levels.
Generators sector_generators(const OneModeSector& sector);

/// Fock index kl + r of sector state |k⟩_r.
long sector_index(const MultibosonRep& rep, int r, long k);

/// ½A₀² − A₋A₊ − A₊A₋ evaluated on H_r: ½α₀(r)(α₀(r) − 2).
double casimir_value(const MultibosonRep& rep, int r);

Eigen::MatrixXd casimir_matrix(const Generators& g);

enum class SeriesClass { Complementary, Discrete, Other };
std::string to_string(SeriesClass c);
SeriesClass series_class(const MultibosonRep& rep, int r);

} // namespace multiboson::rep

#endif
