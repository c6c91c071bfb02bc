#include "multiboson/rep.hpp"

#include "multiboson/errors.hpp"

#include <cmath>

namespace multiboson::rep {

MultibosonRep::MultibosonRep(int l_, std::vector<double> init) : l(l_), alpha0_init(std::move(init))
{
    if (l < 1)
        throw DomainError("MultibosonRep: cluster size must be at least 1");
    if (static_cast<int>(alpha0_init.size()) != l)
        throw DomainError("MultibosonRep: need exactly l initial values");
    for (double a : alpha0_init)
        if (!(a > 0.0))
            throw DomainError("MultibosonRep: initial values must be positive");
}

OneModeSector::OneModeSector(MultibosonRep rep_, int r_, int n_levels_)
    : rep(std::move(rep_)), r(r_), n_levels(n_levels_)
{
    if (r < 0 || r >= rep.l)
        throw DomainError("OneModeSector: r must lie in [0, l)");
    if (n_levels < 2)
        throw DomainError("OneModeSector: need at least 2 levels");
}

int residue(long n, int l)
{
    if (l < 1)
        throw DomainError("residue: l must be positive");
    if (n < 0)
        throw DomainError("residue: n must be nonnegative");
    return static_cast<int>(n % l);
}

double alpha0(const MultibosonRep& rep, long n)
{
    return 2.0 * static_cast<double>(n / rep.l) + rep.alpha0_init[residue(n, rep.l)];
}

double alpha_minus(const MultibosonRep& rep, long n)
{
    const double q = static_cast<double>(n / rep.l);
    const double a = rep.alpha0_init[residue(n, rep.l)];
    double poch = 1.0;
    for (int j = 1; j <= rep.l; ++j)
        poch *= static_cast<double>(n + j);
    return std::sqrt((q + a) * (q + 1.0) / poch);
}

double lowering_entry(const MultibosonRep& rep, long n)
{
    double poch = 1.0;
    for (int j = 1; j <= rep.l; ++j)
        poch *= static_cast<double>(n + j);
    return alpha_minus(rep, n) * std::sqrt(poch);
}

double sector_diag(double alpha, long k)
{
    return 2.0 * static_cast<double>(k) + alpha;
}

double sector_lowering(double alpha, long k)
{
    const double kk = static_cast<double>(k);
    return std::sqrt(kk * (kk + alpha - 1.0));
}

double sector_raising(double alpha, long k)
{
    const double kk = static_cast<double>(k);
    return std::sqrt((kk + alpha) * (kk + 1.0));
}

Generators build_generators_full(const MultibosonRep& rep, int N)
{
    if (N <= rep.l)
        throw DomainError("build_generators_full: N must exceed l");
    if (N > dense_limit)
        throw DomainError("build_generators_full: dense storage is limited to N <= 512; use the banded builder");
    Generators g;
    g.A0 = Eigen::MatrixXd::Zero(N, N);
    g.Am = Eigen::MatrixXd::Zero(N, N);
    for (int n = 0; n < N; ++n) {
        g.A0(n, n) = alpha0(rep, n);
        if (n + rep.l < N)
            g.Am(n, n + rep.l) = lowering_entry(rep, n);
    }
    g.Ap = g.Am.transpose();
    return g;
}

SparseGenerators build_generators_banded(const MultibosonRep& rep, int N)
{
    if (N <= rep.l)
        throw DomainError("build_generators_banded: N must exceed l");
    std::vector<Eigen::Triplet<double>> diag, low, up;
    diag.reserve(N);
    low.reserve(N);
    up.reserve(N);
    for (int n = 0; n < N; ++n) {
        diag.emplace_back(n, n, alpha0(rep, n));
        if (n + rep.l < N) {
            const double e = lowering_entry(rep, n);
            low.emplace_back(n, n + rep.l, e);
            up.emplace_back(n + rep.l, n, e);
        }
    }
    SparseGenerators g;
    g.A0.resize(N, N);
    g.Am.resize(N, N);
    g.Ap.resize(N, N);
    g.A0.setFromTriplets(diag.begin(), diag.end());
    g.Am.setFromTriplets(low.begin(), low.end());
    g.Ap.setFromTriplets(up.begin(), up.end());
    return g;
}

Generators sector_generators(const OneModeSector& s)
{
    const int N = s.n_levels;
    const double a = s.alpha();
    Generators g;
    g.A0 = Eigen::MatrixXd::Zero(N, N);
    g.Am = Eigen::MatrixXd::Zero(N, N);
    for (int k = 0; k < N; ++k) {
        g.A0(k, k) = sector_diag(a, k);
        if (k + 1 < N)
            g.Am(k, k + 1) = sector_lowering(a, k + 1);
    }
    g.Ap = g.Am.transpose();
    return g;
}

long sector_index(const MultibosonRep& rep, int r, long k)
{
    return k * rep.l + r;
}

double casimir_value(const MultibosonRep& rep, int r)
{
    if (r < 0 || r >= rep.l)
        throw DomainError("casimir_value: r must lie in [0, l)");
    const double a = rep.alpha0_init[r];
    return 0.5 * a * (a - 2.0);
}

Eigen::MatrixXd casimir_matrix(const Generators& g)
{
    return 0.5 * g.A0 * g.A0 - g.Am * g.Ap - g.Ap * g.Am;
}

std::string to_string(SeriesClass c)
{
    switch (c) {
    case SeriesClass::Complementary: return "complementary";
    case SeriesClass::Discrete: return "discrete";
    case SeriesClass::Other: return "other";
    }
    return "other";
}

SeriesClass series_class(const MultibosonRep& rep, int r)
{
    if (r < 0 || r >= rep.l)
        throw DomainError("series_class: r must lie in [0, l)");
    const double a = rep.alpha0_init[r];
    if (a > 0.0 && a < 2.0)
        return SeriesClass::Complementary;
    if (a >= 2.0 && a == std::floor(a))
        return SeriesClass::Discrete;
    return SeriesClass::Other;
}

} // namespace multiboson::rep
