#include "multiboson/twomode.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace multiboson::twomode {

namespace {

SparseMatrix to_sparse(const Eigen::MatrixXd& m)
{
    return m.sparseView(0.0, 0.0);
}

// Generators of one mode as sparse matrices, ordered (A₀, A₋, A₊).
std::array<SparseMatrix, 3> as_array(const rep::Generators& g)
{
    return {to_sparse(g.A0), to_sparse(g.Am), to_sparse(g.Ap)};
}

SparseMatrix assemble(const Eigen::Matrix3d& c, const std::array<SparseMatrix, 3>& a,
                      const std::array<SparseMatrix, 3>& b)
{
    const Eigen::Index dim = a[0].rows() * b[0].rows();
    SparseMatrix out(dim, dim);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            if (c(j, k) != 0.0)
                out += c(j, k) * kron(a[j], b[k]);
    out.prune(0.0);
    return out;
}

double rising(double x, int n)
{
    double p = 1.0;
    for (int i = 0; i < n; ++i)
        p *= x + i;
    return p;
}

const rep::MultibosonRep& checked_rep(const rep::MultibosonRep& r, int residue, const char* who)
{
    if (residue < 0 || residue >= r.l)
        throw DomainError(std::string(who) + ": sector residue out of range");
    return r;
}

} // namespace

TwoModeHamiltonian canonical_d(const rep::TwoModeRep& reps, int r0, int r1)
{
    return {reps, {1.0, -1}, {1.0, 1}, r0, r1};
}

TwoModeHamiltonian canonical_c(const rep::TwoModeRep& reps, int r0, int r1)
{
    return {reps, {1.0, -1}, {-1.0, 1}, r0, r1};
}

Eigen::Matrix3d ham_coefficients(const bogoliubov::GroupElement& g, const bogoliubov::GroupElement& h)
{
    const double a = g.a, b = h.a;
    const double s = g.sigma, t = h.sigma;
    const double den = 4.0 * a * b;
    const double diag = (a * a + b * b) / den;
    const double same = -s * t * (a - b) * (a - b) / den;
    const double mix0 = -s * (a * a - b * b) / den;
    const double mix1 = t * (a * a - b * b) / den;
    const double cross = -s * t * (a + b) * (a + b) / den;
    Eigen::Matrix3d c;
    // rows: A₀, A₋, A₊; columns: B₀, B₋, B₊
    c << diag, mix1, mix1,
        mix0, same, cross,
        mix0, cross, same;
    return c;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b)
{
    const Eigen::Index rb = b.rows(), cb = b.cols();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (int ca = 0; ca < a.outerSize(); ++ca)
        for (SparseMatrix::InnerIterator ia(a, ca); ia; ++ia)
            for (int cbb = 0; cbb < b.outerSize(); ++cbb)
                for (SparseMatrix::InnerIterator ib(b, cbb); ib; ++ib)
                    trip.emplace_back(ia.row() * rb + ib.row(), ia.col() * cb + ib.col(), ia.value() * ib.value());
    SparseMatrix out(a.rows() * rb, a.cols() * cb);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

SparseMatrix build_h_matrix(const TwoModeHamiltonian& h, int N)
{
    if (N < 1)
        throw DomainError("build_h_matrix: N must be positive");
    const rep::OneModeSector s0(checked_rep(h.reps.rep0, h.r0, "build_h_matrix"), h.r0, N);
    const rep::OneModeSector s1(checked_rep(h.reps.rep1, h.r1, "build_h_matrix"), h.r1, N);
    return assemble(ham_coefficients(h.g, h.h), as_array(rep::sector_generators(s0)),
                    as_array(rep::sector_generators(s1)));
}

SparseMatrix build_h_full(const TwoModeHamiltonian& h, int N)
{
    if (N < 1 || N > rep::dense_limit)
        throw DomainError("build_h_full: need 1 <= N <= dense_limit");
    return assemble(ham_coefficients(h.g, h.h), as_array(rep::build_generators_full(h.reps.rep0, N)),
                    as_array(rep::build_generators_full(h.reps.rep1, N)));
}

Eigen::MatrixXd h_from_casimirs(const TwoModeHamiltonian& h, int N)
{
    const rep::OneModeSector s0(checked_rep(h.reps.rep0, h.r0, "h_from_casimirs"), h.r0, N);
    const rep::OneModeSector s1(checked_rep(h.reps.rep1, h.r1, "h_from_casimirs"), h.r1, N);
    const rep::Generators a = bogoliubov::act(h.g, rep::sector_generators(s0));
    const rep::Generators b = bogoliubov::act(h.h, rep::sector_generators(s1));
    // ½(C_D − C_A − C_B) leaves only the cross terms of the sum algebra's Casimir.
    const SparseMatrix out = 0.5 * kron(to_sparse(a.A0), to_sparse(b.A0)) - kron(to_sparse(a.Am), to_sparse(b.Ap)) -
                             kron(to_sparse(a.Ap), to_sparse(b.Am));
    return Eigen::MatrixXd(out);
}

std::vector<std::pair<int, int>> manley_rowe_blocks(CanonicalForm form, int K, int count)
{
    std::vector<std::pair<int, int>> out;
    if (form == CanonicalForm::D) {
        if (K < 0)
            throw DomainError("manley_rowe_blocks: D blocks need K >= 0");
        for (int k = 0; k <= K; ++k)
            out.emplace_back(k, K - k);
        return out;
    }
    if (count < 0)
        throw DomainError("manley_rowe_blocks: count must be nonnegative");
    for (int k = 0; k < count; ++k)
        out.push_back(K >= 0 ? std::pair<int, int>{K + k, k} : std::pair<int, int>{k, k - K});
    return out;
}

namespace {

void check_block(double alpha0, double beta0, const char* who)
{
    if (!(alpha0 > 0.0) || !(beta0 > 0.0))
        throw DomainError(std::string(who) + ": alpha0 and beta0 must be positive");
}

} // namespace

jacobi::JacobiOperator hd_block_jacobi(const DBlock& b, Convention conv)
{
    check_block(b.alpha0, b.beta0, "hd_block_jacobi");
    if (b.K < 0)
        throw DomainError("hd_block_jacobi: K must be nonnegative");
    const double shift = conv == Convention::OperatorDerived ? -1.0 : 0.0;
    jacobi::JacobiOperator j;
    for (int k = 0; k <= b.K; ++k) {
        const double rest = b.K - k;
        j.diag.push_back(0.5 * (2.0 * k + b.alpha0) * (2.0 * rest + b.beta0));
        if (k < b.K)
            j.offdiag.push_back(std::sqrt((k + 1.0) * (k + b.alpha0) * rest * (rest + b.beta0 + shift)));
    }
    return j;
}

std::vector<double> hd_spectrum(const DBlock& b)
{
    check_block(b.alpha0, b.beta0, "hd_spectrum");
    std::vector<double> e;
    for (int n = 0; n <= b.K; ++n)
        e.push_back(n * (n + b.alpha0 + b.beta0 - 1.0) + 0.5 * b.alpha0 * b.beta0);
    return e;
}

orthopoly::PolyFamily hd_family(const DBlock& b)
{
    check_block(b.alpha0, b.beta0, "hd_family");
    return orthopoly::PolyFamily::dual_hahn(b.alpha0 - 1.0, b.beta0 - 1.0, b.K);
}

StateVector hd_eigenvectors(const DBlock& b, int n)
{
    if (n < 0 || n > b.K)
        throw DomainError("hd_eigenvectors: need 0 <= n <= K");
    const double e = hd_spectrum(b)[static_cast<std::size_t>(n)];
    StateVector s;
    s.amplitudes = jacobi::eigenvector_at(hd_block_jacobi(b), e).cast<std::complex<double>>();
    s.basis = "d-block";
    return s;
}

jacobi::JacobiOperator hc_block_jacobi(const CBlock& b)
{
    check_block(b.alpha0, b.beta0, "hc_block_jacobi");
    if (b.N < 2)
        throw DomainError("hc_block_jacobi: N must be at least 2");
    const double K = b.K;
    return jacobi::truncate(
        [&](int k) {
            const double m0 = b.K >= 0 ? K + k : k;   // first-mode sector level
            const double m1 = b.K >= 0 ? k : k - K;   // second-mode sector level
            return std::pair<double, double>{-0.5 * (2.0 * m0 + b.alpha0) * (2.0 * m1 + b.beta0),
                                              -std::sqrt((m0 + b.alpha0) * (m0 + 1.0) * (m1 + b.beta0) * (m1 + 1.0))};
        },
        b.N);
}

UVWParams uvw_params(int K, double alpha0, double beta0)
{
    check_block(alpha0, beta0, "uvw_params");
    const double d = beta0 - alpha0;
    const double p = 0.5 * (alpha0 + beta0 - 1.0);
    const double q = 0.5 * (beta0 - alpha0 + 1.0);
    const double r = 0.5 * (alpha0 - beta0 + 1.0);
    UVWParams lo, mid, hi;
    double left_edge, right_edge;
    if (K >= 0) {
        lo = {q, K + r, p, "K>=0, beta0-alpha0 < -1"};
        mid = {p, q, K + r, "K>=0, -1 < beta0-alpha0 < 2K+1"};
        hi = {K + r, p, q, "K>=0, beta0-alpha0 > 2K+1"};
        left_edge = -1.0;
        right_edge = 2.0 * K + 1.0;
    } else {
        lo = {-K + q, r, p, "K<0, beta0-alpha0 < 2K-1"};
        mid = {p, -K + q, r, "K<0, 2K-1 < beta0-alpha0 < 1"};
        hi = {r, p, -K + q, "K<0, beta0-alpha0 > 1"};
        left_edge = 2.0 * K - 1.0;
        right_edge = 1.0;
    }
    std::ostringstream msg;
    if (d == left_edge) {
        msg << "uvw_params: beta0-alpha0 = " << d << " is an interval endpoint";
        throw BoundaryAmbiguity(msg.str(), lo, mid);
    }
    if (d == right_edge) {
        msg << "uvw_params: beta0-alpha0 = " << d << " is an interval endpoint";
        throw BoundaryAmbiguity(msg.str(), mid, hi);
    }
    return d < left_edge ? lo : (d < right_edge ? mid : hi);
}

double hc_shift(double alpha0, double beta0)
{
    return 0.25 * ((alpha0 - 1.0) * (alpha0 - 1.0) + (beta0 - 1.0) * (beta0 - 1.0) - 1.0);
}

orthopoly::SpectralMeasure hc_spectrum(const CBlock& b, bool normalize)
{
    const UVWParams p = uvw_params(b.K, b.alpha0, b.beta0);
    const orthopoly::PolyFamily fam = orthopoly::PolyFamily::continuous_dual_hahn(p.u, p.v, p.w);
    return orthopoly::measure(fam, normalize).mapped(-hc_shift(b.alpha0, b.beta0), 1.0);
}

StateVector hc_eigenvectors_discrete(const CBlock& b, int n)
{
    const UVWParams p = uvw_params(b.K, b.alpha0, b.beta0);
    if (n < 0 || !(p.u + n < 0.0)) {
        std::ostringstream msg;
        msg << "hc_eigenvectors_discrete: no bound state n=" << n << " (u=" << p.u << ")";
        throw UnsupportedCase(msg.str());
    }
    if (b.N < 2)
        throw DomainError("hc_eigenvectors_discrete: N must be at least 2");
    const orthopoly::PolyFamily fam = orthopoly::PolyFamily::continuous_dual_hahn(p.u, p.v, p.w);
    const double x = (p.u + n) * (p.u + n);
    Eigen::VectorXd v = orthopoly::eval_all(fam, b.N - 1, x);
    // The block carries negative off-diagonals, so its components alternate against the family's.
    for (int k = 1; k < b.N; k += 2)
        v(k) = -v(k);
    const double nrm = v.norm();
    if (!std::isfinite(nrm) || nrm == 0.0)
        throw NumericalFailure("hc_eigenvectors_discrete: recurrence overflowed");
    StateVector s;
    s.amplitudes = (v / nrm).cast<std::complex<double>>();
    s.basis = "c-block";
    return s;
}

std::vector<CouplingSample> coupling_functions(const TwoModeHamiltonian& h, int N,
                                               const std::vector<std::pair<int, int>>& grid)
{
    const SparseMatrix H = build_h_full(h, N);
    const int l0 = h.reps.rep0.l, l1 = h.reps.rep1.l;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto entry = [&](int n0, int n1, int m0, int m1, double x) {
        if (m0 < 0 || m1 < 0 || m0 >= N || m1 >= N || x == 0.0)
            return nan;
        return H.coeff(static_cast<Eigen::Index>(n0) * N + n1, static_cast<Eigen::Index>(m0) * N + m1) / x;
    };
    std::vector<CouplingSample> out;
    for (const auto& [n0, n1] : grid) {
        if (n0 < 0 || n1 < 0 || n0 >= N || n1 >= N)
            throw DomainError("coupling_functions: grid point outside the truncation");
        CouplingSample s;
        s.n0 = n0;
        s.n1 = n1;
        s.g00 = H.coeff(static_cast<Eigen::Index>(n0) * N + n1, static_cast<Eigen::Index>(n0) * N + n1);
        s.g_mm = entry(n0, n1, n0 + l0, n1 + l1, std::sqrt(rising(n0 + 1.0, l0) * rising(n1 + 1.0, l1)));
        s.g_pm = n0 >= l0 ? entry(n0, n1, n0 - l0, n1 + l1, std::sqrt(rising(n0 - l0 + 1.0, l0) * rising(n1 + 1.0, l1)))
                          : nan;
        s.g_m0 = entry(n0, n1, n0 + l0, n1, std::sqrt(rising(n0 + 1.0, l0)));
        s.g_0m = entry(n0, n1, n0, n1 + l1, std::sqrt(rising(n1 + 1.0, l1)));
        out.push_back(s);
    }
    return out;
}

} // namespace multiboson::twomode
