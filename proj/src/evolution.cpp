#include "multiboson/evolution.hpp"

#include "multiboson/coherent.hpp"
#include "multiboson/errors.hpp"
#include "multiboson/jacobi.hpp"
#include "multiboson/onemode.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <sstream>

namespace multiboson::evolution {

using cplx = std::complex<double>;

namespace {

std::vector<int> sector_levels(const rep::MultibosonRep& rep, int r, int N)
{
    std::vector<int> out;
    for (int n = r; n < N; n += rep.l)
        out.push_back(n);
    return out;
}

bool same(const bogoliubov::GroupElement& x, double a, int sigma)
{
    return x.a == a && x.sigma == sigma;
}

bool is_d_form(const TwoModeInteraction& i)
{
    return same(i.g, 1.0, -1) && same(i.h, 1.0, 1);
}

bool is_c_form(const TwoModeInteraction& i)
{
    return same(i.g, 1.0, -1) && same(i.h, -1.0, 1);
}

jacobi::JacobiOperator sub_block(const jacobi::JacobiOperator& j, int lo, int hi)
{
    jacobi::JacobiOperator s;
    for (int k = lo; k <= hi; ++k) {
        s.diag.push_back(j.diag[static_cast<std::size_t>(k)]);
        if (k < hi)
            s.offdiag.push_back(j.offdiag[static_cast<std::size_t>(k)]);
    }
    return s;
}

// e^{i·rate·J} on a small block; a 1×1 block is a phase.
Eigen::VectorXcd block_exp(const jacobi::JacobiOperator& j, const Eigen::VectorXcd& x, double rate)
{
    if (j.size() == 1)
        return std::polar(1.0, rate * j.diag[0]) * x;
    return jacobi::exp_apply(jacobi::eigensystem(j), x, rate);
}

// Sector vector x indexed k0·L1 + k1 under a D-form interaction.
Eigen::VectorXcd evolve_d_sector(const Eigen::VectorXcd& x, int L0, int L1, double alpha, double beta, double rate)
{
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (int K = 0; K <= L0 + L1 - 2; ++K) {
        const int lo = std::max(0, K - (L1 - 1));
        const int hi = std::min(K, L0 - 1);
        Eigen::VectorXcd v(hi - lo + 1);
        for (int k = lo; k <= hi; ++k)
            v(k - lo) = x(static_cast<Eigen::Index>(k) * L1 + (K - k));
        if (v.isZero(0.0))
            continue;
        const twomode::DBlock block{K, alpha, beta};
        Eigen::VectorXcd w;
        if (lo == 0 && hi == K) {
            const std::vector<double> energies = twomode::hd_spectrum(block);
            w = Eigen::VectorXcd::Zero(v.size());
            for (int n = 0; n <= K; ++n) {
                const Eigen::VectorXcd e = twomode::hd_eigenvectors(block, n).amplitudes;
                w += std::polar(1.0, rate * energies[static_cast<std::size_t>(n)]) * e.dot(v) * e;
            }
        } else {
            w = block_exp(sub_block(twomode::hd_block_jacobi(block), lo, hi), v, rate);
        }
        for (int k = lo; k <= hi; ++k)
            y(static_cast<Eigen::Index>(k) * L1 + (K - k)) = w(k - lo);
    }
    return y;
}

Eigen::VectorXcd evolve_c_sector(const Eigen::VectorXcd& x, int L0, int L1, double alpha, double beta, double rate)
{
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (int K = -(L1 - 1); K <= L0 - 1; ++K) {
        const int count = K >= 0 ? std::min(L0 - K, L1) : std::min(L0, L1 + K);
        auto index = [&](int k) {
            const int m0 = K >= 0 ? K + k : k;
            const int m1 = K >= 0 ? k : k - K;
            return static_cast<Eigen::Index>(m0) * L1 + m1;
        };
        Eigen::VectorXcd v(count);
        for (int k = 0; k < count; ++k)
            v(k) = x(index(k));
        if (v.isZero(0.0))
            continue;
        jacobi::JacobiOperator j;
        if (count == 1)
            j.diag.push_back(-0.5 * (2.0 * std::max(K, 0) + alpha) * (2.0 * std::max(-K, 0) + beta));
        else
            j = twomode::hc_block_jacobi({K, alpha, beta, count});
        const Eigen::VectorXcd w = block_exp(j, v, rate);
        for (int k = 0; k < count; ++k)
            y(index(k)) = w(k);
    }
    return y;
}

Eigen::VectorXcd evolve_general_sector(const Eigen::VectorXcd& x, const TwoModeInteraction& in, int r0, int r1,
                                       int L0, int L1, double rate)
{
    const int Lm = std::max(L0, L1);
    const Eigen::MatrixXd full(twomode::build_h_matrix({in.reps, in.g, in.h, r0, r1}, Lm));
    Eigen::MatrixXd hs(L0 * L1, L0 * L1);
    for (int i0 = 0; i0 < L0; ++i0)
        for (int i1 = 0; i1 < L1; ++i1)
            for (int j0 = 0; j0 < L0; ++j0)
                for (int j1 = 0; j1 < L1; ++j1)
                    hs(i0 * L1 + i1, j0 * L1 + j1) = full(i0 * Lm + i1, j0 * Lm + j1);
    const Eigen::MatrixXcd gen = cplx(0.0, rate) * hs.cast<cplx>();
    const Eigen::MatrixXcd u = gen.exp();
    return u * x;
}

StateVector interaction_step_two(const FullModel& m, const TwoModeInteraction& in, const Eigen::VectorXcd& psi,
                                 double t)
{
    const int N = m.N;
    const double rate = -in.scale * t;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
    for (int r0 = 0; r0 < in.reps.rep0.l; ++r0)
        for (int r1 = 0; r1 < in.reps.rep1.l; ++r1) {
            const std::vector<int> I0 = sector_levels(in.reps.rep0, r0, N);
            const std::vector<int> I1 = sector_levels(in.reps.rep1, r1, N);
            const int L0 = static_cast<int>(I0.size()), L1 = static_cast<int>(I1.size());
            if (L0 == 0 || L1 == 0)
                continue;
            Eigen::VectorXcd x(static_cast<Eigen::Index>(L0) * L1);
            for (int k0 = 0; k0 < L0; ++k0)
                for (int k1 = 0; k1 < L1; ++k1)
                    x(k0 * L1 + k1) = psi(static_cast<Eigen::Index>(I0[k0]) * N + I1[k1]);
            if (x.isZero(0.0))
                continue;
            const double alpha = in.reps.rep0.alpha0_init[static_cast<std::size_t>(r0)];
            const double beta = in.reps.rep1.alpha0_init[static_cast<std::size_t>(r1)];
            Eigen::VectorXcd y;
            if (is_d_form(in))
                y = evolve_d_sector(x, L0, L1, alpha, beta, rate);
            else if (is_c_form(in))
                y = evolve_c_sector(x, L0, L1, alpha, beta, rate);
            else
                y = evolve_general_sector(x, in, r0, r1, L0, L1, rate);
            for (int k0 = 0; k0 < L0; ++k0)
                for (int k1 = 0; k1 < L1; ++k1)
                    out(static_cast<Eigen::Index>(I0[k0]) * N + I1[k1]) = y(k0 * L1 + k1);
        }
    out *= std::polar(1.0, -in.offset * t);
    return {out, "fock2"};
}

StateVector interaction_step_one(const FullModel& m, const OneModeInteraction& in, const Eigen::VectorXcd& psi, double t)
{
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
    for (int r = 0; r < in.rep.l; ++r) {
        const std::vector<int> I = sector_levels(in.rep, r, m.N);
        const int L = static_cast<int>(I.size());
        if (L == 0)
            continue;
        StateVector x;
        x.amplitudes.resize(L);
        for (int k = 0; k < L; ++k)
            x.amplitudes(k) = psi(I[k]);
        if (x.amplitudes.isZero(0.0))
            continue;
        const onemode::OneModeHamiltonian h(in.mu, in.nu, in.rep.alpha0_init[static_cast<std::size_t>(r)]);
        // A sector cut at L levels is treated like a cut block: its own tridiagonal eigensystem,
        // except for the diagonal case where truncation is exact.
        Eigen::VectorXcd y;
        if (onemode::classify(h.mu, h.nu, h.alpha0).index == 9) {
            onemode::EvolveOptions opt;
            opt.N = L;
            opt.tail_tol = std::numeric_limits<double>::infinity();
            y = onemode::evolve(h, x, -t, opt).amplitudes;
        } else {
            y = jacobi::exp_apply(jacobi::eigensystem(onemode::jacobi(h, L)), x.amplitudes, -t);
        }
        for (int k = 0; k < L; ++k)
            out(I[k]) = y(k);
    }
    return {out, "fock1"};
}

void check_tail(const FullModel& m, const Eigen::VectorXcd& psi, const char* which)
{
    const double tail = fock_tail(m, psi);
    if (m.tail_policy == TailPolicy::Enforce && tail > m.tail_tol) {
        std::ostringstream msg;
        msg << "evolve_full: " << which << " tail " << tail << " exceeds " << m.tail_tol << " at N=" << m.N
            << " per mode; increase N";
        throw TruncationOverflow(msg.str(), tail);
    }
}

} // namespace

Eigen::Index FullModel::dimension() const
{
    return modes() == 2 ? static_cast<Eigen::Index>(N) * N : N;
}

SparseMatrix interaction_matrix(const FullModel& m)
{
    if (const auto* two = std::get_if<TwoModeInteraction>(&m.interaction)) {
        SparseMatrix h = two->scale * twomode::build_h_full({two->reps, two->g, two->h, 0, 0}, m.N);
        SparseMatrix id(h.rows(), h.cols());
        id.setIdentity();
        return h + two->offset * id;
    }
    const auto& one = std::get<OneModeInteraction>(m.interaction);
    const rep::Generators g = rep::build_generators_full(one.rep, m.N);
    const Eigen::MatrixXd h = 0.5 * (one.mu + one.nu) * g.A0 + 0.5 * (one.mu - one.nu) * (g.Am + g.Ap);
    return h.sparseView(0.0, 0.0);
}

double fock_tail(const FullModel& m, const Eigen::VectorXcd& psi)
{
    const int N = m.N;
    const int edge = N - std::max(1, static_cast<int>(std::ceil(0.1 * N)));
    double sq = 0.0;
    if (m.modes() == 1) {
        for (int n = edge; n < N; ++n)
            sq += std::norm(psi(n));
        return std::sqrt(sq);
    }
    for (int n0 = 0; n0 < N; ++n0)
        for (int n1 = 0; n1 < N; ++n1)
            if (n0 >= edge || n1 >= edge)
                sq += std::norm(psi(static_cast<Eigen::Index>(n0) * N + n1));
    return std::sqrt(sq);
}

StateVector evolve_full(const FullModel& m, const StateVector& psi0, double t, bool include_free)
{
    if (m.N < 2)
        throw DomainError("evolve_full: N must be at least 2");
    if (psi0.size() != m.dimension()) {
        std::ostringstream msg;
        msg << "evolve_full: state has " << psi0.size() << " amplitudes, model expects " << m.dimension();
        throw DomainError(msg.str());
    }
    check_tail(m, psi0.amplitudes, "initial");
    StateVector out = m.modes() == 2
                          ? interaction_step_two(m, std::get<TwoModeInteraction>(m.interaction), psi0.amplitudes, t)
                          : interaction_step_one(m, std::get<OneModeInteraction>(m.interaction), psi0.amplitudes, t);
    const double drift = std::abs(out.norm() - psi0.norm());
    if (drift > 1e-10) {
        std::ostringstream msg;
        msg << "evolve_full: norm drift " << drift << " exceeds 1e-10";
        throw NumericalFailure(msg.str());
    }
    if (include_free) {
        const int N = m.N;
        if (m.modes() == 1) {
            for (int n = 0; n < N; ++n)
                out.amplitudes(n) *= std::polar(1.0, -m.omega0 * n * t);
        } else {
            for (int n0 = 0; n0 < N; ++n0)
                for (int n1 = 0; n1 < N; ++n1)
                    out.amplitudes(static_cast<Eigen::Index>(n0) * N + n1) *=
                        std::polar(1.0, -(m.omega0 * n0 + m.omega1 * n1) * t);
        }
    }
    check_tail(m, out.amplitudes, "evolved");
    return out;
}

Observables observables(const StateVector& psi, int modes)
{
    const double total = psi.amplitudes.squaredNorm();
    if (!(total > 0.0))
        throw DomainError("observables: zero state");
    const Eigen::Index size = psi.size();
    Eigen::Index N = size;
    if (modes == 2) {
        N = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(size))));
        if (N * N != size)
            throw DomainError("observables: two-mode state size is not a square");
    } else if (modes != 1) {
        throw DomainError("observables: modes must be 1 or 2");
    }
    double m0 = 0, s0 = 0, m1 = 0, s1 = 0;
    for (Eigen::Index i = 0; i < size; ++i) {
        const double p = std::norm(psi.amplitudes(i)) / total;
        const double n0 = static_cast<double>(modes == 2 ? i / N : i);
        const double n1 = static_cast<double>(modes == 2 ? i % N : 0);
        m0 += p * n0;
        s0 += p * n0 * n0;
        m1 += p * n1;
        s1 += p * n1 * n1;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    Observables o;
    o.mean0 = m0;
    o.var0 = std::max(0.0, s0 - m0 * m0);
    o.fano0 = m0 > 1e-12 ? o.var0 / m0 : nan;
    if (modes == 2) {
        o.mean1 = m1;
        o.var1 = std::max(0.0, s1 - m1 * m1);
        o.fano1 = m1 > 1e-12 ? o.var1 / m1 : nan;
    }
    return o;
}

ObservableSeries run_series(const FullModel& m, const StateVector& psi0, const std::vector<double>& times)
{
    const SparseMatrix h = interaction_matrix(m);
    ObservableSeries series;
    for (double t : times) {
        // The interaction-picture state e^{iH₀t}ψ(t) = e^{−iHt}ψ₀ carries the conserved energy.
        const StateVector inner = evolve_full(m, psi0, t, false);
        const StateVector psi = evolve_full(m, psi0, t, true);
        SeriesRecord rec;
        rec.t = t;
        rec.obs = observables(psi, m.modes());
        rec.norm = psi.norm();
        rec.tail = fock_tail(m, psi.amplitudes);
        const Eigen::VectorXcd hv = h.cast<cplx>() * inner.amplitudes;
        rec.energy = inner.amplitudes.dot(hv).real() / inner.amplitudes.squaredNorm();
        series.max_tail = std::max(series.max_tail, rec.tail);
        series.records.push_back(rec);
    }
    return series;
}

std::string to_string(PresetName p)
{
    switch (p) {
    case PresetName::HI: return "HI";
    case PresetName::HII: return "HII";
    case PresetName::HIII: return "HIII";
    case PresetName::HIV: return "HIV";
    }
    return "?";
}

PresetName parse_preset(const std::string& s)
{
    for (PresetName p : {PresetName::HI, PresetName::HII, PresetName::HIII, PresetName::HIV})
        if (s == to_string(p))
            return p;
    throw DomainError("unknown preset '" + s + "' (expected HI, HII, HIII or HIV)");
}

namespace {

struct Ladder {
    SparseMatrix a, ad, n, id, sqrt_n, sqrt_n1;
};

Ladder ladder(int N)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd sn = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd sn1 = Eigen::MatrixXd::Zero(N, N);
    for (int k = 0; k < N; ++k) {
        if (k + 1 < N)
            a(k, k + 1) = std::sqrt(k + 1.0);
        n(k, k) = k;
        sn(k, k) = std::sqrt(static_cast<double>(k));
        sn1(k, k) = std::sqrt(k + 1.0);
    }
    Ladder l;
    l.a = a.sparseView(0.0, 0.0);
    l.ad = SparseMatrix(l.a.transpose());
    l.n = n.sparseView(0.0, 0.0);
    l.id = Eigen::MatrixXd::Identity(N, N).sparseView(0.0, 0.0);
    l.sqrt_n = sn.sparseView(0.0, 0.0);
    l.sqrt_n1 = sn1.sparseView(0.0, 0.0);
    return l;
}

rep::MultibosonRep pair_rep()
{
    return rep::MultibosonRep(2, {0.5, 1.5});
}

rep::MultibosonRep single_rep()
{
    return rep::MultibosonRep(1, {1.0});
}

} // namespace

Preset preset(PresetName name, int N)
{
    if (N < 3)
        throw DomainError("preset: N must be at least 3");
    using twomode::kron;
    const Ladder L = ladder(N);
    const SparseMatrix a2 = L.a * L.a, ad2 = L.ad * L.ad;
    SparseMatrix m = kron(L.n, L.id) + kron(L.id, L.n) + 2.0 * kron(L.n, L.n);
    Preset p;
    p.name = name;
    const bogoliubov::GroupElement e{1.0, -1}, d{1.0, 1}, c{-1.0, 1};
    switch (name) {
    case PresetName::HI:
        m += kron(a2, a2) + kron(ad2, ad2);
        p.mapping = {{pair_rep(), pair_rep()}, e, c, -4.0, -0.5};
        p.mapping_note = "-4 H_C - 1/2 with l0=l1=2, alpha0=beta0=(1/2, 3/2)";
        break;
    case PresetName::HII:
        m += kron(a2, ad2) + kron(ad2, a2);
        p.mapping = {{pair_rep(), pair_rep()}, e, d, 4.0, -0.5};
        p.mapping_note = "4 H_D - 1/2 with l0=l1=2, alpha0=beta0=(1/2, 3/2); repeated term read as X + h.c.";
        break;
    case PresetName::HIII:
        m += kron(SparseMatrix(L.sqrt_n * L.ad), a2) + kron(SparseMatrix(L.sqrt_n1 * L.a), ad2);
        p.mapping = {{single_rep(), pair_rep()}, e, d, 2.0, -0.5};
        p.mapping_note = "2 H_D - 1/2 with l0=1, alpha0=(1); l1=2, beta0=(1/2, 3/2)";
        break;
    case PresetName::HIV:
        m += kron(SparseMatrix(L.sqrt_n * L.ad), SparseMatrix(L.sqrt_n * L.ad)) +
             kron(SparseMatrix(L.sqrt_n1 * L.a), SparseMatrix(L.sqrt_n1 * L.a));
        p.mapping = {{single_rep(), single_rep()}, e, c, -1.0, -0.5};
        p.mapping_note = "-H_C - 1/2 with l0=l1=1, alpha0=beta0=1";
        break;
    }
    m.prune(0.0);
    p.matrix = m;
    return p;
}

FullModel preset_model(PresetName name, int N, double omega0, double omega1)
{
    FullModel m;
    m.omega0 = omega0;
    m.omega1 = omega1;
    m.N = N;
    m.interaction = preset(name, N).mapping;
    return m;
}

StateVector fock_state(int N, int n0, int n1)
{
    if (n0 < 0 || n1 < 0 || n0 >= N || n1 >= N)
        throw DomainError("fock_state: occupation outside the truncation");
    return basis_state(static_cast<Eigen::Index>(N) * N, static_cast<Eigen::Index>(n0) * N + n1, "fock2");
}

Eigen::VectorXcd coherent_profile(const rep::MultibosonRep& rep, int r, std::complex<double> zeta, int N)
{
    if (r < 0 || r >= rep.l)
        throw DomainError("coherent_profile: sector residue out of range");
    const std::vector<int> levels = sector_levels(rep, r, N);
    if (levels.empty())
        throw DomainError("coherent_profile: sector has no levels below N");
    const StateVector amp =
        coherent::coherent_amplitudes(zeta, rep.alpha0_init[static_cast<std::size_t>(r)], static_cast<int>(levels.size()));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N);
    for (std::size_t k = 0; k < levels.size(); ++k)
        v(levels[k]) = amp.amplitudes(static_cast<Eigen::Index>(k));
    return v / v.norm();
}

StateVector product_state(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b)
{
    if (a.size() != b.size())
        throw DomainError("product_state: both modes need the same truncation");
    const Eigen::Index N = a.size();
    StateVector s;
    s.basis = "fock2";
    s.amplitudes.resize(N * N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
            s.amplitudes(i * N + j) = a(i) * b(j);
    return s;
}

} // namespace multiboson::evolution
