#include "multiboson/onemode.hpp"

#include "multiboson/errors.hpp"

#include <cmath>
#include <sstream>

namespace multiboson::onemode {

OneModeHamiltonian::OneModeHamiltonian(double mu_, double nu_, double alpha0_) : mu(mu_), nu(nu_), alpha0(alpha0_)
{
    if (mu == 0.0 && nu == 0.0)
        throw DomainError("OneModeHamiltonian: (mu, nu) must not both vanish");
    if (!(alpha0 > 0.0))
        throw DomainError("OneModeHamiltonian: alpha0 must be positive");
}

std::pair<double, double> coefficients(const OneModeHamiltonian& h, int k)
{
    const double kk = k;
    return {0.5 * (h.mu + h.nu) * (2.0 * kk + h.alpha0),
            0.5 * (h.mu - h.nu) * std::sqrt((kk + h.alpha0) * (kk + 1.0))};
}

jacobi::JacobiOperator jacobi(const OneModeHamiltonian& h, int N)
{
    return jacobi::truncate([&h](int k) { return coefficients(h, k); }, N);
}

CaseLabel classify(double mu, double nu, double alpha0)
{
    if (mu == 0.0 && nu == 0.0)
        throw DomainError("classify: (mu, nu) must not both vanish");
    using orthopoly::PolyFamily;
    CaseLabel c;
    if (mu == nu) {
        c.index = 9;
        c.discrete = true;
        return c;
    }
    if (nu == 0.0 || mu == 0.0) {
        c.index = nu == 0.0 ? 1 : 2;
        c.family = PolyFamily::laguerre(alpha0 - 1.0);
        c.scale = nu == 0.0 ? mu : nu;
        c.alternating = mu == 0.0;
        return c;
    }
    if ((mu > 0.0) != (nu > 0.0)) {
        c.index = mu > 0.0 ? 3 : 4;
        c.family = PolyFamily::meixner_pollaczek(0.5 * alpha0, std::acos(-(mu + nu) / (mu - nu)));
        c.scale = (mu > 0.0 ? 2.0 : -2.0) * std::sqrt(-mu * nu);
        return c;
    }
    const double sm = std::sqrt(std::abs(mu));
    const double sn = std::sqrt(std::abs(nu));
    const double cc = (sm - sn) * (sm - sn) / ((sm + sn) * (sm + sn));
    const double root = std::sqrt(mu * nu);
    c.family = PolyFamily::meixner(alpha0, cc);
    c.discrete = true;
    if (mu > 0.0) {
        c.index = mu > nu ? 5 : 7;
        c.scale = 2.0 * root;
        c.shift = alpha0 * root;
        c.alternating = nu > mu;
    } else {
        c.index = mu < nu ? 6 : 8;
        c.scale = -2.0 * root;
        c.shift = -alpha0 * root;
        c.alternating = nu < mu;
    }
    return c;
}

orthopoly::SpectralMeasure spectrum(const OneModeHamiltonian& h, bool normalize, int n_atoms)
{
    const CaseLabel c = classify(h.mu, h.nu, h.alpha0);
    if (!c.family) {
        orthopoly::SpectralMeasure mu;
        for (int n = 0; n < n_atoms; ++n)
            mu.atoms.push_back({h.mu * (2.0 * n + h.alpha0), 1.0});
        mu.atoms_truncated = true;
        return mu;
    }
    return orthopoly::measure(*c.family, normalize).mapped(c.shift, c.scale);
}

double discrete_eigenvalue(const OneModeHamiltonian& h, int n)
{
    const CaseLabel c = classify(h.mu, h.nu, h.alpha0);
    if (!c.discrete)
        throw UnsupportedCase("discrete_eigenvalue: spectrum is continuous in this case");
    if (n < 0)
        throw DomainError("discrete_eigenvalue: n must be nonnegative");
    if (c.index == 9)
        return h.mu * (2.0 * n + h.alpha0);
    return c.shift + c.scale * n;
}

StateVector eigenvectors_discrete(const OneModeHamiltonian& h, int n, int N)
{
    const CaseLabel c = classify(h.mu, h.nu, h.alpha0);
    if (!c.discrete) {
        std::ostringstream msg;
        msg << "eigenvectors_discrete: case " << c.index << " has no discrete eigenvectors";
        throw UnsupportedCase(msg.str());
    }
    if (n < 0 || n >= N)
        throw DomainError("eigenvectors_discrete: need 0 <= n < N");
    StateVector out;
    out.basis = "sector";
    if (c.index == 9) {
        out.amplitudes = Eigen::VectorXcd::Zero(N);
        out.amplitudes(n) = 1.0;
        return out;
    }
    const orthopoly::PolyFamily fam = *c.family;
    const jacobi::PaddedVector v =
        jacobi::eigenvector_padded([&fam](int k) { return orthopoly::recurrence(fam, k); }, n, N);
    Eigen::VectorXd comp = v.head / v.head.norm();
    if (c.alternating)
        for (int k = 1; k < N; k += 2)
            comp(k) = -comp(k);
    out.amplitudes = comp.cast<std::complex<double>>();
    return out;
}

Eigen::VectorXd generalized_eigenvector(const OneModeHamiltonian& h, double energy, int N)
{
    const CaseLabel c = classify(h.mu, h.nu, h.alpha0);
    if (!c.family)
        throw UnsupportedCase("generalized_eigenvector: the diagonal case has Fock eigenvectors");
    if (N < 1)
        throw DomainError("generalized_eigenvector: N must be positive");
    Eigen::VectorXd p = orthopoly::eval_all(*c.family, N - 1, (energy - c.shift) / c.scale);
    if (c.alternating)
        for (int k = 1; k < N; k += 2)
            p(k) = -p(k);
    return p;
}

int default_truncation(const OneModeHamiltonian& h)
{
    const CaseLabel c = classify(h.mu, h.nu, h.alpha0);
    const double scale = c.index == 9 ? std::abs(h.mu) : std::abs(c.scale);
    return std::max(100, 20 * static_cast<int>(std::ceil(scale)));
}

StateVector evolve(const OneModeHamiltonian& h, const StateVector& psi0, double t, const EvolveOptions& opt)
{
    const CaseLabel c = classify(h.mu, h.nu, h.alpha0);
    const int N = std::max<int>(opt.N > 0 ? opt.N : default_truncation(h), static_cast<int>(psi0.size()));
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(N);
    psi.head(psi0.size()) = psi0.amplitudes;

    Eigen::VectorXcd out;
    if (c.index == 9) {
        out.resize(N);
        for (int k = 0; k < N; ++k)
            out(k) = std::polar(1.0, t * h.mu * (2.0 * k + h.alpha0)) * psi(k);
    } else if (c.discrete) {
        // Closed-form eigenpairs; columns are exact eigenvectors truncated at N rows.
        const orthopoly::PolyFamily fam = *c.family;
        auto coeffs = [&fam](int k) { return orthopoly::recurrence(fam, k); };
        out = Eigen::VectorXcd::Zero(N);
        double captured = 0.0;
        for (int n = 0; n < N; ++n) {
            Eigen::VectorXd v = jacobi::eigenvector_padded(coeffs, n, N).head;
            if (c.alternating)
                for (int k = 1; k < N; k += 2)
                    v(k) = -v(k);
            const std::complex<double> coef = v.cast<std::complex<double>>().dot(psi);
            captured += std::norm(coef);
            out += std::polar(1.0, t * (c.shift + c.scale * n)) * coef * v.cast<std::complex<double>>();
        }
        const double missing = std::sqrt(std::max(0.0, psi.squaredNorm() - captured));
        if (missing > opt.tail_tol)
            throw TruncationOverflow("evolve: initial state has weight outside the captured eigenvectors; "
                                     "increase N",
                                     missing);
    } else {
        const jacobi::EigenSystem sys = jacobi::eigensystem(jacobi(h, N));
        out = jacobi::exp_apply(sys, psi, t);
    }
    const double tail = tail_norm(out);
    if (tail > opt.tail_tol) {
        std::ostringstream msg;
        msg << "evolve: truncation tail " << tail << " exceeds " << opt.tail_tol << " at N=" << N << "; increase N";
        throw TruncationOverflow(msg.str(), tail);
    }
    StateVector s;
    s.amplitudes = out;
    s.basis = psi0.basis;
    return s;
}

} // namespace multiboson::onemode
