#include "multiboson/bogoliubov.hpp"

#include "multiboson/errors.hpp"
#include "multiboson/jacobi.hpp"

#include <cmath>

namespace multiboson::bogoliubov {

GroupElement::GroupElement(double a_, int sigma_) : a(a_), sigma(sigma_)
{
    if (a == 0.0 || !std::isfinite(a))
        throw DomainError("GroupElement: a must be a nonzero real");
    if (sigma != 1 && sigma != -1)
        throw DomainError("GroupElement: sigma must be +1 or -1");
}

GroupElement multiply(const GroupElement& g, const GroupElement& h)
{
    const double hb = g.sigma == 1 ? h.a : 1.0 / h.a;
    return {g.a * hb, g.sigma * h.sigma};
}

GroupElement inverse(const GroupElement& g)
{
    return {g.sigma == 1 ? 1.0 / g.a : g.a, g.sigma};
}

Eigen::Matrix3d action_matrix(const GroupElement& g)
{
    const double a = g.a;
    const double s = g.sigma;
    Eigen::Matrix3d m;
    m << (1 + a * a) / (2 * a), s * (1 - a * a) / (2 * a), s * (1 - a * a) / (2 * a),
        (1 - a * a) / (4 * a), s * (1 + a) * (1 + a) / (4 * a), s * (1 - a) * (1 - a) / (4 * a),
        (1 - a * a) / (4 * a), s * (1 - a) * (1 - a) / (4 * a), s * (1 + a) * (1 + a) / (4 * a);
    return m;
}

rep::Generators act(const GroupElement& g, const rep::Generators& x)
{
    const Eigen::Matrix3d m = action_matrix(g);
    rep::Generators out;
    out.A0 = m(0, 0) * x.A0 + m(0, 1) * x.Am + m(0, 2) * x.Ap;
    out.Am = m(1, 0) * x.A0 + m(1, 1) * x.Am + m(1, 2) * x.Ap;
    out.Ap = m(2, 0) * x.A0 + m(2, 1) * x.Am + m(2, 2) * x.Ap;
    return out;
}

std::pair<double, double> act_on_labels(const GroupElement& g, double mu, double nu)
{
    if (mu == 0.0 && nu == 0.0)
        throw DomainError("act_on_labels: (mu, nu) must not both vanish");
    if (g.sigma == 1)
        return {mu / g.a, g.a * nu};
    return {g.a * nu, mu / g.a};
}

double orbit_invariant(double mu, double nu)
{
    if (mu == 0.0 && nu == 0.0)
        throw DomainError("orbit_invariant: (mu, nu) must not both vanish");
    return mu * nu;
}

Implementer implementer_with_tails(const GroupElement& g, double alpha0, int N)
{
    if (!(g.a > 0.0))
        throw UnsupportedCase("implementer: only a > 0 is implementable by a unitary");
    if (!(alpha0 > 0.0))
        throw DomainError("implementer: alpha0 must be positive");
    if (N < 1)
        throw DomainError("implementer: N must be positive");
    Implementer out;
    out.U = Eigen::MatrixXd::Zero(N, N);
    out.column_tail = Eigen::VectorXd::Zero(N);
    if (g.a == 1.0) {
        for (int n = 0; n < N; ++n)
            out.U(n, n) = (g.sigma == -1 && n % 2 == 1) ? -1.0 : 1.0;
        out.interior = N;
        return out;
    }
    // 𝔟(A₀) is tridiagonal in |k⟩ with these coefficients (A = a^σ); its spectrum is 2n + α₀.
    const double A = g.sigma == 1 ? g.a : 1.0 / g.a;
    const double diag_scale = 0.5 * (A + 1.0 / A);
    const double off_scale = 0.5 * (1.0 / A - A);
    auto coeffs = [&](int k) {
        return std::pair<double, double>{diag_scale * (2.0 * k + alpha0),
                                          off_scale * std::sqrt((k + alpha0) * (k + 1.0))};
    };
    bool interior_open = true;
    for (int n = 0; n < N; ++n) {
        const jacobi::PaddedVector col = jacobi::eigenvector_padded(coeffs, 2.0 * n + alpha0, N);
        double phase = (g.sigma == -1 && n % 2 == 1) ? -1.0 : 1.0;
        if (A > 1.0 && n % 2 == 1)
            phase = -phase;
        out.U.col(n) = phase * col.head;
        out.column_tail(n) = col.tail_mass;
        if (interior_open && col.tail_mass < 1e-14)
            out.interior = n + 1;
        else
            interior_open = false;
    }
    return out;
}

Eigen::MatrixXd implementer(const GroupElement& g, double alpha0, int N)
{
    return implementer_with_tails(g, alpha0, N).U;
}

} // namespace multiboson::bogoliubov
