#include "multiboson/coherent.hpp"

#include "multiboson/errors.hpp"
#include "multiboson/quadrature.hpp"
#include "multiboson/special.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace multiboson::coherent {

namespace {

void check_alpha(double alpha0, const char* who)
{
    if (!(alpha0 > 0.0))
        throw DomainError(std::string(who) + ": alpha0 must be positive");
}

} // namespace

StateVector coherent_amplitudes(cplx zeta, double alpha0, int N)
{
    check_alpha(alpha0, "coherent_amplitudes");
    if (N < 1)
        throw DomainError("coherent_amplitudes: N must be positive");
    StateVector s;
    s.basis = "sector";
    s.amplitudes.resize(N);
    s.amplitudes(0) = 1.0;
    for (int k = 1; k < N; ++k)
        s.amplitudes(k) = s.amplitudes(k - 1) * zeta / std::sqrt(k * (alpha0 + k - 1.0));
    return s;
}

int min_truncation(double abs_zeta, double alpha0)
{
    check_alpha(alpha0, "min_truncation");
    const double r2 = abs_zeta * abs_zeta;
    double term = 1.0;
    double sum = 0.0;
    for (int n = 0; n < 1000000; ++n) {
        sum += term;
        const double next = term * r2 / ((n + 1.0) * (alpha0 + n));
        if (next < 1e-16 * sum && next <= term)
            return n + 1;
        term = next;
    }
    throw NumericalFailure("min_truncation: no admissible truncation found");
}

cplx kernel(cplx x, double alpha0)
{
    check_alpha(alpha0, "kernel");
    return special::hyp0f1(alpha0, x);
}

double printed_radial_weight(double alpha0, double rho)
{
    check_alpha(alpha0, "printed_radial_weight");
    return std::pow(rho, alpha0) * special::bessel_k(alpha0, 2.0 * rho) /
           (2.0 * std::numbers::pi * std::tgamma(alpha0));
}

double radial_moment(const std::function<double(double)>& weight, double alpha0, int k)
{
    check_alpha(alpha0, "radial_moment");
    const double two_pi = 2.0 * std::numbers::pi;
    auto radial = [&](double rho) { return std::pow(rho, 2 * k + 1) * weight(rho) * two_pi; };
    // ρ = t^q removes the power-law behaviour ρ^{2α₀−1} of the weight at the origin.
    const double q = std::max(1.0, 1.0 / alpha0);
    quadrature::Options opt;
    opt.rel_tol = 1e-11;
    const double inner = quadrature::integrate(
        [&](double t) { return radial(std::pow(t, q)) * q * std::pow(t, q - 1.0); }, 0.0, 1.0, opt);
    const Eigen::VectorXd outer = quadrature::integrate_to_infinity(
        [&](double rho) { return Eigen::VectorXd::Constant(1, radial(rho)); }, 1.0, 1, 1.0, opt);
    return inner + outer(0);
}

RadialMeasure radial_measure(double alpha0, int k_max)
{
    check_alpha(alpha0, "radial_measure");
    RadialMeasure m;
    m.alpha0 = alpha0;
    const double order = std::abs(alpha0 - 1.0);
    const double norm = 2.0 / (std::numbers::pi * std::tgamma(alpha0));
    m.weight = [alpha0, order, norm](double rho) {
        return norm * std::pow(rho, alpha0 - 1.0) * special::bessel_k(order, 2.0 * rho);
    };
    double expected = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0)
            expected *= k * (alpha0 + k - 1.0);
        const double got = radial_moment(m.weight, alpha0, k);
        m.moments.push_back(got);
        if (std::abs(got - expected) > 1e-6 * expected) {
            std::ostringstream msg;
            msg << "radial_measure: moment " << k << " is " << got << ", expected " << expected;
            throw NumericalFailure(msg.str());
        }
    }
    return m;
}

std::vector<cplx> holo_apply(Generator which, const std::vector<cplx>& c, double alpha0)
{
    check_alpha(alpha0, "holo_apply");
    const std::size_t n = c.size();
    std::vector<cplx> out;
    switch (which) {
    case Generator::A0:
        out.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = (2.0 * static_cast<double>(k) + alpha0) * c[k];
        break;
    case Generator::Aplus:
        out.assign(n + 1, cplx{});
        for (std::size_t k = 0; k < n; ++k)
            out[k + 1] = c[k];
        break;
    case Generator::Aminus:
        out.assign(n > 0 ? n - 1 : 0, cplx{});
        for (std::size_t k = 1; k < n; ++k) {
            const double kk = static_cast<double>(k);
            out[k - 1] = kk * (kk + alpha0 - 1.0) * c[k];
        }
        break;
    }
    return out;
}

SU11Element multiply(const SU11Element& x, const SU11Element& y)
{
    return {x.a * y.a + x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}

SU11Element su11_flow(double mu, double nu, double t)
{
    if (mu == 0.0 && nu == 0.0)
        throw DomainError("su11_flow: (mu, nu) must not both vanish");
    const double prod = mu * nu;
    double c, s_over_w;  // cos(ωt) and sin(ωt)/ω continued to all signs of ω² = μν
    if (prod > 0.0) {
        const double w = std::sqrt(prod);
        c = std::cos(w * t);
        s_over_w = std::sin(w * t) / w;
    } else if (prod < 0.0) {
        const double w = std::sqrt(-prod);
        c = std::cosh(w * t);
        s_over_w = std::sinh(w * t) / w;
    } else {
        c = 1.0;
        s_over_w = t;
    }
    return {cplx{c, 0.5 * s_over_w * (mu + nu)}, cplx{0.0, 0.5 * s_over_w * (nu - mu)}};
}

std::pair<double, double> disc_exponents(double lambda, double mu, double nu, double alpha0)
{
    check_alpha(alpha0, "disc_exponents");
    if (!(mu > nu && nu > 0.0))
        throw DomainError("disc_exponents: need mu > nu > 0");
    const double root = std::sqrt(mu * nu);
    return {lambda / (2.0 * root) - 0.5 * alpha0, -lambda / (2.0 * root) - 0.5 * alpha0};
}

cplx disc_eigenfunction(double lambda, double mu, double nu, double alpha0, cplx z)
{
    const auto [A, B] = disc_exponents(lambda, mu, nu, alpha0);
    if (!(std::abs(z) < 1.0))
        throw DomainError("disc_eigenfunction: z must lie in the unit disc");
    const double p = (std::sqrt(mu) - std::sqrt(nu)) / (std::sqrt(mu) + std::sqrt(nu));
    if (std::abs(z + p) < 1e-8 || std::abs(z + 1.0 / p) < 1e-8)
        throw DomainError("disc_eigenfunction: z is within 1e-8 of a branch point");
    return std::pow(z + p, A) * std::pow(z + 1.0 / p, B);
}

cplx disc_residual(double lambda, double mu, double nu, double alpha0, cplx z)
{
    const double h = 1e-5;
    const cplx f = disc_eigenfunction(lambda, mu, nu, alpha0, z);
    const cplx df = (disc_eigenfunction(lambda, mu, nu, alpha0, z + h) -
                     disc_eigenfunction(lambda, mu, nu, alpha0, z - h)) /
                    (2.0 * h);
    return 0.5 * (mu + nu) * (2.0 * z * df + alpha0 * f) +
           0.5 * (mu - nu) * ((z * z + 1.0) * df + alpha0 * z * f) - lambda * f;
}

} // namespace multiboson::coherent
