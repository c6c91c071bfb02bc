#include "multiboson/special.hpp"

#include "multiboson/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace multiboson::special {

namespace {

// Stirling series for Re ln Γ(z), valid once |z| is large. Coefficients are B_{2k} / (2k (2k-1)).
double stirling_re(std::complex<double> z)
{
    static constexpr double coeff[] = {
        1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,        -1.0 / 1680.0,
        1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,         -3617.0 / 122400.0,
    };
    const std::complex<double> lnz = std::log(z);
    std::complex<double> sum = (z - 0.5) * lnz - z + 0.5 * std::log(2.0 * std::numbers::pi);
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> p = inv;
    for (double c : coeff) {
        sum += c * p;
        p *= inv2;
    }
    return sum.real();
}

} // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("ln_gamma: argument must be positive");
    return std::lgamma(x);
}

double ln_gamma_abs(double a, double b)
{
    if (b == 0.0 && a <= 0.0 && a == std::floor(a))
        throw DomainError("ln_gamma_abs: pole of the gamma function");
    // Shift the real part up so the Stirling tail is below double precision.
    constexpr double shift_to = 15.0;
    double correction = 0.0;
    std::complex<double> z(a, b);
    while (z.real() < shift_to) {
        const double m = std::abs(z);
        if (m == 0.0)
            throw DomainError("ln_gamma_abs: pole of the gamma function");
        correction += std::log(m);
        z += 1.0;
    }
    return stirling_re(z) - correction;
}

double gamma_abs_sq(double a, double b)
{
    if (!(a > 0.0))
        throw DomainError("gamma_abs_sq: real part must be positive");
    if (b == 0.0)
        return std::exp(2.0 * std::lgamma(a));
    return std::exp(2.0 * ln_gamma_abs(a, b));
}

double pochhammer(double x, int n)
{
    double p = 1.0;
    for (int j = 0; j < n; ++j)
        p *= x + j;
    return p;
}

std::complex<double> hyp0f1(double b, std::complex<double> z)
{
    if (!(b > 0.0))
        throw DomainError("hyp0f1: lower parameter must be positive");
    std::complex<double> term = 1.0;
    std::complex<double> sum = 1.0;
    for (int k = 0; k < 100000; ++k) {
        term *= z / ((b + k) * (k + 1.0));
        sum += term;
        // Terms are monotonically decreasing once (b+k)(k+1) exceeds |z|.
        const bool decreasing = (b + k + 1.0) * (k + 2.0) > std::abs(z);
        if (decreasing && std::abs(term) <= 1e-17 * std::abs(sum))
            return sum;
        if (term == 0.0)
            return sum;
    }
    throw NumericalFailure("hyp0f1: series did not converge");
}

double hyp3f2_terminating(int n, double b, double c, double d, double e)
{
    if (n < 0)
        throw DomainError("hyp3f2_terminating: n must be non-negative");
    double term = 1.0;
    double sum = 1.0;
    for (int j = 0; j < n; ++j) {
        const double num = (j - n) * (b + j) * (c + j);
        if (num == 0.0)
            break;
        const double den = (d + j) * (e + j) * (j + 1.0);
        if (den == 0.0) {
            std::ostringstream msg;
            msg << "hyp3f2_terminating: lower parameter vanishes at term " << j + 1 << " of " << n;
            throw DomainError(msg.str());
        }
        term *= num / den;
        sum += term;
    }
    return sum;
}

double bessel_k(double nu, double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_k: argument must be positive");
    return std::cyl_bessel_k(std::abs(nu), x);
}

} // namespace multiboson::special
