#ifndef MULTIBOSON_SPECIAL_HPP
#define MULTIBOSON_SPECIAL_HPP

#include <complex>

namespace multiboson::special {

/// ln Γ(x) for x > 0.
double ln_gamma(double x);

/// Re ln Γ(a + ib) for any a + ib that is not a pole (a need not be positive).
double ln_gamma_abs(double a, double b);

/// |Γ(a + ib)|² for a > 0.
double gamma_abs_sq(double a, double b);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1).
double pochhammer(double x, int n);

/// ₀F₁(; b; z) by direct summation; b > 0.
std::complex<double> hyp0f1(double b, std::complex<double> z);

/// Terminating ₃F₂(-n, b, c; d, e; 1) as an exact finite sum of n+1 terms.
/// Throws DomainError when a lower parameter produces a zero denominator before the
/// series terminates.
double hyp3f2_terminating(int n, double b, double c, double d, double e);

/// Modified Bessel function of the second kind K_ν(x), x > 0.
double bessel_k(double nu, double x);

} // namespace multiboson::special

#endif
