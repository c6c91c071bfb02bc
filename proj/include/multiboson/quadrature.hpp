#ifndef MULTIBOSON_QUADRATURE_HPP
#define MULTIBOSON_QUADRATURE_HPP

#include <Eigen/Dense>

#include <functional>

namespace multiboson::quadrature {

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 1e-15;
    int max_intervals = 20000;
};

/// Vector-valued integrand: all components share the same adaptive subdivision.
using VectorIntegrand = std::function<Eigen::VectorXd(double)>;

/// Adaptive Gauss–Kronrod (7/15) integral of f over [a, b]. The error criterion is applied to
/// the max-norm of the vector result. Throws NumericalFailure if the interval budget runs out.
Eigen::VectorXd integrate(const VectorIntegrand& f, double a, double b, Eigen::Index dim,
                          const Options& opt = {});

double integrate(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

/// Integral over [a, ∞) by consecutive chunks [a, a+h], [a+h, a+3h], ... of doubling width.
/// Stops once two consecutive chunks contribute below rel_tol·1e-7 of the running total.
Eigen::VectorXd integrate_to_infinity(const VectorIntegrand& f, double a, Eigen::Index dim, double h = 1.0,
                                      const Options& opt = {});

} // namespace multiboson::quadrature

#endif
