#include <doctest.h>

#include "multiboson/errors.hpp"
#include "multiboson/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace multiboson;
using namespace multiboson::quadrature;

TEST_SUITE("quadrature")
{
    TEST_CASE("polynomials and smooth functions on finite intervals")
    {
        CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-13));
        CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
              doctest::Approx(2.0).epsilon(1e-12));
        CHECK(integrate([](double x) { return 1.0 / (1.0 + 100.0 * x * x); }, -1.0, 1.0) ==
              doctest::Approx(0.2 * std::atan(10.0)).epsilon(1e-11));
    }

    TEST_CASE("vector integrand shares one subdivision")
    {
        const Eigen::VectorXd r = integrate(
            [](double x) {
                Eigen::VectorXd v(3);
                v << 1.0, x, std::exp(x);
                return v;
            },
            0.0, 1.0, 3);
        CHECK(r(0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r(1) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r(2) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    }

    TEST_CASE("semi-infinite integrals")
    {
        const Eigen::VectorXd g = integrate_to_infinity(
            [](double x) {
                Eigen::VectorXd v(2);
                v << std::exp(-x), x * x * std::exp(-x);
                return v;
            },
            0.0, 2);
        CHECK(g(0) == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(g(1) == doctest::Approx(2.0).epsilon(1e-11));
        const Eigen::VectorXd gauss = integrate_to_infinity(
            [](double x) { return Eigen::VectorXd::Constant(1, std::exp(-x * x)); }, 0.0, 1);
        CHECK(gauss(0) == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-11));
    }

    TEST_CASE("integrable endpoint singularity converges")
    {
        CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-7));
    }

    TEST_CASE("interval budget exhaustion reports failure")
    {
        Options opt;
        opt.max_intervals = 3;
        opt.rel_tol = 1e-14;
        CHECK_THROWS_AS(integrate([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, opt), NumericalFailure);
    }
}
