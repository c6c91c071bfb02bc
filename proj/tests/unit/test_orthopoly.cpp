#include <doctest.h>

#include "multiboson/errors.hpp"
#include "multiboson/jacobi.hpp"
#include "multiboson/orthopoly.hpp"

#include <cmath>
#include <numbers>

using namespace multiboson;
using namespace multiboson::orthopoly;

namespace {

std::vector<PolyFamily> sample_families()
{
    return {PolyFamily::laguerre(-0.5),
            PolyFamily::laguerre(1.7),
            PolyFamily::meixner(1.0, 1.0 / 9.0),
            PolyFamily::meixner(0.4, 0.6),
            PolyFamily::meixner_pollaczek(0.75, std::numbers::pi / 2),
            PolyFamily::meixner_pollaczek(0.15, 1.1),
            PolyFamily::dual_hahn(0.0, 0.0, 3),
            PolyFamily::dual_hahn(-0.5, 1.7, 6),
            PolyFamily::continuous_dual_hahn(-0.2, 0.5, 0.5),
            PolyFamily::continuous_dual_hahn(0.3, 0.6, 1.1)};
}

} // namespace

TEST_SUITE("orthopoly")
{
    TEST_CASE("parameter validation")
    {
        CHECK_THROWS_AS(PolyFamily::laguerre(-1.0), DomainError);
        CHECK_THROWS_AS(PolyFamily::meixner(0.0, 0.5), DomainError);
        CHECK_THROWS_AS(PolyFamily::meixner(1.0, 1.0), DomainError);
        CHECK_THROWS_AS(PolyFamily::meixner_pollaczek(0.5, 0.0), DomainError);
        CHECK_THROWS_AS(PolyFamily::meixner_pollaczek(0.0, 1.0), DomainError);
        CHECK_THROWS_AS(PolyFamily::dual_hahn(-1.0, 0.0, 2), DomainError);
        CHECK_THROWS_AS(PolyFamily::continuous_dual_hahn(-0.6, 0.5, 0.7), DomainError);
        CHECK_THROWS_AS(PolyFamily::continuous_dual_hahn(0.1, 0.0, 0.7), DomainError);
        CHECK(PolyFamily::dual_hahn(0.2, 0.3, 4).size() == 5);
        CHECK(PolyFamily::laguerre(0.0).size() == -1);
    }

    TEST_CASE("P_0 = 1 for every family")
    {
        for (const PolyFamily& f : sample_families())
            CHECK(eval_orthonormal(f, 0, 0.37) == 1.0);
    }

    TEST_CASE("Meixner first polynomial by hand")
    {
        // β=1, c=1/9: a₀ = c/(1−c) = 1/8, b₀ = √c/(1−c) = 3/8, so P₁(x) = (8x−1)/3.
        const PolyFamily m = PolyFamily::meixner(1.0, 1.0 / 9.0);
        for (double x : {0.0, 1.0, 2.5})
            CHECK(eval_orthonormal(m, 1, x) == doctest::Approx((8.0 * x - 1.0) / 3.0).epsilon(1e-14));
        // Against the hypergeometric form M₁(x) = 1 + x(1 − 1/c)/β with norm factor √c.
        for (double x : {0.0, 3.0})
            CHECK(std::abs(eval_orthonormal(m, 1, x)) == doctest::Approx(std::sqrt(1.0 / 9.0) * std::abs(1.0 - 8.0 * x)));
    }

    TEST_CASE("dual Hahn two-point family")
    {
        const PolyFamily d = PolyFamily::dual_hahn(0.0, 0.0, 1);
        const SpectralMeasure mu = measure(d);
        REQUIRE(mu.atoms.size() == 2);
        CHECK(mu.atoms[0].location == doctest::Approx(0.0));
        CHECK(mu.atoms[1].location == doctest::Approx(2.0));
        double g11 = 0.0, g01 = 0.0;
        for (const Atom& a : mu.atoms) {
            const double p1 = eval_orthonormal(d, 1, a.location);
            g11 += a.weight * p1 * p1;
            g01 += a.weight * p1;
        }
        CHECK(g11 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(g01) < 1e-14);
        CHECK_THROWS_AS(eval_orthonormal(d, 2, 0.0), DomainError);
    }

    TEST_CASE("dual Hahn atoms are the Jacobi eigenvalues")
    {
        for (auto [g, dl, K] : {std::tuple{0.0, 0.0, 3}, std::tuple{-0.5, 1.7, 6}, std::tuple{1.7, 1.7, 5}}) {
            const PolyFamily d = PolyFamily::dual_hahn(g, dl, K);
            const jacobi::JacobiOperator j =
                jacobi::truncate([&d](int k) { return recurrence(d, k); }, K + 1);
            const Eigen::VectorXd ev = jacobi::eigenvalues(j);
            const SpectralMeasure mu = measure(d);
            REQUIRE(static_cast<Eigen::Index>(mu.atoms.size()) == ev.size());
            for (Eigen::Index n = 0; n < ev.size(); ++n)
                CHECK(std::abs(mu.atoms[static_cast<std::size_t>(n)].location - ev(n)) < 1e-10 * (1.0 + std::abs(ev(n))));
        }
    }

    TEST_CASE("Meixner measure: printed weights and normalization")
    {
        const double beta = 1.0, c = 1.0 / 9.0;
        const SpectralMeasure raw = measure(PolyFamily::meixner(beta, c), false);
        CHECK(raw.atoms[3].weight == doctest::Approx(std::pow(c, 3)).epsilon(1e-14));  // (1)_3 c³/3!
        CHECK(raw.atom_mass() == doctest::Approx(std::pow(1.0 - c, -beta)).epsilon(1e-14));
        const SpectralMeasure norm = measure(PolyFamily::meixner(beta, c));
        CHECK(norm.atom_mass() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(norm.atoms_truncated);
        for (const Atom& a : norm.atoms)
            CHECK(a.weight > 0.0);
    }

    TEST_CASE("Laguerre density as printed")
    {
        const SpectralMeasure mu = measure(PolyFamily::laguerre(0.5), false);
        REQUIRE(mu.continuous.has_value());
        const double x = 0.8;
        CHECK(mu.continuous->density(x) == doctest::Approx(2.0 * std::pow(2 * x, 0.5) * std::exp(-2 * x)).epsilon(1e-14));
        CHECK(mu.continuous->lower == 0.0);
        CHECK(std::isinf(mu.continuous->upper));
    }

    TEST_CASE("continuous dual Hahn atom count")
    {
        CHECK(measure(PolyFamily::continuous_dual_hahn(-0.2, 0.5, 0.5)).atoms.size() == 1);
        CHECK(measure(PolyFamily::continuous_dual_hahn(-1.3, 2.0, 1.8)).atoms.size() == 2);
        CHECK(measure(PolyFamily::continuous_dual_hahn(-2.0, 2.5, 3.0)).atoms.size() == 2);
        CHECK(measure(PolyFamily::continuous_dual_hahn(0.3, 0.6, 1.1)).atoms.empty());
        const SpectralMeasure mu = measure(PolyFamily::continuous_dual_hahn(-1.3, 2.0, 1.8));
        CHECK(mu.atoms[0].location == doctest::Approx(1.69));
        CHECK(mu.atoms[1].location == doctest::Approx(0.09));
    }

    TEST_CASE("Gram deviations: discrete families")
    {
        CHECK(gram_check(PolyFamily::dual_hahn(0.0, 0.0, 3), 3) <= 1e-10);
        CHECK(gram_check(PolyFamily::dual_hahn(-0.5, 1.7, 6), 6) <= 1e-10);
        CHECK(gram_check(PolyFamily::meixner(1.0, 1.0 / 9.0), 8) <= 1e-10);
        CHECK(gram_check(PolyFamily::meixner(0.4, 0.6), 8) <= 1e-10);
    }

    TEST_CASE("Gram deviations: continuous families")
    {
        CHECK(gram_check(PolyFamily::laguerre(-0.5), 10) <= 1e-7);
        CHECK(gram_check(PolyFamily::laguerre(1.7), 10) <= 1e-7);
        CHECK(gram_check(PolyFamily::meixner_pollaczek(0.75, std::numbers::pi / 2), 6) <= 1e-7);
        CHECK(gram_check(PolyFamily::meixner_pollaczek(0.15, 1.1), 8) <= 1e-7);
    }

    TEST_CASE("Gram deviations: continuous dual Hahn with and without atoms")
    {
        CHECK(gram_check(PolyFamily::continuous_dual_hahn(-0.2, 0.5, 0.5), 8) <= 1e-6);
        CHECK(gram_check(PolyFamily::continuous_dual_hahn(0.3, 0.6, 1.1), 8) <= 1e-6);
        CHECK(gram_check(PolyFamily::continuous_dual_hahn(-1.3, 2.0, 1.8), 8) <= 1e-6);
    }

    TEST_CASE("three-term identity at sample points")
    {
        for (const PolyFamily& f : sample_families()) {
            const int n = f.size() > 0 ? f.size() - 1 : 12;
            for (int s = 0; s < 20; ++s) {
                const double x = -3.0 + 0.37 * s;
                const Eigen::VectorXd p = eval_all(f, n, x);
                for (int k = 0; k < n; ++k) {
                    const auto [ak, bk] = recurrence(f, k);
                    const double prev = k > 0 ? recurrence(f, k - 1).second * p(k - 1) : 0.0;
                    const double resid = x * p(k) - (prev + ak * p(k) + bk * p(k + 1));
                    CHECK(std::abs(resid) <= 1e-9 * (1.0 + std::abs(x * p(k)) + std::abs(ak * p(k))));
                }
            }
        }
    }

    TEST_CASE("affine mapping of measures")
    {
        const SpectralMeasure mu = measure(PolyFamily::meixner(1.0, 1.0 / 9.0)).mapped(1.0, 4.0);
        CHECK(mu.physical(mu.atoms[0].location) == doctest::Approx(1.0));
        CHECK(mu.physical(mu.atoms[2].location) == doctest::Approx(9.0));
        const SpectralMeasure twice = mu.mapped(-1.0, 0.5);
        CHECK(twice.physical(2.0) == doctest::Approx(-1.0 + 0.5 * (1.0 + 4.0 * 2.0)));
    }
}
