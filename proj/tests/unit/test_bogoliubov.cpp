#include <doctest.h>

#include "multiboson/bogoliubov.hpp"
#include "multiboson/errors.hpp"
#include "multiboson/orthopoly.hpp"
#include "multiboson/rep.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace multiboson;
using namespace multiboson::bogoliubov;

namespace {

using Vec3 = Eigen::Vector3d;

// Lie bracket on coordinates in the basis (A₀, A₋, A₊):
// [A₋, A₊] = A₀, [A₀, A₊] = 2A₊, [A₀, A₋] = −2A₋.
Vec3 bracket(const Vec3& x, const Vec3& y)
{
    std::array<std::array<Vec3, 3>, 3> table;
    for (auto& row : table)
        for (auto& v : row)
            v.setZero();
    table[1][2] = Vec3(1, 0, 0);
    table[2][1] = Vec3(-1, 0, 0);
    table[0][2] = Vec3(0, 0, 2);
    table[2][0] = Vec3(0, 0, -2);
    table[0][1] = Vec3(0, -2, 0);
    table[1][0] = Vec3(0, 2, 0);
    Vec3 out = Vec3::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out += x(i) * y(j) * table[i][j];
    return out;
}

GroupElement random_element(std::mt19937& rng)
{
    std::uniform_real_distribution<double> mag(0.2, 4.0);
    std::bernoulli_distribution coin(0.5);
    const double a = mag(rng) * (coin(rng) ? 1.0 : -1.0);
    return {a, coin(rng) ? 1 : -1};
}

} // namespace

TEST_SUITE("bogoliubov")
{
    TEST_CASE("group law")
    {
        const GroupElement p = multiply({2.0, -1}, {3.0, 1});
        CHECK(p.a == doctest::Approx(2.0 / 3.0));
        CHECK(p.sigma == -1);
        const GroupElement g{-2.5, -1};
        const GroupElement e = multiply({1.0, 1}, g);
        CHECK(e.a == g.a);
        CHECK(e.sigma == g.sigma);
        const GroupElement id = multiply(g, inverse(g));
        CHECK(id.a == doctest::Approx(1.0));
        CHECK(id.sigma == 1);
        CHECK_THROWS_AS(GroupElement(0.0, 1), DomainError);
        CHECK_THROWS_AS(GroupElement(1.0, 0), DomainError);
    }

    TEST_CASE("action matrix examples")
    {
        CHECK((action_matrix({1.0, 1}) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::Matrix3d m2 = action_matrix({2.0, 1});
        CHECK(m2(0, 0) == doctest::Approx(1.25));
        CHECK(m2(0, 1) == doctest::Approx(-0.75));
        CHECK(m2(0, 2) == doctest::Approx(-0.75));
        // The printed matrix at a = −1 sends A₀ ↦ −A₀ and swaps A₋ ↔ −A₊.
        Eigen::Matrix3d flip;
        flip << -1, 0, 0, 0, 0, -1, 0, -1, 0;
        CHECK((action_matrix({-1.0, 1}) - flip).cwiseAbs().maxCoeff() < 1e-15);
    }

    TEST_CASE("homomorphism: M(g·h) = M(g)·M(h)")
    {
        std::mt19937 rng(2024);
        for (int i = 0; i < 50; ++i) {
            const GroupElement g = random_element(rng), h = random_element(rng);
            const Eigen::Matrix3d lhs = action_matrix(multiply(g, h));
            const Eigen::Matrix3d rhs = action_matrix(g) * action_matrix(h);
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + lhs.cwiseAbs().maxCoeff()));
        }
    }

    TEST_CASE("structure constants are preserved")
    {
        std::mt19937 rng(7);
        for (int i = 0; i < 20; ++i) {
            const Eigen::Matrix3d m = action_matrix(random_element(rng));
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) {
                    const Vec3 img = bracket(m.row(x).transpose(), m.row(y).transpose());
                    const Vec3 expected = m.transpose() * bracket(Vec3::Unit(x), Vec3::Unit(y));
                    CHECK((img - expected).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff()));
                }
        }
    }

    TEST_CASE("label action")
    {
        auto [m1, n1] = act_on_labels({2.0, 1}, 4.0, 1.0);
        CHECK(m1 == doctest::Approx(2.0));
        CHECK(n1 == doctest::Approx(2.0));
        auto [m2, n2] = act_on_labels({3.0, -1}, 4.0, 1.0);
        CHECK(m2 == doctest::Approx(3.0));
        CHECK(n2 == doctest::Approx(4.0 / 3.0));
        auto [m3, n3] = act_on_labels({1.0, 1}, -1.5, 0.3);
        CHECK(m3 == -1.5);
        CHECK(n3 == 0.3);
        CHECK(orbit_invariant(4.0, 1.0) == 4.0);
        CHECK(orbit_invariant(1.0, 0.0) == 0.0);
        CHECK(orbit_invariant(1.0, -1.0) == -1.0);
        CHECK_THROWS_AS(orbit_invariant(0.0, 0.0), DomainError);
        CHECK_THROWS_AS(act_on_labels({2.0, 1}, 0.0, 0.0), DomainError);
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int i = 0; i < 30; ++i) {
            const double mu = u(rng), nu = u(rng);
            const auto [a, b] = act_on_labels(random_element(rng), mu, nu);
            CHECK(orbit_invariant(a, b) == doctest::Approx(mu * nu).epsilon(1e-14));
        }
    }

    TEST_CASE("implementer special elements")
    {
        const Eigen::MatrixXd id = implementer({1.0, 1}, 0.7, 12);
        CHECK(id == Eigen::MatrixXd::Identity(12, 12));
        const Eigen::MatrixXd par = implementer({1.0, -1}, 0.7, 12);
        for (int n = 0; n < 12; ++n)
            CHECK(par(n, n) == (n % 2 == 0 ? 1.0 : -1.0));
        CHECK_THROWS_AS(implementer({-2.0, 1}, 1.0, 10), UnsupportedCase);
    }

    TEST_CASE("implementer columns are normalized Meixner values (a=3, α₀=1, c=1/4)")
    {
        const int N = 80;
        const Eigen::MatrixXd U = implementer({3.0, 1}, 1.0, N);
        const orthopoly::PolyFamily fam = orthopoly::PolyFamily::meixner(1.0, 0.25);
        const orthopoly::SpectralMeasure mu = orthopoly::measure(fam);
        for (int n = 0; n < 8; ++n)
            for (int k = 0; k < 8; ++k) {
                const double expected = std::sqrt(mu.atoms[static_cast<std::size_t>(n)].weight) *
                                        orthopoly::eval_orthonormal(fam, k, n);
                CHECK(std::abs(std::abs(U(k, n)) - std::abs(expected)) < 1e-10);
            }
    }

    TEST_CASE("implementer unitarity and conjugation on the interior")
    {
        const int N = 160;
        for (double a : {1.0 / 3.0, 0.5, 2.0, 3.0})
            for (int sigma : {1, -1})
                for (double alpha : {0.5, 1.0, 2.7}) {
                    const GroupElement g{a, sigma};
                    const Implementer imp = implementer_with_tails(g, alpha, N);
                    const int m = imp.interior;
                    REQUIRE(m >= 12);
                    const Eigen::MatrixXd& U = imp.U;
                    const Eigen::MatrixXd gram = U.leftCols(m).transpose() * U.leftCols(m);
                    CHECK((gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-8);

                    const rep::Generators x = rep::sector_generators(rep::OneModeSector(rep::MultibosonRep(1, {alpha}), 0, N));
                    const rep::Generators bx = act(g, x);
                    const int inner = m - 2;
                    auto conj_err = [&](const Eigen::MatrixXd& X, const Eigen::MatrixXd& BX) {
                        const Eigen::MatrixXd c = U * X * U.transpose();
                        return (c.topLeftCorner(inner, inner) - BX.topLeftCorner(inner, inner)).cwiseAbs().maxCoeff();
                    };
                    CHECK(conj_err(x.A0, bx.A0) <= 1e-7);
                    CHECK(conj_err(x.Am, bx.Am) <= 1e-7);
                    CHECK(conj_err(x.Ap, bx.Ap) <= 1e-7);
                }
    }

    TEST_CASE("truncated image of A0 has spectrum 2n + α₀")
    {
        const double alpha = 1.3;
        const rep::Generators x = rep::sector_generators(rep::OneModeSector(rep::MultibosonRep(1, {alpha}), 0, 300));
        const rep::Generators bx = act({2.0, 1}, x);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bx.A0, Eigen::EigenvaluesOnly);
        for (int n = 0; n < 5; ++n)
            CHECK(std::abs(es.eigenvalues()(n) - (2.0 * n + alpha)) <= 1e-6);
    }
}
