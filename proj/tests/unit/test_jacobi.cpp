#include <doctest.h>

#include "multiboson/jacobi.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <random>

using namespace multiboson;
using namespace multiboson::jacobi;

namespace {

JacobiOperator random_jacobi(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    JacobiOperator j;
    for (int k = 0; k < n; ++k) {
        j.diag.push_back(3.0 * u(rng));
        if (k + 1 < n)
            j.offdiag.push_back(0.2 + std::abs(u(rng)));
    }
    return j;
}

} // namespace

TEST_SUITE("jacobi")
{
    TEST_CASE("small fixed matrices")
    {
        JacobiOperator j{{0.0, 0.0}, {1.0}};
        const std::vector<double> e = oracle_eigs(j, 2);
        CHECK(e[0] == doctest::Approx(-1.0));
        CHECK(e[1] == doctest::Approx(1.0));
        JacobiOperator d{{3.0, -1.0, 2.0}, {0.0, 0.0}};
        const std::vector<double> sorted = oracle_eigs(d, 3);
        CHECK(sorted == std::vector<double>{-1.0, 2.0, 3.0});
    }

    TEST_CASE("eigenvalues agree with a dense self-adjoint solver")
    {
        for (unsigned seed = 1; seed <= 5; ++seed) {
            const JacobiOperator j = random_jacobi(40, seed);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(j.dense());
            CHECK((eigenvalues(j) - dense.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    TEST_CASE("eigensystem is orthonormal and diagonalizes")
    {
        const JacobiOperator j = random_jacobi(30, 7);
        const EigenSystem s = eigensystem(j);
        const Eigen::MatrixXd V = s.vectors;
        CHECK((V.transpose() * V - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((j.dense() * V - V * s.values.asDiagonal()).cwiseAbs().maxCoeff() < 1e-11);
    }

    TEST_CASE("eigenvector_at reproduces solver eigenvectors up to sign")
    {
        const JacobiOperator j = random_jacobi(25, 11);
        const EigenSystem s = eigensystem(j);
        for (int n = 0; n < 25; n += 4) {
            const Eigen::VectorXd v = eigenvector_at(j, s.values(n));
            CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(std::abs(std::abs(v.dot(s.vectors.col(n))) - 1.0) < 1e-10);
            CHECK(v(0) >= 0.0);
        }
    }

    TEST_CASE("padded eigenvector of a semi-infinite operator")
    {
        // Harmonic-oscillator-like Jacobi operator a_k = 2k+1, b_k = 0.3·√((k+1)(k+1)): bounded below,
        // eigenvectors decay fast; the padded head must be an eigenvector on its own span.
        auto coeffs = [](int k) { return std::pair<double, double>{2.0 * k + 1.0, 0.3 * (k + 1.0)}; };
        const JacobiOperator big = truncate(coeffs, 400);
        const double lambda = eigenvalues(big)(2);
        const PaddedVector pv = eigenvector_padded(coeffs, lambda, 30);
        CHECK(pv.head.size() == 30);
        CHECK(pv.tail_mass < 1e-20);
        CHECK(pv.head.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const JacobiOperator small = truncate(coeffs, 30);
        const Eigen::VectorXd r = small.dense() * pv.head - lambda * pv.head;
        CHECK(r.head(25).cwiseAbs().maxCoeff() < 1e-10);
    }

    TEST_CASE("exp_apply matches the dense matrix exponential")
    {
        const JacobiOperator j = random_jacobi(20, 3);
        const EigenSystem s = eigensystem(j);
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(20);
        psi(0) = 1.0;
        psi(5) = std::complex<double>(0.0, 1.0);
        psi /= psi.norm();
        const double rate = 0.73;
        const Eigen::MatrixXcd gen = std::complex<double>(0.0, rate) * j.dense().cast<std::complex<double>>();
        const Eigen::VectorXcd expected = gen.exp() * psi;
        CHECK((exp_apply(s, psi, rate) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}
