#ifndef MULTIBOSON_STATE_HPP
#define MULTIBOSON_STATE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace multiboson {

/// Complex amplitudes over a truncated basis, with a free-form basis label.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    std::string basis;

    Eigen::Index size() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

/// Norm of the amplitudes in the top tenth of a truncated basis (at least one entry).
inline double tail_norm(const Eigen::VectorXcd& v, double fraction = 0.1)
{
    const Eigen::Index n = v.size();
    const Eigen::Index count = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(fraction * n)));
    return v.tail(count).norm();
}

inline StateVector basis_state(Eigen::Index N, Eigen::Index k, std::string basis = "fock")
{
    StateVector s;
    s.amplitudes = Eigen::VectorXcd::Zero(N);
    s.amplitudes(k) = 1.0;
    s.basis = std::move(basis);
    return s;
}

} // namespace multiboson

#endif
