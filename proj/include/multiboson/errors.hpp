#ifndef MULTIBOSON_ERRORS_HPP
#define MULTIBOSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multiboson {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative method (quadrature, eigensolver, series) failed to converge.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested quantity does not exist for this parameter regime
/// (e.g. discrete eigenvectors of a continuous-spectrum case).
class UnsupportedCase : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Amplitude leaked into the top of a truncated basis beyond the declared tolerance.
class TruncationOverflow : public std::runtime_error {
public:
    TruncationOverflow(const std::string& what, double tail_norm)
        : std::runtime_error(what), tail_norm_(tail_norm) {}
    double tail_norm() const noexcept { return tail_norm_; }

private:
    double tail_norm_;
};

} // namespace multiboson

#endif
