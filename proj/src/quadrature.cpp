#include "multiboson/quadrature.hpp"

#include "multiboson/errors.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace multiboson::quadrature {

namespace {

constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the 7-point rule (nodes xgk[1], xgk[3], xgk[5], xgk[7]).
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a, b;
    Eigen::VectorXd value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const VectorIntegrand& f, double a, double b, Eigen::Index dim)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Eigen::VectorXd fc = f(c);
    Eigen::VectorXd kron = wgk[7] * fc;
    Eigen::VectorXd gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        Eigen::VectorXd s = f(c - dx) + f(c + dx);
        kron += wgk[j] * s;
        if (j % 2 == 1)
            gauss += wg[j / 2] * s;
    }
    Segment seg{a, b, h * kron, 0.0};
    if (seg.value.size() != dim)
        throw DomainError("quadrature: integrand returned a vector of the wrong size");
    seg.error = (h * (kron - gauss)).cwiseAbs().maxCoeff();
    if (!seg.value.allFinite() || !std::isfinite(seg.error))
        throw NumericalFailure("quadrature: integrand is not finite on the integration interval");
    return seg;
}

} // namespace

Eigen::VectorXd integrate(const VectorIntegrand& f, double a, double b, Eigen::Index dim, const Options& opt)
{
    if (a == b)
        return Eigen::VectorXd::Zero(dim);
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b, dim);
    Eigen::VectorXd total = first.value;
    double err = first.error;
    heap.push(std::move(first));
    int intervals = 1;
    while (err > std::max(opt.abs_tol, opt.rel_tol * total.cwiseAbs().maxCoeff())) {
        if (intervals >= opt.max_intervals) {
            std::ostringstream msg;
            msg << "quadrature: no convergence on [" << a << ", " << b << "] after " << intervals
                << " intervals; estimate max-norm " << total.cwiseAbs().maxCoeff() << ", error " << err;
            throw NumericalFailure(msg.str());
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid, dim);
        Segment right = gk15(f, mid, worst.b, dim);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++intervals;
        // Guard against drift in the running error sum.
        if (intervals % 256 == 0) {
            err = 0.0;
            std::priority_queue<Segment> copy = heap;
            while (!copy.empty()) {
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    return total;
}

double integrate(const std::function<double(double)>& f, double a, double b, const Options& opt)
{
    auto vf = [&f](double x) { return Eigen::VectorXd::Constant(1, f(x)); };
    return integrate(vf, a, b, 1, opt)(0);
}

Eigen::VectorXd integrate_to_infinity(const VectorIntegrand& f, double a, Eigen::Index dim, double h,
                                      const Options& opt)
{
    Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
    double lo = a;
    double width = h;
    int quiet = 0;
    for (int chunk = 0; chunk < 200; ++chunk) {
        const double hi = lo + width;
        Eigen::VectorXd part = integrate(f, lo, hi, dim, opt);
        total += part;
        const double scale = total.cwiseAbs().maxCoeff();
        if (part.cwiseAbs().maxCoeff() <= 1e-7 * opt.rel_tol * scale || (scale == 0.0 && chunk > 8))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2)
            return total;
        lo = hi;
        width *= 2.0;
    }
    throw NumericalFailure("quadrature: semi-infinite integral did not settle after 200 chunks");
}

} // namespace multiboson::quadrature
