#include "multiboson/orthopoly.hpp"

#include "multiboson/errors.hpp"
#include "multiboson/quadrature.hpp"
#include "multiboson/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace multiboson::orthopoly {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// log|(x)_n| together with the sign of (x)_n.
struct SignedLog {
    double log_abs = 0.0;
    double sign = 1.0;
    void mul(double f)
    {
        if (f == 0.0)
            throw DomainError("orthopoly: vanishing factor in a weight formula");
        log_abs += std::log(std::abs(f));
        if (f < 0.0)
            sign = -sign;
    }
    void div(double f)
    {
        mul(f);
        log_abs -= 2.0 * std::log(std::abs(f));
    }
    void mul_poch(double x, int n)
    {
        for (int j = 0; j < n; ++j)
            mul(x + j);
    }
    void div_poch(double x, int n)
    {
        for (int j = 0; j < n; ++j)
            div(x + j);
    }
    double value() const { return sign * std::exp(log_abs); }
};

// Geometric atom sequences are cut near the bottom of the double range, so that the dropped
// weight stays negligible after multiplication by P_n(x)² for moderate degrees.
constexpr double atom_cutoff = 1e-280;

void require(bool ok, const char* what)
{
    if (!ok)
        throw DomainError(what);
}

} // namespace

std::string to_string(Tag tag)
{
    switch (tag) {
    case Tag::Laguerre: return "Laguerre";
    case Tag::Meixner: return "Meixner";
    case Tag::MeixnerPollaczek: return "MeixnerPollaczek";
    case Tag::DualHahn: return "DualHahn";
    case Tag::ContinuousDualHahn: return "ContinuousDualHahn";
    }
    return "unknown";
}

PolyFamily PolyFamily::laguerre(double alpha)
{
    require(alpha > -1.0, "Laguerre family requires alpha > -1");
    PolyFamily f;
    f.tag = Tag::Laguerre;
    f.alpha = alpha;
    return f;
}

PolyFamily PolyFamily::meixner(double beta, double c)
{
    require(beta > 0.0, "Meixner family requires beta > 0");
    require(c > 0.0 && c < 1.0, "Meixner family requires 0 < c < 1");
    PolyFamily f;
    f.tag = Tag::Meixner;
    f.beta = beta;
    f.c = c;
    return f;
}

PolyFamily PolyFamily::meixner_pollaczek(double lambda, double phi)
{
    require(lambda > 0.0, "Meixner-Pollaczek family requires lambda > 0");
    require(phi > 0.0 && phi < std::numbers::pi, "Meixner-Pollaczek family requires 0 < phi < pi");
    PolyFamily f;
    f.tag = Tag::MeixnerPollaczek;
    f.lambda = lambda;
    f.phi = phi;
    return f;
}

PolyFamily PolyFamily::dual_hahn(double gamma, double delta, int K)
{
    require(gamma > -1.0 && delta > -1.0, "dual Hahn family requires gamma, delta > -1");
    require(K >= 0, "dual Hahn family requires K >= 0");
    PolyFamily f;
    f.tag = Tag::DualHahn;
    f.gamma = gamma;
    f.delta = delta;
    f.K = K;
    return f;
}

PolyFamily PolyFamily::continuous_dual_hahn(double u, double v, double w)
{
    require(v > 0.0 && w > 0.0, "continuous dual Hahn family requires v, w > 0");
    require(u + v > 0.0 && u + w > 0.0, "continuous dual Hahn family requires u+v > 0 and u+w > 0");
    PolyFamily f;
    f.tag = Tag::ContinuousDualHahn;
    f.u = u;
    f.v = v;
    f.w = w;
    return f;
}

std::pair<double, double> recurrence(const PolyFamily& f, int k)
{
    if (k < 0)
        throw DomainError("recurrence: negative index");
    const double kk = k;
    switch (f.tag) {
    case Tag::Laguerre:
        return {(2.0 * kk + f.alpha + 1.0) / 2.0, std::sqrt((kk + 1.0) * (kk + f.alpha + 1.0)) / 2.0};
    case Tag::Meixner:
        return {(kk + (kk + f.beta) * f.c) / (1.0 - f.c),
                std::sqrt(f.c * (kk + 1.0) * (kk + f.beta)) / (1.0 - f.c)};
    case Tag::MeixnerPollaczek:
        return {-(kk + f.lambda) / std::tan(f.phi),
                std::sqrt((kk + 1.0) * (kk + 2.0 * f.lambda)) / (2.0 * std::sin(f.phi))};
    case Tag::DualHahn: {
        if (k > f.K)
            throw DomainError("recurrence: dual Hahn index exceeds K");
        const double K = f.K;
        const double a = (kk + f.gamma + 1.0) * (K - kk) + kk * (K - kk + f.delta + 1.0);
        const double b = k == f.K ? 0.0 : std::sqrt((kk + 1.0) * (kk + f.gamma + 1.0) * (K - kk) * (K - kk + f.delta));
        return {a, b};
    }
    case Tag::ContinuousDualHahn: {
        const double up = (kk + f.u + f.v) * (kk + f.u + f.w);
        const double down = kk * (kk + f.v + f.w - 1.0);
        return {-(up + down - f.u * f.u), std::sqrt(up * (kk + 1.0) * (kk + f.v + f.w))};
    }
    }
    throw DomainError("recurrence: unknown family");
}

Eigen::VectorXd eval_all(const PolyFamily& family, int n, double x)
{
    if (n < 0)
        throw DomainError("eval_all: negative degree");
    if (family.tag == Tag::DualHahn && n > family.K)
        throw DomainError("eval_all: dual Hahn degree exceeds K");
    Eigen::VectorXd p(n + 1);
    p(0) = 1.0;
    double prev_b = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto [a, b] = recurrence(family, k);
        const double before = k > 0 ? p(k - 1) : 0.0;
        p(k + 1) = ((x - a) * p(k) - prev_b * before) / b;
        prev_b = b;
    }
    return p;
}

double eval_orthonormal(const PolyFamily& family, int n, double x)
{
    return eval_all(family, n, x)(n);
}

SpectralMeasure SpectralMeasure::mapped(double new_shift, double new_scale) const
{
    if (new_scale == 0.0)
        throw DomainError("SpectralMeasure: scale must be nonzero");
    SpectralMeasure out = *this;
    out.shift = new_shift + new_scale * shift;
    out.scale = new_scale * scale;
    return out;
}

double SpectralMeasure::atom_mass() const
{
    double s = 0.0;
    for (const Atom& a : atoms)
        s += a.weight;
    return s;
}

SpectralMeasure measure(const PolyFamily& f, bool normalize)
{
    SpectralMeasure mu;
    mu.normalized = normalize;
    switch (f.tag) {
    case Tag::Laguerre: {
        const double alpha = f.alpha;
        const double log_mass = normalize ? std::lgamma(alpha + 1.0) : 0.0;
        ContinuousPart part;
        part.lower = 0.0;
        part.upper = inf;
        part.density = [alpha, log_mass](double x) {
            if (x <= 0.0)
                return 0.0;
            return 2.0 * std::exp(alpha * std::log(2.0 * x) - 2.0 * x - log_mass);
        };
        part.edge_power = alpha < 1.0 ? 2.0 / (alpha + 1.0) : 1.0;
        part.label = "[0, inf)";
        mu.continuous = part;
        break;
    }
    case Tag::Meixner: {
        // Weights (β)_n cⁿ / n!; the closed-form total mass is (1-c)^{-β}.
        const double norm = normalize ? std::pow(1.0 - f.c, f.beta) : 1.0;
        double term = 1.0;
        double total = 0.0;
        for (int n = 0;; ++n) {
            mu.atoms.push_back({static_cast<double>(n), term * norm});
            total += term;
            const double ratio = f.c * (n + f.beta) / (n + 1.0);
            term *= ratio;
            if (ratio < 1.0 && term / (1.0 - ratio) < atom_cutoff * total)
                break;
            if (n > 10000000)
                throw NumericalFailure("measure: Meixner atom series does not settle");
        }
        mu.atoms_truncated = true;
        break;
    }
    case Tag::MeixnerPollaczek: {
        const double lambda = f.lambda;
        const double tilt = 2.0 * f.phi - std::numbers::pi;
        const double log_mass = normalize ? std::log(2.0 * std::numbers::pi) + std::lgamma(2.0 * lambda) -
                                                2.0 * lambda * std::log(2.0 * std::sin(f.phi))
                                          : 0.0;
        ContinuousPart part;
        part.lower = -inf;
        part.upper = inf;
        part.density = [lambda, tilt, log_mass](double x) {
            return std::exp(tilt * x + 2.0 * special::ln_gamma_abs(lambda, x) - log_mass);
        };
        part.label = "(-inf, inf)";
        mu.continuous = part;
        break;
    }
    case Tag::DualHahn: {
        const double s = f.gamma + f.delta + 1.0;
        // Total mass is 1/binom(δ+K, K).
        const double log_mass = normalize ? std::lgamma(f.delta + f.K + 1.0) - std::lgamma(f.delta + 1.0) -
                                                std::lgamma(f.K + 1.0)
                                          : 0.0;
        for (int n = 0; n <= f.K; ++n) {
            // (2n+s)(γ+1)_n (-K)_n K! / ((-1)^n (n+s)_{K+1} (δ+1)_n n!), with (-K)_n/(-1)^n = K!/(K-n)!.
            // (2n+s)/(n+s) is taken as 1 at n = 0 so that s = 0 is covered by its limit.
            SignedLog w;
            if (n > 0) {
                w.mul(2.0 * n + s);
                w.div(n + s);
            }
            w.mul_poch(f.gamma + 1.0, n);
            w.log_abs += 2.0 * std::lgamma(f.K + 1.0) - std::lgamma(f.K - n + 1.0) - std::lgamma(n + 1.0) + log_mass;
            w.div_poch(n + s + 1.0, f.K);
            w.div_poch(f.delta + 1.0, n);
            const double weight = w.value();
            if (!(weight > 0.0))
                throw NumericalFailure("measure: nonpositive dual Hahn weight");
            mu.atoms.push_back({n * (n + s), weight});
        }
        break;
    }
    case Tag::ContinuousDualHahn: {
        const double u = f.u, v = f.v, w = f.w;
        const double log_g = std::lgamma(u + v) + std::lgamma(u + w) + std::lgamma(v + w);
        const double log_cont = normalize ? log_g + std::log(2.0 * std::numbers::pi) : 0.0;
        ContinuousPart part;
        part.lower = -inf;
        part.upper = 0.0;
        part.density = [u, v, w, log_cont](double x) {
            if (x >= 0.0)
                return 0.0;
            const double y = std::sqrt(-x);
            const double lg = special::ln_gamma_abs(u, y) + special::ln_gamma_abs(v, y) +
                              special::ln_gamma_abs(w, y) - special::ln_gamma_abs(0.0, 2.0 * y);
            return std::exp(2.0 * lg - std::log(2.0 * y) - log_cont);
        };
        part.edge_power = 2.0;
        part.label = "(-inf, 0)";
        mu.continuous = part;
        if (u < 0.0) {
            const double log_disc = normalize ? log_g : 0.0;
            SignedLog front;
            front.log_abs = std::lgamma(u + v) + std::lgamma(u + w) + std::lgamma(v - u) + std::lgamma(w - u) -
                            std::lgamma(-2.0 * u) - log_disc;
            for (int n = 0; u + n < 0.0; ++n) {
                SignedLog t = front;
                t.mul_poch(2.0 * u, n);
                t.mul_poch(u + 1.0, n);
                t.mul_poch(u + v, n);
                t.mul_poch(u + w, n);
                t.div_poch(u, n);
                t.div_poch(u - v + 1.0, n);
                t.div_poch(u - w + 1.0, n);
                t.log_abs -= std::lgamma(n + 1.0);
                if (n % 2 == 1)
                    t.sign = -t.sign;
                const double weight = t.value();
                if (!(weight > 0.0)) {
                    std::ostringstream msg;
                    msg << "measure: nonpositive continuous dual Hahn atom weight at n=" << n;
                    throw NumericalFailure(msg.str());
                }
                mu.atoms.push_back({(u + n) * (u + n), weight});
            }
        }
        break;
    }
    }
    return mu;
}

Eigen::VectorXd integrate(const SpectralMeasure& mu, const std::function<Eigen::VectorXd(double)>& f,
                          Eigen::Index dim)
{
    Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
    for (const Atom& a : mu.atoms)
        total += a.weight * f(a.location);
    if (!mu.continuous)
        return total;
    const ContinuousPart& c = *mu.continuous;
    quadrature::Options opt;
    opt.rel_tol = 1e-10;
    const double q = c.edge_power;
    if (std::isfinite(c.lower) && std::isfinite(c.upper)) {
        total += quadrature::integrate([&](double x) { Eigen::VectorXd r = c.density(x) * f(x); return r; },
                                       c.lower, c.upper, dim, opt);
    } else if (std::isfinite(c.lower)) {
        auto g = [&](double t) {
            const double x = c.lower + std::pow(t, q);
            Eigen::VectorXd r = (c.density(x) * q * std::pow(t, q - 1.0)) * f(x);
            return r;
        };
        total += quadrature::integrate_to_infinity(g, 0.0, dim, 1.0, opt);
    } else if (std::isfinite(c.upper)) {
        auto g = [&](double t) {
            const double x = c.upper - std::pow(t, q);
            Eigen::VectorXd r = (c.density(x) * q * std::pow(t, q - 1.0)) * f(x);
            return r;
        };
        total += quadrature::integrate_to_infinity(g, 0.0, dim, 1.0, opt);
    } else {
        auto right = [&](double t) { Eigen::VectorXd r = c.density(t) * f(t); return r; };
        auto left = [&](double t) { Eigen::VectorXd r = c.density(-t) * f(-t); return r; };
        total += quadrature::integrate_to_infinity(right, 0.0, dim, 1.0, opt);
        total += quadrature::integrate_to_infinity(left, 0.0, dim, 1.0, opt);
    }
    return total;
}

double gram_check(const PolyFamily& family, int n_max)
{
    if (n_max < 0)
        throw DomainError("gram_check: n_max must be nonnegative");
    if (family.tag == Tag::DualHahn)
        n_max = std::min(n_max, family.K);
    const int n = n_max + 1;
    const Eigen::Index dim = static_cast<Eigen::Index>(n) * (n + 1) / 2;
    const SpectralMeasure mu = measure(family, true);
    auto products = [&](double x) {
        const Eigen::VectorXd p = eval_all(family, n_max, x);
        Eigen::VectorXd out(dim);
        Eigen::Index idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                out(idx++) = p(i) * p(j);
        return out;
    };
    const Eigen::VectorXd g = integrate(mu, products, dim);
    double dev = 0.0;
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            dev = std::max(dev, std::abs(g(idx++) - (i == j ? 1.0 : 0.0)));
    return dev;
}

} // namespace multiboson::orthopoly
