#include "snb/specfun.hpp"

#include "snb/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace snb {

namespace {

using constants::pi;
using constants::euler_gamma;

constexpr double eps = std::numeric_limits<double>::epsilon();

void require_finite(double x, const char* fn)
{
    if (!std::isfinite(x))
        throw DomainError(std::string(fn) + ": non-finite argument");
}

// Power series are used up to this point; beyond it the continued fraction
// for E1(ix) converges in a few dozen steps without cancellation.
constexpr double series_limit = 2.0;

double si_series(double x)
{
    const double x2 = x * x;
    double term = x;  // x^(2k+1)/(2k+1)!
    double sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double contrib = term / (2.0 * k + 1.0);
        sum += contrib;
        if (std::abs(contrib) < eps * std::abs(sum))
            break;
    }
    return sum;
}

double ci_series(double x)
{
    const double x2 = x * x;
    double term = 1.0;  // x^(2k)/(2k)!
    double sum = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
        const double contrib = term / (2.0 * k);
        sum += contrib;
        if (std::abs(contrib) < eps * std::abs(sum))
            break;
    }
    return euler_gamma + std::log(x) + sum;
}

// Modified Lentz evaluation of E1(ix) e^{ix} as a continued fraction;
// returns (Ci(x), Si(x)) for x > series_limit.
std::pair<double, double> cisi_fraction(double x)
{
    using cd = std::complex<double>;
    constexpr double tiny = 1e-300;
    cd b(1.0, x);
    cd c(1.0 / tiny, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 2; i < 100000; ++i) {
        const double a = -double(i - 1) * double(i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps)
            break;
    }
    h *= cd(std::cos(x), -std::sin(x));
    return {-h.real(), pi / 2 + h.imag()};
}

double zeta_even(int n)
{
    // zeta(2n); the first few in closed form, the rest by direct summation
    // (k^{-2n} with 2n >= 12 is below 1e-17 relative after 30 terms).
    static const std::array<double, 6> closed = {
        0.0,
        pi * pi / 6.0,
        std::pow(pi, 4) / 90.0,
        std::pow(pi, 6) / 945.0,
        std::pow(pi, 8) / 9450.0,
        std::pow(pi, 10) / 93555.0,
    };
    if (n < 6)
        return closed[n];
    double s = 0.0;
    for (int k = 30; k >= 1; --k)
        s += std::pow(double(k), -2.0 * n);
    return s;
}

double clausen_core(double t)  // t in [0, pi]
{
    if (t == 0.0)
        return 0.0;
    const double r2 = (t / (2 * pi)) * (t / (2 * pi));
    double pw = t;  // t^{2n+1} / (2 pi)^{2n}
    double sum = 0.0;
    for (int n = 1; n < 60; ++n) {
        pw *= r2;
        const double contrib = zeta_even(n) * pw / (n * (2.0 * n + 1.0));
        sum += contrib;
        if (contrib < 1e-18 * t)
            break;
    }
    return t - t * std::log(t) + sum;
}

struct ReferenceRule {
    std::vector<double> x;
    std::vector<double> w;
};

ReferenceRule make_reference_rule(std::size_t n)
{
    ReferenceRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double nd = double(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        const double theta = pi * (double(i) + 0.75) / (nd + 0.5);
        double x = (1.0 - 1.0 / (8 * nd * nd) + 1.0 / (8 * nd * nd * nd)) * std::cos(theta);
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = x;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16)
                break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
            p0 = p1;
            p1 = p2;
        }
        if (n == 1)
            p0 = 1.0;
        dp = nd * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        r.x[n / 2] = 0.0;
    return r;
}

std::shared_ptr<const ReferenceRule> reference_rule(std::size_t n)
{
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const ReferenceRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_shared<const ReferenceRule>(make_reference_rule(n));
    return slot;
}

} // namespace

QuadratureRule gauss_legendre(std::size_t order, double a, double b)
{
    if (order == 0)
        throw ArgumentError("gauss_legendre: order must be positive");
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw ArgumentError("gauss_legendre: need finite a < b");
    const auto ref = reference_rule(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    QuadratureRule rule;
    rule.order = order;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (std::size_t i = 0; i < order; ++i) {
        rule.nodes[i] = mid + half * ref->x[i];
        rule.weights[i] = half * ref->w[i];
    }
    return rule;
}

double sin_integral(double x)
{
    require_finite(x, "sin_integral");
    if (x < 0)
        return -sin_integral(-x);
    if (x <= series_limit)
        return si_series(x);
    return cisi_fraction(x).second;
}

double cos_integral(double x)
{
    require_finite(x, "cos_integral");
    if (!(x > 0))
        throw DomainError("cos_integral: requires x > 0");
    if (x <= series_limit)
        return ci_series(x);
    return cisi_fraction(x).first;
}

double clausen2(double theta)
{
    require_finite(theta, "clausen2");
    double t = std::fmod(theta, 2 * pi);
    if (t < 0)
        t += 2 * pi;
    if (t > pi)
        return -clausen_core(2 * pi - t);
    return clausen_core(t);
}

double log_gamma(double x)
{
    require_finite(x, "log_gamma");
    if (!(x > 0))
        throw DomainError("log_gamma: requires x > 0");
    return std::lgamma(x);
}

double harmonic(std::size_t k)
{
    double sum = 0.0;
    for (std::size_t j = k; j >= 1; --j)
        sum += 1.0 / double(j);
    return sum;
}

} // namespace snb
