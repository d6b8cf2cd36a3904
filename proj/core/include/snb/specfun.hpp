#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace snb {

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = 0.5772156649015329;
} // namespace constants

/// Gauss-type quadrature rule on a finite interval (a, b).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t order = 0;
    double a = 0.0;
    double b = 0.0;

    template <class F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < order; ++i)
            sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Gauss-Legendre rule of the given order mapped to (a, b). Reference rules
/// on (-1, 1) are memoised per order; the call is thread safe.
QuadratureRule gauss_legendre(std::size_t order, double a, double b);

/// Si(x) = int_0^x sin(t)/t dt. Odd in x.
double sin_integral(double x);

/// Ci(x) = gamma + log x + int_0^x (cos t - 1)/t dt, x > 0.
double cos_integral(double x);

/// Clausen function Cl_2(theta) = -int_0^theta log|2 sin(t/2)| dt.
double clausen2(double theta);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// H_k = sum_{j=1}^k 1/j, H_0 = 0.
double harmonic(std::size_t k);

} // namespace snb
