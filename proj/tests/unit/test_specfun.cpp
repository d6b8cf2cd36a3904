#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "snb/errors.hpp"
#include "snb/specfun.hpp"

#include <cmath>
#include <limits>

using namespace snb;
using constants::euler_gamma;
using constants::pi;

namespace {

// int_0^x f(t) dt by unit-width panels of 30-point Gauss-Legendre.
template <class F>
double panel_integral(F f, double x)
{
    double acc = 0.0;
    const int n = int(std::ceil(x));
    for (int p = 0; p < n; ++p) {
        const double a = x * p / n, b = x * (p + 1) / n;
        acc += gauss_legendre(30, a, b).integrate(f);
    }
    return acc;
}

double si_series(double x)
{
    double acc = 0.0, term = x;  // x^{2k+1}/(2k+1)!
    for (int k = 0; k < 30; ++k) {
        acc += (k % 2 ? -1.0 : 1.0) * term / (2 * k + 1);
        term *= x * x / ((2 * k + 2) * (2 * k + 3));
    }
    return acc;
}

double ci_series(double x)
{
    double acc = euler_gamma + std::log(x), term = 1.0;  // x^{2k}/(2k)!
    for (int k = 1; k < 30; ++k) {
        term *= x * x / ((2 * k - 1) * (2 * k));
        acc += (k % 2 ? -1.0 : 1.0) * term / (2 * k);
    }
    return acc;
}

// Cl2(t) = t - t log t - int_0^t log(2 sin(u/2)/u) du, smooth integrand on [0, 2pi).
double clausen_oracle(double t)
{
    auto g = [](double u) { return u == 0.0 ? 0.0 : std::log(2 * std::sin(u / 2) / u); };
    return t - t * std::log(t) - gauss_legendre(60, 0.0, t).integrate(g);
}

long double log_gamma_oracle(long double x)
{
    const long double y = x + 20;
    long double v = (y - 0.5L) * std::log(y) - y + 0.5L * std::log(2 * std::acos(-1.0L)) + 1 / (12 * y) -
                    1 / (360 * y * y * y) + 1 / (1260 * std::pow(y, 5)) - 1 / (1680 * std::pow(y, 7)) +
                    1 / (1188 * std::pow(y, 9));
    for (int k = 0; k < 20; ++k)
        v -= std::log(x + k);
    return v;
}

} // namespace

TEST_CASE("euler gamma and pi")
{
    CHECK(euler_gamma == doctest::Approx(0.57721).epsilon(1e-5));
    CHECK(euler_gamma == 0.5772156649015329);
    CHECK(pi == std::acos(-1.0));
}

TEST_CASE("sine integral")
{
    CHECK(sin_integral(0.0) == 0.0);
    CHECK(std::abs(sin_integral(1e8) - pi / 2) <= 1e-7);
    CHECK(std::abs(sin_integral(1.0) - si_series(1.0)) <= 1e-14);
    CHECK(sin_integral(-2.5) == -sin_integral(2.5));
    for (double x : {0.3, 1.7, 2.0, 3.0, 7.5, 8.0, 12.0, 25.0, 50.0}) {
        CAPTURE(x);
        const double ref = panel_integral([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, x);
        CHECK(std::abs(sin_integral(x) - ref) <= 1e-14);
    }
    // Large-x asymptotics: Si(x) = pi/2 - cos x/x (1 - 2/x^2) - sin x/x^2 (1 - 6/x^2) + ...
    for (double x : {1e3, 1e4}) {
        const double ref = pi / 2 - std::cos(x) / x * (1 - 2 / (x * x) + 24 / std::pow(x, 4)) -
                           std::sin(x) / (x * x) * (1 - 6 / (x * x) + 120 / std::pow(x, 4));
        CHECK(std::abs(sin_integral(x) - ref) <= 1e-14);
    }
    CHECK_THROWS_AS(sin_integral(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(sin_integral(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("cosine integral")
{
    CHECK(std::abs(cos_integral(1e-8) - (euler_gamma + std::log(1e-8))) <= 1e-12);
    CHECK(std::abs(cos_integral(1e8)) <= 1e-7);
    CHECK(std::abs(cos_integral(1.0) - ci_series(1.0)) <= 1e-14);
    for (double x : {0.3, 1.7, 2.0, 3.0, 7.5, 8.0, 12.0, 25.0, 50.0}) {
        CAPTURE(x);
        const double ref =
            euler_gamma + std::log(x) + panel_integral([](double t) { return t == 0.0 ? 0.0 : (std::cos(t) - 1) / t; }, x);
        CHECK(std::abs(cos_integral(x) - ref) <= 1e-14);
    }
    for (double x : {1e3, 1e4}) {
        const double ref = std::sin(x) / x * (1 - 2 / (x * x) + 24 / std::pow(x, 4)) -
                           std::cos(x) / (x * x) * (1 - 6 / (x * x) + 120 / std::pow(x, 4));
        CHECK(std::abs(cos_integral(x) - ref) <= 1e-14);
    }
    CHECK_THROWS_AS(cos_integral(0.0), DomainError);
    CHECK_THROWS_AS(cos_integral(-1.0), DomainError);
}

TEST_CASE("Si and Ci derivatives")
{
    const double h = 1e-5;
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        CAPTURE(x);
        CHECK(std::abs((sin_integral(x + h) - sin_integral(x - h)) / (2 * h) - std::sin(x) / x) <= 1e-8);
        CHECK(std::abs((cos_integral(x + h) - cos_integral(x - h)) / (2 * h) - std::cos(x) / x) <= 1e-8);
    }
}

TEST_CASE("Clausen function")
{
    CHECK(clausen2(0.0) == 0.0);
    CHECK(std::abs(clausen2(pi)) <= 1e-13);
    // Averaging partial sums N and N + 2 cancels the leading alternating remainder.
    const int N = 1000000;
    double partial = 0.0, next = 0.0;
    for (int l = 1; l <= N + 2; ++l) {
        const double term = std::sin(l * pi / 2) / (double(l) * double(l));
        if (l <= N)
            partial += term;
        next += term;
    }
    CHECK(std::abs(clausen2(pi / 2) - 0.5 * (partial + next)) <= 1e-13);
    for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.5, 6.2}) {
        CAPTURE(t);
        CHECK(std::abs(clausen2(t) - clausen_oracle(t)) <= 1e-13);
    }
    CHECK(std::abs(clausen2(1.0 + 2 * pi) - clausen2(1.0)) <= 1e-13);
    CHECK(std::abs(clausen2(-1.0) + clausen2(1.0)) <= 1e-15);
    const double h = 1e-5;
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
        CAPTURE(t);
        CHECK(std::abs((clausen2(t + h) - clausen2(t - h)) / (2 * h) + std::log(std::abs(2 * std::sin(t / 2)))) <=
              1e-7);
    }
}

TEST_CASE("log gamma")
{
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(pi)) <= 1e-15);
    for (double x : {0.05, 0.3, 0.875, 1.5, 3.7, 10.3, 55.5, 99.9}) {
        CAPTURE(x);
        const long double ref = log_gamma_oracle(x);
        CHECK(double(std::abs((log_gamma(x) - ref) / ref)) <= 1e-14);
    }
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("harmonic numbers")
{
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(1) == 1.0);
    CHECK(std::abs(harmonic(4) - 25.0 / 12.0) <= 1e-15);
}

TEST_CASE("Gauss-Legendre rules")
{
    const auto r1 = gauss_legendre(1, -1, 1);
    CHECK(r1.nodes.size() == 1);
    CHECK(std::abs(r1.nodes[0]) <= 1e-16);
    CHECK(r1.weights[0] == doctest::Approx(2.0));

    const auto r2 = gauss_legendre(2, -1, 1);
    CHECK(std::abs(r2.nodes[0] + 1 / std::sqrt(3.0)) <= 1e-15);
    CHECK(std::abs(r2.nodes[1] - 1 / std::sqrt(3.0)) <= 1e-15);
    CHECK(std::abs(r2.weights[0] - 1) <= 1e-15);
    CHECK(std::abs(r2.weights[1] - 1) <= 1e-15);

    const auto r64 = gauss_legendre(64, 0, 1);
    CHECK(std::abs(r64.integrate([](double x) { return std::pow(x, 100); }) - 1.0 / 101) * 101 <= 1e-13);

    for (std::size_t n : {3, 17, 48, 120, 400}) {
        CAPTURE(n);
        const double a = -0.5, b = 2.25;
        const auto r = gauss_legendre(n, a, b);
        REQUIRE(r.nodes.size() == n);
        REQUIRE(r.weights.size() == n);
        double sum = 0.0;
        bool ordered = true;
        for (std::size_t i = 0; i < n; ++i) {
            sum += r.weights[i];
            ordered = ordered && r.weights[i] > 0 && r.nodes[i] > a && r.nodes[i] < b;
            if (i > 0)
                ordered = ordered && r.nodes[i] > r.nodes[i - 1];
        }
        CHECK(ordered);
        CHECK(std::abs(sum - (b - a)) / (b - a) <= 1e-13);
        const int deg = int(2 * n - 1);
        const double exact = (std::pow(b, deg + 1) - std::pow(a, deg + 1)) / (deg + 1);
        CHECK(std::abs(r.integrate([&](double x) { return std::pow(x, deg); }) - exact) / std::abs(exact) <= 1e-13);
    }

    auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x); };
    CHECK(std::abs(gauss_legendre(40, 0, 10).integrate(sinc) - gauss_legendre(80, 0, 10).integrate(sinc)) < 1e-13);

    CHECK_THROWS_AS(gauss_legendre(0, 0, 1), ArgumentError);
    CHECK_THROWS_AS(gauss_legendre(4, 1, 1), ArgumentError);
    CHECK_THROWS_AS(gauss_legendre(4, 2, 1), ArgumentError);
    CHECK_THROWS_AS(gauss_legendre(4, 0, std::numeric_limits<double>::infinity()), ArgumentError);
}
