#include "snb/asymptotics.hpp"

#include "snb/errors.hpp"
#include "snb/specfun.hpp"

#include <cmath>

namespace snb {

using constants::euler_gamma;
using constants::pi;

namespace {

constexpr double pi2 = pi * pi;
constexpr double pi4 = pi2 * pi2;

ExpansionReport make_report(std::vector<std::pair<std::string, double>> terms, std::string order,
                            bool pre_asymptotic)
{
    ExpansionReport r;
    r.terms = std::move(terms);
    for (const auto& t : r.terms)
        r.value += t.second;
    r.error_order = std::move(order);
    r.pre_asymptotic = pre_asymptotic;
    return r;
}

void require_positive(double L, const char* fn)
{
    if (!(L > 0) || !std::isfinite(L))
        throw DomainError(std::string(fn) + ": argument must be positive and finite");
}

double var2_closed(double s)
{
    if (s == 0.0)
        return 0.0;
    const double x = 2 * pi * s;
    return (1.0 + euler_gamma + std::log(x)) / pi2 -
           (std::cos(x) + cos_integral(x) + x * (sin_integral(x) - pi / 2)) / pi2;
}

} // namespace

BetaConstants beta_constants(SymmetryClass beta)
{
    BetaConstants c;
    switch (beta) {
    case SymmetryClass::orthogonal:
        c.v_beta = -pi2 / 8;
        c.c1_theory = 5.0 / 24.0 - std::log(2 * pi) / pi2;
        break;
    case SymmetryClass::unitary:
        c.v_beta = 0.0;
        c.c1_theory = 1.0 / 12.0 - std::log(2 * pi) / (2 * pi2);
        break;
    case SymmetryClass::symplectic:
        c.v_beta = std::log(2.0) + pi2 / 8;
        c.c1_theory = 5.0 / 96.0 - std::log(4 * pi) / (4 * pi2);
        break;
    }
    return c;
}

double number_variance_closed(SymmetryClass beta, double s)
{
    if (!(s >= 0) || !std::isfinite(s))
        throw DomainError("number_variance_closed: s must be finite and non-negative");
    if (s == 0.0)
        return 0.0;
    switch (beta) {
    case SymmetryClass::unitary:
        return var2_closed(s);
    case SymmetryClass::orthogonal: {
        const double si = sin_integral(pi * s) / pi;
        return 2.0 * var2_closed(s) + si * (si - 1.0);
    }
    case SymmetryClass::symplectic: {
        const double si = sin_integral(2 * pi * s) / (2 * pi);
        return 0.5 * var2_closed(2.0 * s) + si * si;
    }
    }
    return 0.0;
}

ExpansionReport number_variance_large_L(double L)
{
    require_positive(L, "number_variance_large_L");
    return make_report({{"(log(2 pi L) + gamma + 1)/pi^2", (std::log(2 * pi * L) + euler_gamma + 1) / pi2},
                        {"-1/(4 pi^4 L^2)", -1.0 / (4 * pi4 * L * L)}},
                       "o(L^-2)", L < 5);
}

ExpansionReport delta_theorem1(double L)
{
    require_positive(L, "delta_theorem1");
    const double corr = (std::log(2 * pi * L) + euler_gamma - (pi2 + 9) / 6) / (2 * pi4 * L * L);
    return make_report({{"1/6", 1.0 / 6.0}, {"L^-2 correction", corr}}, "o(L^-2)", L < 5);
}

ExpansionReport delta_conjA(SymmetryClass beta, double L)
{
    require_positive(L, "delta_conjA");
    if (beta == SymmetryClass::unitary)
        throw ArgumentError("delta_conjA: beta = 2 has its own expansion (delta_theorem1)");
    const double corr = beta == SymmetryClass::symplectic ? -1.0 / (8 * pi2 * L) : 0.0;
    return make_report({{"1/6", 1.0 / 6.0}, {"-[beta=4]/(8 pi^2 L)", corr}}, "O(log L/L^2)", L < 5);
}

ExpansionReport ordered_var_asymptotic(SymmetryClass beta, double L)
{
    require_positive(L, "ordered_var_asymptotic");
    const double lg = std::log(2 * pi * L);
    if (beta == SymmetryClass::unitary) {
        return make_report({{"(log(2 pi L) + gamma + 1)/pi^2", (lg + euler_gamma + 1) / pi2},
                            {"-1/6", -1.0 / 6.0},
                            {"L^-2 correction", -(lg + euler_gamma - (pi2 + 6) / 6) / (2 * pi4 * L * L)}},
                           "o(L^-2)", L < 5);
    }
    const double b = beta_value(beta);
    const double v = beta_constants(beta).v_beta;
    return make_report({{"2(log(2 pi L) + v + gamma + 1)/(beta pi^2)", 2 * (lg + v + euler_gamma + 1) / (b * pi2)},
                        {"-1/6", -1.0 / 6.0}},
                       "O(log L/L^2)", L < 5);
}

double autocov_asymptotic_beta2(double l)
{
    require_positive(l, "autocov_asymptotic_beta2");
    return -1.0 / (2 * pi2 * l * l) -
           3.0 / (2 * pi4 * l * l * l * l) * (std::log(2 * pi * l) + euler_gamma - 11.0 / 6.0);
}

ExpansionReport autocov_asymptotic_beta2_report(double l)
{
    require_positive(l, "autocov_asymptotic_beta2_report");
    return make_report({{"-1/(2 pi^2 l^2)", -1.0 / (2 * pi2 * l * l)},
                        {"l^-4 correction", -3.0 / (2 * pi4 * l * l * l * l) *
                                                (std::log(2 * pi * l) + euler_gamma - 11.0 / 6.0)}},
                       "O(l^-6 log l)", l < 5);
}

double dyson_autocov(SymmetryClass beta, double l)
{
    require_positive(l, "dyson_autocov");
    return -1.0 / (beta_value(beta) * pi2 * l * l);
}

J0Values j0_closed(double w)
{
    if (!(w > 0 && w < 0.5))
        throw DomainError("j0_closed: requires 0 < omega_tilde < 1/2");
    const double p = 2 * w * w;
    J0Values out;
    out.exact = std::exp(log_gamma(1 - p) + (p - 1) * std::log(w)) * std::cos(pi * w * w);
    out.asymptotic = 1.0 / w + 2 * w * std::log(w) + 2 * euler_gamma * w;
    return out;
}

std::complex<double> l0_closed(double a, double w)
{
    if (!(a > 0) || !(w > 0))
        throw DomainError("l0_closed: requires a > 0 and omega_tilde > 0");
    const double p = a * a * w * w;
    if (!(p < 1))
        throw DomainError("l0_closed: requires a^2 omega_tilde^2 < 1");
    const double mag = std::exp((p - 1) * std::log(w) + log_gamma(1 - p));
    const std::complex<double> phase = std::polar(1.0, -pi * p / 2);
    return std::complex<double>(0.0, 1.0) * phase * mag;
}

SigmaSums sigma_sums_check(const SpacingCovariances& cov, std::size_t L)
{
    if (cov.beta != SymmetryClass::unitary)
        throw ArgumentError("sigma_sums_check: expansions are available for beta = 2 only");
    if (L == 0 || L > cov.lmax())
        throw ArgumentError("sigma_sums_check: L out of table range");
    SigmaSums out;
    out.sigma0 = cov.dI[0];
    for (std::size_t l = 1; l < L; ++l) {
        out.sigma0 += 2 * cov.dI[l];
        out.sigma1 += 2 * double(l) * cov.dI[l];
    }
    const double Ld = double(L);
    const double lg = std::log(2 * pi * Ld);
    out.asym0 = 1.0 / pi2 + 1.0 / (2 * pi2 * Ld) + (lg + euler_gamma + (pi2 - 9) / 6) / (pi4 * Ld * Ld);
    const double c1 = beta_constants(SymmetryClass::unitary).c1_theory;
    out.asym1 = -std::log(Ld) / pi2 + 2 * (c1 - euler_gamma / (2 * pi2)) + 1.0 / (2 * pi2 * Ld) +
                3.0 / (2 * pi4 * Ld * Ld) * (lg + euler_gamma + (pi2 - 24) / 18);
    return out;
}

} // namespace snb
