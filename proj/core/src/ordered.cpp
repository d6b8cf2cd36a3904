#include "snb/ordered.hpp"

#include "snb/asymptotics.hpp"
#include "snb/errors.hpp"
#include "snb/parallel.hpp"
#include "snb/specfun.hpp"

#include <cmath>
#include <string>

namespace snb {

using constants::euler_gamma;
using constants::pi;

namespace {

constexpr double pi2 = pi * pi;
constexpr double pi4 = pi2 * pi2;

void require_omega(double omega, const char* fn)
{
    if (!(omega > 0 && omega < 2 * pi))
        throw DomainError(std::string(fn) + ": omega must lie in (0, 2 pi)");
}

// sum_{l > n} 1/l^2, asymptotic Euler-Maclaurin form; exact partial sums below 10.
double inverse_square_tail(std::size_t n)
{
    if (n < 10) {
        double head = 0.0;
        for (std::size_t l = n + 1; l <= 10; ++l)
            head += 1.0 / (double(l) * double(l));
        return head + inverse_square_tail(10);
    }
    const double x = double(n);
    return 1.0 / x - 1.0 / (2 * x * x) + 1.0 / (6 * x * x * x) - 1.0 / (30 * std::pow(x, 5)) +
           1.0 / (42 * std::pow(x, 7));
}

// The l^{-4} part of the beta = 2 law, without the Dyson term.
double beyond_dyson_dI(double l)
{
    return -3.0 / (2 * pi4 * l * l * l * l) * (std::log(2 * pi * l) + euler_gamma - 11.0 / 6.0);
}

// Dyson remainder sum_{l > n} e^{i l w} (-1/(beta pi^2 l^2)) via the closed forms
// sum cos(l w)/l^2 = pi^2/6 - pi w/2 + w^2/4 and sum sin(l w)/l^2 = Cl_2(w).
complex dyson_remainder(SymmetryClass beta, std::size_t n, double omega)
{
    double c = pi2 / 6 - pi * omega / 2 + omega * omega / 4;
    double s = clausen2(omega);
    for (std::size_t l = 1; l <= n; ++l) {
        const double ld = double(l);
        c -= std::cos(ld * omega) / (ld * ld);
        s -= std::sin(ld * omega) / (ld * ld);
    }
    return -complex(c, s) / (beta_value(beta) * pi2);
}

complex beyond_dyson_remainder(std::size_t n, double omega, std::size_t terms)
{
    complex acc = 0.0;
    // Summed from the far end so the small terms accumulate first.
    for (std::size_t k = terms; k >= 1; --k) {
        const double l = double(n + k);
        acc += std::polar(beyond_dyson_dI(l), l * omega);
    }
    return acc;
}

complex remainder(SymmetryClass beta, std::size_t n, double omega, TailModel tail)
{
    complex r = dyson_remainder(beta, n, omega);
    if (tail == TailModel::beyond_dyson) {
        if (beta != SymmetryClass::unitary)
            throw ArgumentError("beyond-Dyson tail model is available for beta = 2 only");
        r += beyond_dyson_remainder(n, omega, 200000);
    }
    return r;
}

// dI_0/2 + sum_{l=1}^{lmax} z^l dI_l
complex tabulated_series(const SpacingCovariances& cov, complex z)
{
    complex acc = 0.0;
    complex zl = 1.0;
    std::vector<complex> powers(cov.dI.size());
    for (std::size_t l = 0; l < cov.dI.size(); ++l) {
        powers[l] = zl;
        zl *= z;
    }
    for (std::size_t l = cov.dI.size(); l-- > 1;)
        acc += powers[l] * cov.dI[l];
    return acc + 0.5 * cov.dI[0];
}

complex tabulated_series(const SpacingCovariances& cov, double omega)
{
    complex acc = 0.0;
    for (std::size_t l = cov.dI.size(); l-- > 1;)
        acc += std::polar(cov.dI[l], double(l) * omega);
    return acc + 0.5 * cov.dI[0];
}

void require_covariances(const SpacingCovariances& cov, const char* fn)
{
    if (cov.dI.empty())
        throw ArgumentError(std::string(fn) + ": empty covariance table");
}

} // namespace

SpacingCovariances autocovariances(const GapIntegrals& gaps)
{
    if (gaps.I.empty() || gaps.I.size() != gaps.tail_bound.size())
        throw ArgumentError("autocovariances: inconsistent gap integrals");
    SpacingCovariances cov;
    cov.beta = gaps.beta;
    cov.dI.resize(gaps.I.size());
    cov.sigma.resize(gaps.I.size());
    for (std::size_t l = 0; l < gaps.I.size(); ++l) {
        const double f = l == 0 ? 2.0 : 1.0;
        cov.dI[l] = f * gaps.I[l] - 1.0;
        cov.sigma[l] = f * gaps.tail_bound[l];
    }
    return cov;
}

double ordered_variance(const SpacingCovariances& cov, std::size_t L)
{
    require_covariances(cov, "ordered_variance");
    if (L > cov.lmax())
        throw ArgumentError("ordered_variance: L = " + std::to_string(L) + " exceeds lmax = " +
                            std::to_string(cov.lmax()));
    if (L == 0)
        return 0.0;
    double acc = 0.0;
    for (std::size_t l = L - 1; l >= 1; --l)
        acc += 2.0 * double(L - l) * cov.dI[l];
    return acc + double(L) * cov.dI[0];
}

double ordered_variance_sigma(const SpacingCovariances& cov, std::size_t L)
{
    require_covariances(cov, "ordered_variance_sigma");
    if (L > cov.lmax())
        throw ArgumentError("ordered_variance_sigma: L exceeds lmax");
    if (L == 0 || cov.sigma.empty())
        return 0.0;
    double acc = double(L) * cov.sigma[0];
    for (std::size_t l = 1; l < L; ++l)
        acc += 2.0 * double(L - l) * cov.sigma[l];
    return acc;
}

double autocovariance_from_variances(const SpacingCovariances& cov, std::size_t l)
{
    if (l == 0 || l + 1 > cov.lmax())
        throw ArgumentError("autocovariance_from_variances: need 1 <= l <= lmax - 1");
    return 0.5 * (ordered_variance(cov, l + 1) - 2.0 * ordered_variance(cov, l) +
                  ordered_variance(cov, l - 1));
}

double dyson_term(SymmetryClass beta, double l) { return -1.0 / (beta_value(beta) * pi2 * l * l); }

double pandey_residual(const SpacingCovariances& cov, bool with_dyson_tail)
{
    require_covariances(cov, "pandey_residual");
    double acc = 0.0;
    for (std::size_t l = cov.lmax(); l >= 1; --l)
        acc += 2.0 * cov.dI[l];
    acc += cov.dI[0];
    if (with_dyson_tail)
        acc -= 2.0 * inverse_square_tail(cov.lmax()) / (beta_value(cov.beta) * pi2);
    return acc;
}

double beyond_dyson_moment_term(double l)
{
    return -3.0 / (2 * pi4 * l * l * l) * (std::log(2 * pi * l) + euler_gamma - 11.0 / 6.0);
}

double tail_beta2(std::size_t M)
{
    if (M < 10)
        throw ArgumentError("tail_beta2: M must be at least 10");
    const double x = double(M);
    const double c = euler_gamma - 11.0 / 6.0;
    const double lg = std::log(2 * pi * x) + c;
    const double k = -3.0 / (2 * pi4);
    const double integral = k * (lg + 0.5) / (2 * x * x);
    const double f = beyond_dyson_moment_term(x);
    const double df = k * (1.0 - 3.0 * lg) / (x * x * x * x);
    return integral + 0.5 * f - df / 12.0;
}

SumRuleReport c1_sum_rule(const SpacingCovariances& cov, std::size_t M)
{
    require_covariances(cov, "c1_sum_rule");
    if (M < 2 || M > cov.lmax())
        throw ArgumentError("c1_sum_rule: need 2 <= M <= lmax");
    SumRuleReport r;
    r.beta = cov.beta;
    r.M = M;
    const double b = beta_value(cov.beta);
    const double Md = double(M);
    r.head = 0.5 * (Md - 1) * ordered_variance(cov, M) - 0.5 * Md * ordered_variance(cov, M - 1) +
             harmonic(M - 1) / (b * pi2);
    r.tail = cov.beta == SymmetryClass::unitary && M >= 10 ? tail_beta2(M) : 0.0;
    r.c1_numeric = r.head + r.tail;
    r.c1_theory = beta_constants(cov.beta).c1_theory;
    r.discrepancy = std::abs(r.c1_numeric - r.c1_theory);
    return r;
}

complex mgf_integral(const SpacingCovariances& cov, double omega, TailModel tail)
{
    require_omega(omega, "mgf_integral");
    require_covariances(cov, "mgf_integral");
    const complex half_cot(0.0, 0.5 / std::tan(omega / 2));
    return tabulated_series(cov, omega) + half_cot + remainder(cov.beta, cov.lmax(), omega, tail);
}

complex mgf_integral(const GapIntegrals& gaps, double omega, TailModel tail)
{
    return mgf_integral(autocovariances(gaps), omega, tail);
}

complex tail_series_direct(SymmetryClass beta, std::size_t lmax, double omega, TailModel tail,
                           std::size_t terms)
{
    require_omega(omega, "tail_series_direct");
    if (tail == TailModel::beyond_dyson && beta != SymmetryClass::unitary)
        throw ArgumentError("tail_series_direct: beyond-Dyson model is available for beta = 2 only");
    complex acc = 0.0;
    for (std::size_t k = terms; k >= 1; --k) {
        const double l = double(lmax + k);
        double v = dyson_term(beta, l);
        if (tail == TailModel::beyond_dyson)
            v += beyond_dyson_dI(l);
        acc += std::polar(v, l * omega);
    }
    return acc;
}

FourierResiduals lemma1_residuals(const SpacingCovariances& cov, double omega, TailModel tail)
{
    const complex m = mgf_integral(cov, omega, tail);
    double cs = 0.5 * cov.dI[0];
    double sn = 0.0;
    for (std::size_t l = cov.lmax(); l >= 1; --l) {
        cs += std::cos(double(l) * omega) * cov.dI[l];
        sn += std::sin(double(l) * omega) * cov.dI[l];
    }
    const complex rest = tail_series_direct(cov.beta, cov.lmax(), omega, tail);
    FourierResiduals r;
    r.cosine = m.real() - (cs + rest.real());
    r.sine = m.imag() - 0.5 / std::tan(omega / 2) - (sn + rest.imag());
    return r;
}

double interior_disk_residual(const SpacingCovariances& cov, complex z, const ResolutionPolicy& policy)
{
    require_covariances(cov, "interior_disk_residual");
    const double r = std::abs(z);
    if (!(r > 0 && r < 0.9))
        throw ArgumentError("interior_disk_residual: need 0 < |z| < 0.9");
    policy.validate();

    auto det_at = [&](KernelVariant variant, double len, complex w) {
        if (len == 0.0)
            return complex(1.0);
        KernelSpec k{variant, len};
        const QuadratureRule rule = gauss_legendre(policy.order_for(len), 0.0, len);
        complex d = 1.0;
        for (double mu : nystrom_eigenvalues(k, rule))
            d *= 1.0 - (1.0 - w) * mu;
        return d;
    };
    // E[z^{n(x)}] over an interval of length x.
    auto generating = [&](double x) -> complex {
        switch (cov.beta) {
        case SymmetryClass::unitary:
            return det_at(KernelVariant::full_sine, x, z);
        case SymmetryClass::symplectic:
            return 0.5 * (det_at(KernelVariant::even_sine, x, z) + det_at(KernelVariant::odd_sine, x, z));
        case SymmetryClass::orthogonal: {
            const complex w = z * z;
            const complex fp = det_at(KernelVariant::even_sine, x / 2, w);
            const complex fm = det_at(KernelVariant::odd_sine, x / 2, w);
            return fp + (1.0 - z) * (fp - fm) / (z - 1.0 / z);
        }
        }
        return 0.0;
    };

    const double upper = std::ceil(std::log(1e-16) / std::log(r)) + 8.0;
    const std::size_t panels = std::size_t(upper);
    const std::vector<complex> parts = parallel_map(panels, [&](std::size_t p) {
        const QuadratureRule rule = gauss_legendre(20, double(p), double(p + 1));
        complex acc = 0.0;
        for (std::size_t i = 0; i < rule.order; ++i)
            acc += rule.weights[i] * generating(rule.nodes[i]);
        return acc;
    });
    complex integral = 0.0;
    for (std::size_t p = panels; p-- > 0;)
        integral += parts[p];

    const complex series = tabulated_series(cov, z) + (1.0 + z) / (2.0 * (1.0 - z));
    return std::abs(integral - series);
}

SmallOmegaCheck lemma2_check(const SpacingCovariances& cov, double omega, TailModel tail)
{
    if (cov.beta != SymmetryClass::unitary)
        throw ArgumentError("lemma2_check: beta = 2 only");
    if (!(omega > 0 && omega <= 0.5))
        throw DomainError("lemma2_check: need 0 < omega <= 0.5");
    SmallOmegaCheck c;
    c.numeric = mgf_integral(cov, omega, tail).imag();
    c.predicted = 1.0 / omega + omega / (2 * pi2) * std::log(omega / (2 * pi)) - omega / (2 * pi2);
    c.residual = c.numeric - c.predicted;
    return c;
}

SmallOmegaCheck lemma2_real_check(const SpacingCovariances& cov, double omega, TailModel tail)
{
    if (cov.beta != SymmetryClass::unitary)
        throw ArgumentError("lemma2_real_check: beta = 2 only");
    if (!(omega > 0 && omega <= 0.5))
        throw DomainError("lemma2_real_check: need 0 < omega <= 0.5");
    SmallOmegaCheck c;
    c.numeric = mgf_integral(cov, omega, tail).real();
    c.predicted = omega / (4 * pi) + omega * omega * omega / (8 * pi2 * pi) * std::log(omega / (2 * pi));
    c.residual = c.numeric - c.predicted;
    return c;
}

} // namespace snb
