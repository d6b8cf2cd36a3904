#pragma once

#include "snb/counting.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace snb {

/// Level-spacing auto-covariances dI[l] = cov(s_k, s_{k+l}).
struct SpacingCovariances {
    SymmetryClass beta = SymmetryClass::unitary;
    std::vector<double> dI;
    std::vector<double> sigma;  // propagated from the gap-integral tail bounds

    std::size_t lmax() const noexcept { return dI.empty() ? 0 : dI.size() - 1; }
};

/// dI[l] = (1 + [l == 0]) I[l] - 1.
SpacingCovariances autocovariances(const GapIntegrals& gaps);

/// var[lambda_L] = L dI[0] + 2 sum_{l=1}^{L-1} (L - l) dI[l]; L = 0 gives 0.
double ordered_variance(const SpacingCovariances& cov, std::size_t L);

/// Uncertainty of ordered_variance from the per-entry sigmas (linear, weights L - |l|).
double ordered_variance_sigma(const SpacingCovariances& cov, std::size_t L);

/// dI[l] rebuilt as the second difference of var[lambda_L] in L (var[lambda_0] = 0).
double autocovariance_from_variances(const SpacingCovariances& cov, std::size_t l);

/// Dyson law -1/(beta pi^2 l^2).
double dyson_term(SymmetryClass beta, double l);

/// sum_{l in Z} dI[|l|] truncated at lmax, optionally adding the Dyson-law
/// remainder -2 sum_{l > lmax} 1/(beta pi^2 l^2).
double pandey_residual(const SpacingCovariances& cov, bool with_dyson_tail);

/// Euler-Maclaurin estimate of sum_{l >= M} l (dI_l + 1/(2 pi^2 l^2)) using the
/// beta = 2 l^{-4} law: integral, half endpoint and first derivative terms.
double tail_beta2(std::size_t M);

/// The summand of tail_beta2: -(3/(2 pi^4 l^3)) (log(2 pi l) + gamma - 11/6).
double beyond_dyson_moment_term(double l);

struct SumRuleReport {
    SymmetryClass beta = SymmetryClass::unitary;
    std::size_t M = 0;
    double head = 0.0;
    double tail = 0.0;
    double c1_numeric = 0.0;
    double c1_theory = 0.0;
    double discrepancy = 0.0;
};

/// C^(1) split at M: head = ((M-1)/2) var[lambda_M] - (M/2) var[lambda_{M-1}]
/// + H_{M-1}/(beta pi^2); tail = tail_beta2(M) for beta = 2 and 0 otherwise.
SumRuleReport c1_sum_rule(const SpacingCovariances& cov, std::size_t M);

/// Model for dI beyond the tabulated range in the Fourier sums below.
enum class TailModel {
    dyson,         // -1/(beta pi^2 l^2), closed form via Cl_2
    beyond_dyson,  // beta = 2 only: adds the l^{-4} correction, summed directly
};

/// int_0^inf E[e^{i omega n(x)}] dx = sum_l z^l I[l] at z = e^{i omega}: the
/// tabulated part sum z^l (I[l] - 1), the Abel-resummed geometric part
/// 1/(1 - z), and the modelled remainder beyond lmax.
std::complex<double> mgf_integral(const SpacingCovariances& cov, double omega,
                                  TailModel tail = TailModel::dyson);
std::complex<double> mgf_integral(const GapIntegrals& gaps, double omega,
                                  TailModel tail = TailModel::dyson);

/// The same remainder model summed term by term up to l = lmax + terms.
std::complex<double> tail_series_direct(SymmetryClass beta, std::size_t lmax, double omega,
                                        TailModel tail, std::size_t terms = 200000);

struct FourierResiduals {
    double cosine = 0.0;  // Re(mgf) - (dI_0/2 + sum cos(l w) dI_l)
    double sine = 0.0;    // Im(mgf) - cot(w/2)/2 - sum sin(l w) dI_l
};

/// Both Fourier-series identities at omega, with the series side summed
/// explicitly (tabulated dI plus the term-by-term remainder model).
FourierResiduals lemma1_residuals(const SpacingCovariances& cov, double omega,
                                  TailModel tail = TailModel::dyson);

/// Interior-disk version: at z = r e^{i omega} (r < 1) the generating
/// function integral converges absolutely, so it can be evaluated straight
/// from the Fredholm determinant det(I - (1 - z) K_x) integrated over x and
/// compared with dI_0/2 + sum z^l dI_l + (1 + z)/(2(1 - z)). Returns |difference|.
double interior_disk_residual(const SpacingCovariances& cov, std::complex<double> z,
                              const ResolutionPolicy& policy = {});

struct SmallOmegaCheck {
    double numeric = 0.0;
    double predicted = 0.0;
    double residual = 0.0;
};

/// Im(mgf) against 1/w + (w/2pi^2) log(w/2pi) - w/2pi^2 (beta = 2).
SmallOmegaCheck lemma2_check(const SpacingCovariances& cov, double omega,
                             TailModel tail = TailModel::beyond_dyson);

/// Re(mgf) against w/4pi + (w^3/8pi^3) log(w/2pi) (beta = 2).
SmallOmegaCheck lemma2_real_check(const SpacingCovariances& cov, double omega,
                                  TailModel tail = TailModel::beyond_dyson);

} // namespace snb
