#pragma once

#include "snb/ordered.hpp"
#include "snb/symmetry.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace snb {

/// A closed form or truncated expansion with its displayed terms kept apart.
struct ExpansionReport {
    double value = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    std::string error_order;
    bool pre_asymptotic = false;
};

/// Per-class constants of the variance expansions and sum rules.
struct BetaConstants {
    double v_beta = 0.0;  // 0 for beta = 2, whose expansion carries no offset
    double c1_theory = 0.0;
    double c0_theory = 0.0;
};

BetaConstants beta_constants(SymmetryClass beta);

/// var_beta[N(s)] in closed form (sine and cosine integrals); s = 0 gives 0.
double number_variance_closed(SymmetryClass beta, double s);

/// Large-L form of var_2[N(L)]: (1/pi^2)(log(2 pi L) + gamma + 1) - 1/(4 pi^4 L^2).
ExpansionReport number_variance_large_L(double L);

/// var_2[N(L)] - var_2[lambda_L] = 1/6 + (log(2 pi L) + gamma - (pi^2 + 9)/6)/(2 pi^4 L^2).
ExpansionReport delta_theorem1(double L);

/// beta = 1, 4: 1/6 - [beta = 4]/(8 pi^2 L).
ExpansionReport delta_conjA(SymmetryClass beta, double L);

/// Large-L expansion of var_beta[lambda_L].
ExpansionReport ordered_var_asymptotic(SymmetryClass beta, double L);

/// Two-term large-l law of dI_l for beta = 2.
double autocov_asymptotic_beta2(double l);
/// The same with its two terms; flagged pre-asymptotic for l < 5.
ExpansionReport autocov_asymptotic_beta2_report(double l);

/// -1/(beta pi^2 l^2).
double dyson_autocov(SymmetryClass beta, double l);

struct J0Values {
    double exact = 0.0;
    double asymptotic = 0.0;
};

/// int_0^inf sin(w x) x^{-2 w^2} dx = Gamma(1 - 2w^2) cos(pi w^2) w^{2w^2 - 1},
/// and its small-w form 1/w + 2 w log w + 2 gamma w; 0 < w < 1/2.
J0Values j0_closed(double omega_tilde);

/// int_0^inf e^{i w x} x^{-a^2 w^2} dx = i e^{-i pi a^2 w^2 / 2} w^{a^2 w^2 - 1} Gamma(1 - a^2 w^2).
std::complex<double> l0_closed(double a, double omega_tilde);

struct SigmaSums {
    double sigma0 = 0.0;  // sum_{|l| <= L-1} dI_|l|
    double sigma1 = 0.0;  // sum_{|l| <= L-1} |l| dI_|l|
    double asym0 = 0.0;   // large-L form of L sigma0
    double asym1 = 0.0;   // large-L form of sigma1
};

/// beta = 2 only; 1 <= L <= lmax.
SigmaSums sigma_sums_check(const SpacingCovariances& cov, std::size_t L);

} // namespace snb
