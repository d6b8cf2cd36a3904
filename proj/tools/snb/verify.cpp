#include "cli.hpp"

#include "snb/asymptotics.hpp"
#include "snb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <numeric>

namespace snb::cli {

namespace {

using constants::euler_gamma;
using constants::pi;

struct Suite {
    std::string name;
    std::vector<CheckResult> results;

    void check(const std::string& what, double residual, double tol, std::string note = {})
    {
        const bool ok = std::isfinite(residual) && std::abs(residual) <= tol;
        results.push_back({name, what, residual, tol, ok, std::move(note)});
    }

    void check_bool(const std::string& what, bool ok, std::string note = {})
    {
        results.push_back({name, what, ok ? 0.0 : 1.0, 0.0, ok, std::move(note)});
    }

    // Runs a group of checks; an exception turns into one failed entry.
    void guarded(const std::string& what, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            results.push_back({name, what, std::numeric_limits<double>::infinity(), 0.0, false, e.what()});
        }
    }
};

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

void suite_specfun(Suite& s)
{
    s.guarded("special functions", [&] {
        double si = 0.0, ci = 0.0, term = 1.0;
        for (int k = 0; k < 30; ++k) {
            // term = x^{2k}/(2k)! at x = 1
            if (k > 0)
                term /= double(2 * k - 1) * double(2 * k);
            si += (k % 2 ? -1.0 : 1.0) * term / (double(2 * k + 1) * double(2 * k + 1));
            if (k > 0)
                ci += (k % 2 ? -1.0 : 1.0) * term / double(2 * k);
        }
        ci += euler_gamma;
        s.check("Si(1) vs Taylor series", sin_integral(1.0) - si, 1e-14);
        s.check("Ci(1) vs Taylor series", cos_integral(1.0) - ci, 1e-14);
        s.check("Si(1e8) -> pi/2", sin_integral(1e8) - pi / 2, 1e-7);
        s.check("Ci(1e8) -> 0", cos_integral(1e8), 1e-7);

        double dsi = 0.0, dci = 0.0;
        for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double h = 1e-5;
            dsi = std::max(dsi, std::abs((sin_integral(x + h) - sin_integral(x - h)) / (2 * h) - std::sin(x) / x));
            dci = std::max(dci, std::abs((cos_integral(x + h) - cos_integral(x - h)) / (2 * h) - std::cos(x) / x));
        }
        s.check("Si' = sin(x)/x", dsi, 1e-8);
        s.check("Ci' = cos(x)/x", dci, 1e-8);

        const double catalan = 0.91596559417721901505;
        s.check("Cl2(pi/2) = Catalan", clausen2(pi / 2) - catalan, 1e-13);
        s.check("Cl2(pi) = 0", clausen2(pi), 1e-13);
        double dcl = 0.0;
        for (double t : {0.5, 1.0, 2.0, 3.0}) {
            const double h = 1e-5;
            dcl = std::max(dcl, std::abs((clausen2(t + h) - clausen2(t - h)) / (2 * h) +
                                         std::log(std::abs(2 * std::sin(t / 2)))));
        }
        s.check("Cl2' = -log|2 sin(t/2)|", dcl, 1e-7);

        // Gamma(0.875) from Stirling at 20.875 and the downward recursion, in
        // extended precision: the recursion cancels about three digits.
        const long double x = 0.875L, y = x + 20;
        long double stirling = (y - 0.5L) * std::log(y) - y + 0.5L * std::log(2 * std::acos(-1.0L)) + 1 / (12 * y) -
                               1 / (360 * y * y * y) + 1 / (1260 * std::pow(y, 5)) - 1 / (1680 * std::pow(y, 7)) +
                               1 / (1188 * std::pow(y, 9));
        for (int k = 0; k < 20; ++k)
            stirling -= std::log(x + k);
        s.check("log Gamma(0.875) vs recursion", double((log_gamma(double(x)) - stirling) / std::abs(stirling)), 1e-14);
        s.check("log Gamma(1) = 0", log_gamma(1.0), 1e-15);
        s.check("H_4 = 25/12", harmonic(4) - 25.0 / 12.0, 1e-15);

        const QuadratureRule g = gauss_legendre(64, 0.0, 1.0);
        s.check("GL64 x^100 on (0,1)", (g.integrate([](double t) { return std::pow(t, 100); }) - 1.0 / 101) * 101,
                1e-13);
        auto sinc = [](double t) { return sine_kernel(t); };
        s.check("GL order doubling 40 -> 80, sinc on (0,10)",
                gauss_legendre(40, 0, 10).integrate(sinc) - gauss_legendre(80, 0, 10).integrate(sinc), 1e-13);
    });
}

void suite_fredholm(Suite& s, const RunConfig& cfg)
{
    const ResolutionPolicy policy = cfg.policy();
    s.guarded("contour extraction", [&] {
        DeterminantGrid grid;
        grid.radius = 1.0;
        const std::size_t n = 128;
        for (std::size_t k = 0; k < n; ++k) {
            const complex z = 1.0 + std::polar(1.0, 2 * pi * double(k) / double(n));
            grid.samples.emplace_back(z, std::exp(-z));
        }
        const auto ex = contour_derivatives(grid, 10);
        double err = 0.0, fact = 1.0;
        for (std::size_t l = 0; l <= 10; ++l) {
            if (l > 0)
                fact *= double(l);
            err = std::max(err, std::abs(ex.coefficients[l] - std::exp(-1.0) / fact));
        }
        s.check("exp(-z) coefficients e^-1/l!", err, 1e-12);
    });
    s.guarded("determinants", [&] {
        const KernelSpec k{KernelVariant::full_sine, 1.0};
        const QuadratureRule r60 = gauss_legendre(60, 0.0, 1.0);
        const QuadratureRule r120 = gauss_legendre(120, 0.0, 1.0);
        const double lu = nystrom_determinant(k, 1.0, r60).real();
        double prod = 1.0;
        for (double mu : nystrom_eigenvalues(k, r120))
            prod *= 1.0 - mu;
        s.check("LU det vs eigenvalue product (s = 1, order 60 vs 120)", (lu - prod) / prod, 1e-12);
        s.check("det at z = 0 is 1", std::abs(nystrom_determinant(k, 0.0, r60) - 1.0), 0.0);
        const KernelSpec k3{KernelVariant::full_sine, 3.0};
        const QuadratureRule r3 = gauss_legendre(policy.order_for(3.0), 0.0, 3.0);
        const complex zs(0.3, 0.7);
        const complex a = nystrom_determinant(k3, zs, r3, WeightForm::symmetric);
        const complex b = nystrom_determinant(k3, zs, r3, WeightForm::right);
        s.check("symmetric vs right weighting", std::abs(a - b) / std::abs(a), 1e-12);
    });
    s.guarded("order doubling", [&] {
        double worst = 0.0;
        for (double sv : {1.0, 5.0, 10.0, 20.0}) {
            const std::size_t lmax = lmax_for(sv);
            ResolutionPolicy p1 = policy, p2 = policy;
            const std::size_t m = policy.order_for(sv);
            p1.fixed_order = m;
            p2.fixed_order = 2 * m;
            const auto a = counting_probabilities(SymmetryClass::unitary, sv, lmax, p1);
            const auto b = counting_probabilities(SymmetryClass::unitary, sv, lmax, p2);
            for (std::size_t l = 0; l <= lmax; ++l)
                worst = std::max(worst, std::abs(a.values[l] - b.values[l]));
        }
        s.check("order m vs 2m, s <= 20", worst, 1e-10);
    });
    s.guarded("contour radius", [&] {
        double worst = 0.0;
        for (double sv : {1.0, 2.0, 5.0}) {
            const std::size_t lmax = lmax_for(sv);
            ResolutionPolicy p1 = policy, p2 = policy;
            p1.contour_radius = 0.5;
            p2.contour_radius = 1.0;
            const auto a = counting_probabilities(SymmetryClass::unitary, sv, lmax, p1);
            const auto b = counting_probabilities(SymmetryClass::unitary, sv, lmax, p2);
            for (std::size_t l = 0; l <= lmax; ++l)
                worst = std::max(worst, std::abs(a.values[l] - b.values[l]));
        }
        s.check("radius 0.5 vs 1.0", worst, 1e-10);
    });
    s.guarded("even/odd factorisation", [&] {
        double worst = 0.0;
        for (double sv : {1.0, 3.0, 6.0}) {
            const double h = sv / 2;
            const QuadratureRule rf = gauss_legendre(policy.order_for(sv), 0.0, sv);
            const QuadratureRule rh = gauss_legendre(policy.order_for(h), 0.0, h);
            const double full = nystrom_determinant({KernelVariant::full_sine, sv}, 1.0, rf).real();
            const double ev = nystrom_determinant({KernelVariant::even_sine, h}, 1.0, rh).real();
            const double od = nystrom_determinant({KernelVariant::odd_sine, h}, 1.0, rh).real();
            worst = std::max(worst, std::abs(full - ev * od));
        }
        s.check("E2(0;s) = E+(0) E-(0)", worst, 1e-10);
    });
}

void suite_counting(Suite& s, const RunConfig& cfg)
{
    const ResolutionPolicy policy = cfg.policy();
    const std::vector<double> grid{0.5, 1.0, 2.0, 5.0, 10.0};
    for (SymmetryClass beta : {SymmetryClass::unitary, SymmetryClass::orthogonal, SymmetryClass::symplectic}) {
        const std::string b = "beta=" + std::to_string(beta_value(beta));
        s.guarded(b + " table", [&] {
            // Tolerances are checked here, so the build itself must not reject columns.
            ResolutionPolicy relaxed = policy;
            relaxed.defect_tolerance = std::numeric_limits<double>::infinity();
            relaxed.residue_tolerance = std::numeric_limits<double>::infinity();
            const std::size_t lmax = lmax_for(grid.back());
            double norm = 0.0, mean = 0.0, var = 0.0;
            for (double sv : grid) {
                const auto cp = counting_probabilities(beta, sv, lmax, relaxed);
                double m0 = 0, m1 = 0, m2 = 0;
                for (std::size_t l = 0; l <= lmax; ++l) {
                    m0 += cp.values[l];
                    m1 += double(l) * cp.values[l];
                    m2 += (double(l) - sv) * (double(l) - sv) * cp.values[l];
                }
                norm = std::max(norm, std::abs(1.0 - m0));
                mean = std::max(mean, std::abs(sv - m1));
                var = std::max(var, std::abs(m2 - number_variance_closed(beta, sv)));
            }
            s.check(b + " normalisation", norm, 1e-8);
            s.check(b + " mean identity", mean, 1e-8);
            s.check(b + " closed-form number variance", var, beta == SymmetryClass::unitary ? 1e-9 : 1e-8);
        });
    }
    s.guarded("cache round trip", [&] {
        const CountingTable t = build_table(SymmetryClass::unitary, {0.0, 0.5, 1.0, 2.5}, 12, policy);
        const auto dir = std::filesystem::temp_directory_path() / "snb-verify-roundtrip";
        std::filesystem::create_directories(dir);
        const auto file = dir / table_cache_name(t.beta(), t.s_grid(), t.lmax(), policy);
        save_table(t, file);
        const CountingTable back = load_table(file);
        std::filesystem::remove(file);
        s.check_bool("save/load is bit-identical", back == t);
        bool decreasing = true;
        for (std::size_t j = 1; j < t.columns(); ++j)
            decreasing = decreasing && t.at(0, j) < t.at(0, j - 1);
        s.check_bool("E(0; s) strictly decreasing", decreasing);
    });
    s.guarded("spacing densities", [&] {
        const double h = cfg.s_step;
        const std::size_t n = std::size_t(std::llround(8.0 / h));
        std::vector<double> g(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            g[i] = double(i) * h;
        const CountingTable t = build_table(SymmetryClass::unitary, g, lmax_for(8.0), policy, cfg.cache_dir);
        for (std::size_t k : {1, 2}) {
            double m0 = 0, m1 = 0, neg = 0;
            for (std::size_t i = 2; i + 2 <= n; ++i) {
                const double p = spacing_density(k, g[i], t);
                const double w = (i == 2 || i + 2 == n) ? h / 2 : h;
                m0 += w * p;
                m1 += w * g[i] * p;
                neg = std::min(neg, p);
            }
            const std::string tag = "p2(" + std::to_string(k) + ";s)";
            s.check(tag + " normalisation", m0 - 1.0, 1e-4);
            s.check(tag + " mean", m1 - double(k), 1e-4);
            s.check(tag + " non-negative", neg, 1e-6);
        }
        for (double sv : {0.5, 3.0})
            s.check("two-point function at s = " + std::to_string(sv).substr(0, 3), two_point_consistency(sv, t), 1e-4);
    });
    s.guarded("two-point reference", [&] {
        // var[N(s)] = s - 2 int_0^s (s - t)(1 - R2(t)) dt against the closed form.
        double worst = 0.0;
        for (double sv : {0.5, 2.0, 5.0}) {
            const QuadratureRule r = gauss_legendre(80, 0.0, sv);
            const double v = sv - 2 * r.integrate([&](double t) { return (sv - t) * (1 - two_point_function_beta2(t)); });
            worst = std::max(worst, std::abs(v - number_variance_closed(SymmetryClass::unitary, sv)));
        }
        s.check("R2 reproduces closed-form variance", worst, 1e-12);
    });
}

void suite_sumrules(Suite& s, const RunConfig& cfg)
{
    struct Row {
        SymmetryClass beta;
        std::size_t lmax;
        std::size_t M;
        double c1_tol;
        double pandey_tol;
        std::vector<std::pair<std::size_t, double>> table1;
        double table1_tol;
    };
    const std::vector<Row> rows{
        {SymmetryClass::unitary, 80, 80, 1e-8, 1e-6,
         {{2, 0.16669386}, {5, 0.16684974}, {10, 0.16674765}, {20, 0.16669577}}, 1e-6},
        {SymmetryClass::orthogonal, 100, 100, 5e-5, 1e-5, {{10, 0.16700836}}, 1e-5},
        {SymmetryClass::symplectic, 50, 50, 1e-5, 1e-5, {{5, 0.16422413}}, 1e-5},
    };
    for (const Row& row : rows) {
        const std::string b = "beta=" + std::to_string(beta_value(row.beta));
        s.guarded(b + " sum rules", [&] {
            const std::size_t lmax = cfg.lmax.value_or(row.lmax);
            const GapIntegrals gaps = gap_integrals(row.beta, lmax, cfg.policy(), {}, cfg.cache_dir);
            const SpacingCovariances cov = autocovariances(gaps);

            for (auto [L, ref] : row.table1)
                s.check(b + " Delta(" + std::to_string(L) + ") vs reference",
                        number_variance_closed(row.beta, double(L)) - ordered_variance(cov, L) - ref, row.table1_tol);
            if (row.beta == SymmetryClass::symplectic) {
                const double ds = number_variance_closed(row.beta, 5.0) - ordered_variance(cov, 5) +
                                  1.0 / (8 * pi * pi * 5.0);
                s.check(b + " Delta*(5) vs reference", ds - 0.16675716, 1e-5);
            }

            SpacingCovariances c40 = cov;
            c40.dI.resize(std::min<std::size_t>(41, cov.dI.size()));
            c40.sigma.resize(c40.dI.size());
            s.check(b + " Pandey residual, lmax = 40, Dyson tail", pandey_residual(c40, true), row.pandey_tol);

            const SumRuleReport r = c1_sum_rule(cov, std::min(row.M, cov.lmax()));
            s.check(b + " C1 at M = " + std::to_string(r.M), r.c1_numeric - r.c1_theory, row.c1_tol);

            std::vector<double> diff;
            for (std::size_t l = 1; l + 1 <= cov.lmax(); ++l)
                diff.push_back(autocovariance_from_variances(cov, l) - cov.dI[l]);
            s.check(b + " dI from variances vs from integrals", max_abs(diff), 1e-9);

            bool tail_negative = true;
            for (std::size_t l = 3; l <= cov.lmax(); ++l)
                tail_negative = tail_negative && cov.dI[l] < 0;
            s.check_bool(b + " dI_0 > 0 and dI_l < 0 for l >= 3", cov.dI[0] > 0 && tail_negative);
            const double lm = double(cov.lmax());
            s.check(b + " Dyson decay at lmax", cov.dI.back() * beta_value(row.beta) * pi * pi * lm * lm + 1.0, 0.25);

            if (row.beta == SymmetryClass::unitary) {
                const SigmaSums ss = sigma_sums_check(cov, 40);
                s.check(b + " L sigma0 - sigma1 = var[lambda_L], L = 40",
                        (40 * ss.sigma0 - ss.sigma1 - ordered_variance(cov, 40)) / ordered_variance(cov, 40), 1e-13);
                for (std::size_t L : {10, 40})
                    s.check(b + " var[lambda_" + std::to_string(L) + "] vs large-L expansion",
                            ordered_variance(cov, L) - ordered_var_asymptotic(row.beta, double(L)).value,
                            L == 10 ? 5e-6 : 5e-7);
            }
        });
    }
}

void suite_lemmas(Suite& s, const RunConfig& cfg)
{
    s.guarded("beta=2 lemmas", [&] {
        const std::size_t lmax = cfg.lmax.value_or(80);
        const SpacingCovariances cov =
            autocovariances(gap_integrals(SymmetryClass::unitary, lmax, cfg.policy(), {}, cfg.cache_dir));
        for (double w : {0.5, 1.0, 2.0, 3.0}) {
            const FourierResiduals r = lemma1_residuals(cov, w);
            const std::string tag = "w=" + std::to_string(w).substr(0, 3);
            s.check("cosine series " + tag, r.cosine, 1e-6);
            s.check("sine series " + tag, r.sine, 1e-6);
        }
        const FourierResiduals rp = lemma1_residuals(cov, pi);
        s.check("cosine series w=pi", rp.cosine, 1e-8);
        s.check("sine series w=pi", rp.sine, 1e-8);
        s.check("interior disk z = 0.5 e^i", interior_disk_residual(cov, std::polar(0.5, 1.0), cfg.policy()), 1e-9);

        double prev_im = 0.0, prev_re = 0.0;
        for (double w : {0.4, 0.2, 0.1, 0.05}) {
            const SmallOmegaCheck im = lemma2_check(cov, w);
            const SmallOmegaCheck re = lemma2_real_check(cov, w);
            if (prev_im != 0.0) {
                const std::string tag = " " + std::to_string(2 * w).substr(0, 4) + " -> " + std::to_string(w).substr(0, 4);
                // A ratio check passes when ratio <= bound.
                const double ri = std::abs(im.residual / prev_im);
                const double rr = std::abs(re.residual / prev_re);
                s.check("imaginary part residual halving" + tag, std::max(0.0, ri - 0.75), 0.0,
                        "ratio " + std::to_string(ri));
                s.check("real part residual halving" + tag, std::max(0.0, rr - 0.2), 0.0,
                        "ratio " + std::to_string(rr));
            }
            prev_im = im.residual;
            prev_re = re.residual;
        }
        s.check("Im L0(sqrt2, 0.2) = J0(0.2)", l0_closed(std::sqrt(2.0), 0.2).imag() - j0_closed(0.2).exact, 1e-13);
    });
}

} // namespace

const std::vector<std::string>& verify_suites()
{
    static const std::vector<std::string> names{"specfun", "fredholm", "counting", "sumrules", "lemmas"};
    return names;
}

std::vector<CheckResult> cmd_verify(const RunConfig& cfg, const std::string& suite)
{
    std::vector<std::string> run;
    if (suite == "all")
        run = verify_suites();
    else if (std::find(verify_suites().begin(), verify_suites().end(), suite) != verify_suites().end())
        run = {suite};
    else
        throw ArgumentError("verify: unknown suite '" + suite + "'");

    std::vector<CheckResult> out;
    for (const auto& name : run) {
        Suite s{name, {}};
        if (name == "specfun")
            suite_specfun(s);
        else if (name == "fredholm")
            suite_fredholm(s, cfg);
        else if (name == "counting")
            suite_counting(s, cfg);
        else if (name == "sumrules")
            suite_sumrules(s, cfg);
        else
            suite_lemmas(s, cfg);
        out.insert(out.end(), s.results.begin(), s.results.end());
    }
    return out;
}

} // namespace snb::cli
