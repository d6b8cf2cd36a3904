// One PASS/FAIL line per acceptance criterion. Exit status 0 iff every
// selected criterion passes.

#include "snb/asymptotics.hpp"
#include "snb/counting.hpp"
#include "snb/errors.hpp"
#include "snb/ordered.hpp"
#include "snb/specfun.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace snb;
using constants::pi;
namespace fs = std::filesystem;

namespace {

constexpr double pi2 = pi * pi;

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Context {
    fs::path cache;
    std::string snb_exe;
    std::map<SymmetryClass, SpacingCovariances> covs;

    const SpacingCovariances& cov(SymmetryClass b)
    {
        auto it = covs.find(b);
        if (it == covs.end()) {
            const std::size_t lmax = b == SymmetryClass::orthogonal ? 100 : b == SymmetryClass::symplectic ? 50 : 80;
            it = covs.emplace(b, autocovariances(gap_integrals(b, lmax, {}, {}, cache))).first;
        }
        return it->second;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double delta_numeric(Context& ctx, SymmetryClass b, std::size_t L)
{
    return number_variance_closed(b, double(L)) - ordered_variance(ctx.cov(b), L);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]) / double(n);
        my += std::log(std::abs(y[i])) / double(n);
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        num += dx * (std::log(std::abs(y[i])) - my);
        den += dx * dx;
    }
    return num / den;
}

Verdict criterion1(Context&)
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst2 = 0.0, worst14 = 0.0;
    for (SymmetryClass b : {SymmetryClass::orthogonal, SymmetryClass::unitary, SymmetryClass::symplectic}) {
        for (double s : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const auto cp = counting_probabilities(b, s, lmax_for(s));
            double var = 0.0;
            for (std::size_t l = 0; l < cp.values.size(); ++l)
                var += (double(l) - s) * (double(l) - s) * cp.values[l];
            double& worst = b == SymmetryClass::unitary ? worst2 : worst14;
            worst = std::max(worst, std::abs(var - number_variance_closed(b, s)));
        }
    }
    const double t = seconds_since(t0);
    return {worst2 <= 1e-9 && worst14 <= 1e-8 && t <= 120,
            "beta=2 max " + fmt("%.2e", worst2) + " (tol 1e-9), beta=1,4 max " + fmt("%.2e", worst14) +
                " (tol 1e-8), " + fmt("%.1f", t) + " s (budget 120 s)"};
}

Verdict criterion2(Context& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::pair<std::size_t, double> rows[] = {{2, 0.16669386}, {5, 0.16684974}, {10, 0.16674765}, {20, 0.16669577}};
    double worst2 = 0.0;
    for (auto [L, ref] : rows)
        worst2 = std::max(worst2, std::abs(delta_numeric(ctx, SymmetryClass::unitary, L) - ref));
    const double e1 = std::abs(delta_numeric(ctx, SymmetryClass::orthogonal, 10) - 0.16700836);
    const double d4 = delta_numeric(ctx, SymmetryClass::symplectic, 5);
    const double e4 = std::abs(d4 - 0.16422413);
    const double e4s = std::abs(d4 + 1 / (8 * pi2 * 5) - 0.16675716);
    const double t = seconds_since(t0);
    return {worst2 <= 1e-6 && e1 <= 1e-5 && e4 <= 1e-5 && e4s <= 1e-5 && t <= 900,
            "beta=2 max " + fmt("%.2e", worst2) + " (tol 1e-6), beta=1 L=10 " + fmt("%.2e", e1) + ", beta=4 L=5 " +
                fmt("%.2e", e4) + " / star " + fmt("%.2e", e4s) + " (tol 1e-5), " + fmt("%.1f", t) +
                " s (budget 900 s)"};
}

Verdict criterion3(Context& ctx)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto r2 = c1_sum_rule(ctx.cov(SymmetryClass::unitary), 80);
    const auto r1 = c1_sum_rule(ctx.cov(SymmetryClass::orthogonal), 100);
    const auto r4 = c1_sum_rule(ctx.cov(SymmetryClass::symplectic), 50);
    const double e2 = std::abs(r2.c1_numeric - (1.0 / 12 - std::log(2 * pi) / (2 * pi2)));
    const double e1 = std::abs(r1.c1_numeric - r1.c1_theory);
    const double e4 = std::abs(r4.c1_numeric - r4.c1_theory);
    const double t = seconds_since(t0);
    return {e2 <= 1e-8 && e1 <= 5e-5 && e4 <= 1e-5 && t <= 1200,
            "beta=2 M=80 " + fmt("%.2e", e2) + " (tol 1e-8), beta=1 M=100 " + fmt("%.2e", e1) +
                " (tol 5e-5), beta=4 M=50 " + fmt("%.2e", e4) + " (tol 1e-5), " + fmt("%.1f", t) +
                " s (budget 1200 s)"};
}

Verdict criterion4(Context& ctx)
{
    std::vector<double> Ls, res;
    std::string list;
    for (std::size_t L : {10, 20, 40}) {
        Ls.push_back(double(L));
        res.push_back(delta_numeric(ctx, SymmetryClass::unitary, L) - delta_theorem1(double(L)).value);
        list += (list.empty() ? "" : ", ") + fmt("%.3e", res.back());
    }
    const double slope = loglog_slope(Ls, res);
    return {slope <= -3.5, "fitted slope " + fmt("%.3f", slope) + " (need <= -3.5); residuals " + list};
}

Verdict criterion5(Context& ctx)
{
    const auto& cov = ctx.cov(SymmetryClass::unitary);
    const double r10 = std::abs(ordered_variance(cov, 10) - ordered_var_asymptotic(SymmetryClass::unitary, 10).value);
    const double r40 = std::abs(ordered_variance(cov, 40) - ordered_var_asymptotic(SymmetryClass::unitary, 40).value);
    return {r10 <= 5e-6 && r40 <= 5e-7,
            "L=10 " + fmt("%.2e", r10) + " (tol 5e-6), L=40 " + fmt("%.2e", r40) + " (tol 5e-7)"};
}

Verdict criterion6(Context& ctx)
{
    SpacingCovariances c = ctx.cov(SymmetryClass::unitary);
    c.dI.resize(41);
    c.sigma.resize(41);
    const double r = std::abs(pandey_residual(c, true));
    return {r <= 1e-6, "beta=2 lmax=40 residual " + fmt("%.2e", r) + " (tol 1e-6)"};
}

Verdict criterion7(Context& ctx)
{
    double worst = 0.0;
    for (double w : {0.5, 1.0, 2.0, 3.0}) {
        const auto r = lemma1_residuals(ctx.cov(SymmetryClass::unitary), w);
        worst = std::max({worst, std::abs(r.cosine), std::abs(r.sine)});
    }
    return {worst <= 1e-6, "max cosine/sine residual " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Verdict criterion8(Context& ctx)
{
    const auto& cov = ctx.cov(SymmetryClass::unitary);
    bool ok = true;
    std::string im_list, re_list, norm_list;
    double prev_im = 0.0, prev_re = 0.0, prev_w = 0.0;
    for (double w : {0.4, 0.2, 0.1, 0.05}) {
        const double ri = lemma2_check(cov, w).residual;
        const double rr = lemma2_real_check(cov, w).residual;
        if (prev_w != 0.0) {
            const double qi = std::abs(ri / prev_im);
            const double qr = std::abs(rr / prev_re);
            const double qn = std::abs((rr / (w * w * w)) / (prev_re / (prev_w * prev_w * prev_w)));
            ok = ok && qi < 0.75 && qr < 0.2;
            im_list += (im_list.empty() ? "" : " ") + fmt("%.3f", qi);
            re_list += (re_list.empty() ? "" : " ") + fmt("%.3f", qr);
            norm_list += (norm_list.empty() ? "" : " ") + fmt("%.3f", qn);
        }
        prev_im = ri;
        prev_re = rr;
        prev_w = w;
    }
    return {ok, "imaginary ratios " + im_list + " (< 0.75); real ratios " + re_list + " (< 0.2; w^3-normalized " +
                    norm_list + ")"};
}

Verdict criterion9(Context& ctx)
{
    const auto& cov = ctx.cov(SymmetryClass::unitary);
    double worst = 0.0;
    for (std::size_t l = 1; l <= 39; ++l)
        worst = std::max(worst, std::abs(autocovariance_from_variances(cov, l) - cov.dI[l]));
    double rel = 0.0;
    for (std::size_t L : {10, 40, 80}) {
        const auto ss = sigma_sums_check(cov, L);
        const double v = ordered_variance(cov, L);
        rel = std::max(rel, std::abs(double(L) * ss.sigma0 - ss.sigma1 - v) / v);
    }
    return {worst <= 1e-9 && rel <= 1e-13,
            "path difference " + fmt("%.2e", worst) + " (tol 1e-9), L sigma0 - sigma1 relative " + fmt("%.2e", rel) +
                " (tol 1e-13)"};
}

Verdict criterion10(Context& ctx)
{
    if (ctx.snb_exe.empty())
        return {false, "snb executable not given (--snb)"};
    const fs::path dir = ctx.cache / "verify-cache";
    fs::remove_all(dir);
    const fs::path log = ctx.cache / "verify.log";
    const std::string cmd = "\"" + ctx.snb_exe + "\" verify --suite all --cache-dir \"" + dir.string() + "\" > \"" +
                            log.string() + "\" 2>&1";
    auto t0 = std::chrono::steady_clock::now();
    const int cold = std::system(cmd.c_str());
    const double t_cold = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const int warm = std::system(cmd.c_str());
    const double t_warm = seconds_since(t0);
    return {cold == 0 && warm == 0 && t_cold <= 1500 && t_warm <= 120,
            "exit " + std::to_string(cold) + "/" + std::to_string(warm) + ", cold " + fmt("%.1f", t_cold) +
                " s (budget 1500 s), warm " + fmt("%.1f", t_warm) + " s (budget 120 s)"};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only;
    std::string cache_dir, snb_exe;
    app.add_option("--only", only, "Criterion numbers to run (default: all)")->delimiter(',');
    app.add_option("--cache-dir", cache_dir, "Table cache (default: a fresh temporary directory)");
    app.add_option("--snb", snb_exe, "Path to the snb executable");
    CLI11_PARSE(app, argc, argv);

    Context ctx;
    bool temporary = cache_dir.empty();
    ctx.cache = temporary ? fs::temp_directory_path() / ("snb-acceptance-" + std::to_string(std::random_device{}()))
                          : fs::path(cache_dir);
    fs::create_directories(ctx.cache);
    ctx.snb_exe = snb_exe;

    const std::vector<std::pair<std::string, std::function<Verdict(Context&)>>> criteria{
        {"closed-form vs first-principles number variance", criterion1},
        {"variance difference table", criterion2},
        {"first-moment sum rule constants", criterion3},
        {"Delta expansion residual log-log slope", criterion4},
        {"ordered-variance expansion for beta = 2", criterion5},
        {"Pandey sum rule", criterion6},
        {"Fourier-series identities", criterion7},
        {"small-omega residual halving", criterion8},
        {"self-consistency of the covariance paths", criterion9},
        {"invariant suites via snb verify", criterion10},
    };
    const std::set<int> selected(only.begin(), only.end());

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = int(i) + 1;
        if (!selected.empty() && !selected.count(id))
            continue;
        Verdict v;
        try {
            v = criteria[i].second(ctx);
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        std::printf("%s [%2d] %s: %s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    if (temporary)
        fs::remove_all(ctx.cache);
    return failed == 0 ? 0 : 1;
}
