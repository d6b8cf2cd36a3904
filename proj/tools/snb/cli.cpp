#include "cli.hpp"

#include "snb/asymptotics.hpp"
#include "snb/errors.hpp"
#include "snb/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace snb::cli {

namespace {

std::size_t default_gap_lmax(SymmetryClass beta)
{
    switch (beta) {
    case SymmetryClass::orthogonal:
        return 100;
    case SymmetryClass::unitary:
        return 80;
    case SymmetryClass::symplectic:
        return 50;
    }
    return 80;
}

SpacingCovariances covariances_for(const RunConfig& cfg, std::size_t needed)
{
    const std::size_t lmax = cfg.lmax.value_or(std::max(default_gap_lmax(cfg.beta), needed));
    if (lmax < needed)
        throw ResolutionFailure("lmax = " + std::to_string(lmax) + " is too small for this request; raise --lmax to at least " +
                                    std::to_string(needed),
                                0.0);
    return autocovariances(gap_integrals(cfg.beta, lmax, cfg.policy(), {}, cfg.cache_dir));
}

std::string format_g17(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_report(const Cell& c, ColumnStyle style)
{
    if (style == ColumnStyle::text)
        return c.text;
    std::ostringstream os;
    os.imbue(std::locale::classic());
    switch (style) {
    case ColumnStyle::integer:
        os << static_cast<long long>(std::llround(c.number));
        break;
    case ColumnStyle::fixed:
        os << std::fixed << std::setprecision(8) << c.number;
        break;
    case ColumnStyle::scientific:
        os << std::scientific << std::setprecision(2) << c.number;
        break;
    case ColumnStyle::text:
        break;
    }
    return os.str();
}

std::string format_plain(const Cell& c, ColumnStyle style)
{
    if (style == ColumnStyle::text)
        return c.text;
    if (style == ColumnStyle::integer)
        return std::to_string(static_cast<long long>(std::llround(c.number)));
    return format_g17(c.number);
}

Cell num(double v) { return Cell{v, {}}; }
Cell txt(std::string s) { return Cell{0.0, std::move(s)}; }

} // namespace

ResolutionPolicy RunConfig::policy() const
{
    ResolutionPolicy p;
    p.fixed_order = quad_order;
    p.fixed_contour_points = contour_points;
    p.contour_radius = contour_radius;
    return p;
}

void RunConfig::validate() const
{
    if (lmax && *lmax == 0)
        throw ArgumentError("lmax must be positive");
    if (quad_order && *quad_order == 0)
        throw ArgumentError("quad-order must be positive");
    if (contour_points && *contour_points == 0)
        throw ArgumentError("contour-points must be positive");
    if (!(s_step > 0))
        throw ArgumentError("s-step must be positive");
    policy().validate();
}

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw ArgumentError("table row width does not match its header");
    rows.push_back(std::move(row));
}

void write_table(const Table& t, OutputFormat format, std::ostream& os)
{
    if (format != OutputFormat::report) {
        const char sep = format == OutputFormat::csv ? ',' : '\t';
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            os << (c ? std::string(1, sep) : "") << t.columns[c].name;
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? std::string(1, sep) : "") << format_plain(row[c], t.columns[c].style);
            os << '\n';
        }
        return;
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        width[c] = t.columns[c].name.size();
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line.push_back(format_report(row[c], t.columns[c].style));
            width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            const bool left = t.columns[c].style == ColumnStyle::text;
            os << (c ? "  " : "") << (left ? std::left : std::right) << std::setw(int(width[c])) << line[c];
        }
        os << std::right << '\n';
    };
    std::vector<std::string> header;
    for (const auto& col : t.columns)
        header.push_back(col.name);
    emit(header);
    for (const auto& line : cells)
        emit(line);
}

std::vector<std::size_t> default_table1_L(SymmetryClass beta, bool full)
{
    if (!full)
        return beta == SymmetryClass::symplectic ? std::vector<std::size_t>{2, 5, 10}
                                                 : std::vector<std::size_t>{2, 5, 10, 20};
    if (beta == SymmetryClass::symplectic)
        return {2, 5, 10, 20, 30, 40, 50};
    return {2, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
}

Table cmd_table1(const RunConfig& cfg, const std::vector<std::size_t>& L_list)
{
    if (L_list.empty())
        throw ArgumentError("table1: empty L list");
    const std::size_t maxL = *std::max_element(L_list.begin(), L_list.end());
    if (*std::min_element(L_list.begin(), L_list.end()) == 0)
        throw ArgumentError("table1: L must be positive");
    const SpacingCovariances cov = covariances_for(cfg, maxL);
    Table t;
    t.columns = {{"L", ColumnStyle::integer},
                 {"var_N", ColumnStyle::fixed},
                 {"var_lambda", ColumnStyle::fixed},
                 {"Delta", ColumnStyle::fixed},
                 {"Delta_minus_one_sixth", ColumnStyle::scientific}};
    const bool star = cfg.beta == SymmetryClass::symplectic;
    if (star) {
        t.columns.push_back({"Delta_star", ColumnStyle::fixed});
        t.columns.push_back({"Delta_star_minus_one_sixth", ColumnStyle::scientific});
    }
    for (std::size_t L : L_list) {
        const double vn = number_variance_closed(cfg.beta, double(L));
        const double vl = ordered_variance(cov, L);
        const double d = vn - vl;
        std::vector<Cell> row{num(double(L)), num(vn), num(vl), num(d), num(d - 1.0 / 6.0)};
        if (star) {
            const double ds = d + 1.0 / (8 * constants::pi * constants::pi * double(L));
            row.push_back(num(ds));
            row.push_back(num(ds - 1.0 / 6.0));
        }
        t.add_row(std::move(row));
    }
    return t;
}

Table cmd_table2(const RunConfig& cfg, std::size_t M)
{
    const SpacingCovariances cov = covariances_for(cfg, M);
    const SumRuleReport r = c1_sum_rule(cov, M);
    Table t;
    t.columns = {{"beta", ColumnStyle::integer}, {"M", ColumnStyle::integer},
                 {"theory", ColumnStyle::fixed},  {"numerics", ColumnStyle::fixed},
                 {"error", ColumnStyle::scientific}, {"head", ColumnStyle::fixed},
                 {"tail", ColumnStyle::scientific}};
    t.add_row({num(beta_value(cfg.beta)), num(double(M)), num(r.c1_theory), num(r.c1_numeric),
               num(r.discrepancy), num(r.head), num(r.tail)});
    return t;
}

Table cmd_figure(const RunConfig& cfg, const std::string& which, bool full)
{
    static const std::vector<std::string> known{"one_six", "one_six_errors", "ordered_eig", "c_beta_error"};
    if (std::find(known.begin(), known.end(), which) == known.end())
        throw ArgumentError("figure: unknown selector '" + which + "'");
    const SymmetryClass beta = cfg.beta;
    const SpacingCovariances cov = covariances_for(cfg, 0);
    const std::size_t desk = beta == SymmetryClass::symplectic ? 10 : 20;
    const std::size_t Lmax = full ? cov.lmax() : std::min(desk, cov.lmax());

    auto expansion_delta = [&](double L) {
        return beta == SymmetryClass::unitary ? delta_theorem1(L) : delta_conjA(beta, L);
    };
    auto delta = [&](std::size_t L) { return number_variance_closed(beta, double(L)) - ordered_variance(cov, L); };

    Table t;
    if (which == "one_six") {
        t.columns = {{"L", ColumnStyle::integer},
                     {"Delta_minus_one_sixth", ColumnStyle::scientific},
                     {"expansion_minus_one_sixth", ColumnStyle::scientific}};
        for (std::size_t L = 1; L <= Lmax; ++L)
            t.add_row({num(double(L)), num(delta(L) - 1.0 / 6.0),
                       num(expansion_delta(double(L)).value - 1.0 / 6.0)});
    } else if (which == "one_six_errors") {
        t.columns = {{"L", ColumnStyle::integer},
                     {"abs_residual", ColumnStyle::scientific},
                     {"sigma", ColumnStyle::scientific}};
        for (std::size_t L = 1; L <= Lmax; ++L)
            t.add_row({num(double(L)), num(std::abs(delta(L) - expansion_delta(double(L)).value)),
                       num(ordered_variance_sigma(cov, L))});
    } else if (which == "ordered_eig") {
        t.columns = {{"L", ColumnStyle::integer},
                     {"var_lambda", ColumnStyle::fixed},
                     {"expansion", ColumnStyle::fixed},
                     {"pre_asymptotic", ColumnStyle::text}};
        for (std::size_t L = 1; L <= Lmax; ++L) {
            const ExpansionReport e = ordered_var_asymptotic(beta, double(L));
            t.add_row({num(double(L)), num(ordered_variance(cov, L)), num(e.value),
                       txt(e.pre_asymptotic ? "yes" : "no")});
        }
    } else {
        t.columns = {{"M", ColumnStyle::integer},
                     {"c1_numeric", ColumnStyle::fixed},
                     {"abs_error", ColumnStyle::scientific}};
        for (std::size_t M = 2; M <= cov.lmax(); ++M) {
            const SumRuleReport r = c1_sum_rule(cov, M);
            t.add_row({num(double(M)), num(r.c1_numeric), num(r.discrepancy)});
        }
    }
    return t;
}

Table verify_table(const std::vector<CheckResult>& checks)
{
    Table t;
    t.columns = {{"suite", ColumnStyle::text},      {"invariant", ColumnStyle::text},
                 {"residual", ColumnStyle::scientific}, {"tolerance", ColumnStyle::scientific},
                 {"status", ColumnStyle::text},     {"note", ColumnStyle::text}};
    for (const auto& c : checks)
        t.add_row({txt(c.suite), txt(c.name), num(c.residual), num(c.tolerance), txt(c.pass ? "PASS" : "FAIL"),
                   txt(c.note)});
    return t;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectral statistics of the Sine_beta point processes"};
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    int beta = 2;
    std::size_t lmax = 0, quad_order = 0, contour_points = 0, threads = 0;
    double radius = 1.0, s_step = 0.01;
    std::string cache_dir = ".snb-cache";
    std::string out_path;
    std::string format = "report";
    bool no_cache = false;

    app.add_option("--beta", beta, "Dyson index")->check(CLI::IsMember({1, 2, 4}));
    auto* lmax_opt = app.add_option("--lmax", lmax, "Largest l of the gap integrals");
    auto* order_opt = app.add_option("--quad-order", quad_order, "Fixed Nystrom quadrature order");
    auto* points_opt = app.add_option("--contour-points", contour_points, "Fixed number of contour points");
    app.add_option("--contour-radius", radius, "Radius of the contour around z = 1");
    app.add_option("--s-step", s_step, "Grid step for spacing densities");
    app.add_option("--cache-dir", cache_dir, "Directory for cached counting tables");
    app.add_flag("--no-cache", no_cache, "Disable the table cache");
    app.add_option("--out", out_path, "Output file (default: standard output)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "tsv", "report"}));
    app.add_option("--threads", threads, "Worker threads (0: hardware default)");

    auto* t1 = app.add_subcommand("table1", "Variance difference table");
    std::vector<std::size_t> L_list;
    bool full1 = false;
    t1->add_option("--L", L_list, "Comma separated L values")->delimiter(',');
    t1->add_flag("--full", full1, "Use the extended L range");

    auto* t2 = app.add_subcommand("table2", "Sum-rule constant C1");
    std::size_t M = 0;
    t2->add_option("--M", M, "Split index")->required();

    auto* fig = app.add_subcommand("figure", "Data series behind the figures");
    std::string which;
    bool full_fig = false;
    fig->add_option("--which", which, "Figure selector")
        ->required()
        ->check(CLI::IsMember({"one_six", "one_six_errors", "ordered_eig", "c_beta_error"}));
    fig->add_flag("--full", full_fig, "Extend to the full lmax range");

    auto* ver = app.add_subcommand("verify", "Run invariant suites");
    std::string suite = "all";
    ver->add_option("--suite", suite, "Suite name")
        ->check(CLI::IsMember({"specfun", "fredholm", "counting", "sumrules", "lemmas", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    RunConfig cfg;
    try {
        cfg.beta = symmetry_from_beta(beta);
        if (lmax_opt->count() || lmax > 0)
            cfg.lmax = lmax;
        if (order_opt->count() || quad_order > 0)
            cfg.quad_order = quad_order;
        if (points_opt->count() || contour_points > 0)
            cfg.contour_points = contour_points;
        cfg.contour_radius = radius;
        cfg.s_step = s_step;
        cfg.cache_dir = no_cache ? std::nullopt : std::optional<std::filesystem::path>(cache_dir);
        if (!out_path.empty())
            cfg.output = out_path;
        cfg.format = format == "csv" ? OutputFormat::csv : format == "tsv" ? OutputFormat::tsv : OutputFormat::report;
        cfg.validate();
        set_worker_count(threads);
    } catch (const std::exception& e) {
        err << "snb: " << e.what() << '\n';
        return 2;
    }

    std::ofstream file;
    std::ostream* os = &out;
    if (cfg.output) {
        file.open(*cfg.output);
        if (!file) {
            err << "snb: cannot open " << cfg.output->string() << '\n';
            return 2;
        }
        os = &file;
    }
    os->imbue(std::locale::classic());

    try {
        if (t1->parsed()) {
            write_table(cmd_table1(cfg, L_list.empty() ? default_table1_L(cfg.beta, full1) : L_list), cfg.format, *os);
        } else if (t2->parsed()) {
            write_table(cmd_table2(cfg, M), cfg.format, *os);
        } else if (fig->parsed()) {
            write_table(cmd_figure(cfg, which, full_fig), cfg.format, *os);
        } else {
            const auto checks = cmd_verify(cfg, suite);
            write_table(verify_table(checks), cfg.format, *os);
            const auto failed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; });
            if (cfg.format == OutputFormat::report)
                *os << checks.size() - std::size_t(failed) << " passed, " << failed << " failed\n";
            return failed == 0 ? 0 : 1;
        }
    } catch (const ResolutionFailure& e) {
        err << "snb: resolution failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "snb: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace snb::cli
