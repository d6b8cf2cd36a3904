#include "snb/counting.hpp"

#include "snb/errors.hpp"
#include "snb/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace snb {

namespace fs = std::filesystem;
using constants::pi;

namespace {

std::string format_double(double v)
{
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, end);
}

double parse_double(std::string_view text)
{
    double v = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw ArgumentError("table file: bad number '" + std::string(text) + "'");
    return v;
}

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string grid_text(const std::vector<double>& grid)
{
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i)
            out += ';';
        out += format_double(grid[i]);
    }
    return out;
}

void check_grid(const std::vector<double>& grid)
{
    if (grid.empty())
        throw ArgumentError("build_table: empty s grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0)
            throw ArgumentError("build_table: grid values must be finite and non-negative");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ArgumentError("build_table: grid must be strictly increasing");
    }
}

} // namespace

CountingTable::CountingTable(SymmetryClass beta, std::vector<double> s_grid, std::size_t lmax,
                             std::string policy_fingerprint, std::vector<double> values,
                             std::vector<double> column_defects)
    : beta_(beta), s_grid_(std::move(s_grid)), lmax_(lmax), fingerprint_(std::move(policy_fingerprint)),
      values_(std::move(values)), column_defects_(std::move(column_defects))
{
    if (values_.size() != (lmax_ + 1) * s_grid_.size())
        throw ArgumentError("CountingTable: value count does not match grid and lmax");
    if (column_defects_.size() != s_grid_.size())
        throw ArgumentError("CountingTable: one defect per column required");
    defect_ = 0.0;
    for (double d : column_defects_)
        defect_ = std::max(defect_, d);
}

std::vector<double> CountingTable::column(std::size_t j) const
{
    std::vector<double> col(lmax_ + 1);
    for (std::size_t l = 0; l <= lmax_; ++l)
        col[l] = at(l, j);
    return col;
}

std::size_t CountingTable::index_of(double s) const
{
    auto it = std::lower_bound(s_grid_.begin(), s_grid_.end(), s);
    const double tol = 1e-12 * std::max(1.0, std::abs(s));
    if (it != s_grid_.end() && std::abs(*it - s) <= tol)
        return std::size_t(it - s_grid_.begin());
    if (it != s_grid_.begin() && std::abs(*(it - 1) - s) <= tol)
        return std::size_t(it - 1 - s_grid_.begin());
    throw LookupError("s = " + format_double(s) + " is not on the table grid");
}

std::string table_cache_name(SymmetryClass beta, const std::vector<double>& s_grid,
                             std::size_t lmax, const ResolutionPolicy& policy)
{
    const std::string key = to_string(beta) + "|" + std::to_string(lmax) + "|" + policy.fingerprint() +
                            "|" + grid_text(s_grid);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
    return "table_b" + to_string(beta) + "_" + hex + ".csv";
}

void save_table(const CountingTable& table, const fs::path& file)
{
    if (file.has_parent_path())
        fs::create_directories(file.parent_path());
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot write " + tmp.string());
        os << "# snb counting table v1\n";
        os << "# beta = " << to_string(table.beta()) << "\n";
        os << "# lmax = " << table.lmax() << "\n";
        os << "# policy = " << table.policy_fingerprint() << "\n";
        os << "# defect = " << format_double(table.defect()) << "\n";
        os << "# columns = " << table.columns() << "\n";
        os << "# s_grid = " << grid_text(table.s_grid()) << "\n";
        std::vector<double> defects = table.column_defects();
        os << "# column_defects = " << grid_text(defects) << "\n";
        os << "l,s,E\n";
        for (std::size_t l = 0; l <= table.lmax(); ++l)
            for (std::size_t j = 0; j < table.columns(); ++j)
                os << l << ',' << format_double(table.s_grid()[j]) << ',' << format_double(table.at(l, j))
                   << '\n';
        if (!os)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, file);
}

namespace {

std::vector<double> split_doubles(const std::string& text)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(';', start);
        const auto piece = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!piece.empty())
            out.push_back(parse_double(piece));
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    return out;
}

} // namespace

CountingTable load_table(const fs::path& file)
{
    std::ifstream is(file, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + file.string());
    std::string line;
    std::optional<int> beta;
    std::optional<std::size_t> lmax;
    std::string policy;
    std::vector<double> grid, defects;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        if (line[0] != '#')
            break;  // column header "l,s,E"
        const auto eq = line.find(" = ");
        if (eq == std::string::npos)
            continue;
        const std::string key = line.substr(2, eq - 2);
        const std::string val = line.substr(eq + 3);
        if (key == "beta")
            beta = std::stoi(val);
        else if (key == "lmax")
            lmax = std::stoul(val);
        else if (key == "policy")
            policy = val;
        else if (key == "s_grid")
            grid = split_doubles(val);
        else if (key == "column_defects")
            defects = split_doubles(val);
    }
    if (!beta || !lmax || grid.empty())
        throw ArgumentError("table file " + file.string() + ": incomplete header");
    if (line != "l,s,E")
        throw ArgumentError("table file " + file.string() + ": missing l,s,E header row");
    std::vector<double> values((*lmax + 1) * grid.size());
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ArgumentError("table file: malformed row '" + line + "'");
        const std::size_t l = std::stoul(line.substr(0, c1));
        const std::size_t j = count % grid.size();
        if (l != count / grid.size() || l > *lmax)
            throw ArgumentError("table file: rows out of order");
        if (parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1)) != grid[j])
            throw ArgumentError("table file: s column disagrees with header grid");
        values[l * grid.size() + j] = parse_double(std::string_view(line).substr(c2 + 1));
        ++count;
    }
    if (count != values.size())
        throw ArgumentError("table file: expected " + std::to_string(values.size()) + " rows");
    if (defects.size() != grid.size())
        defects.assign(grid.size(), 0.0);
    return CountingTable(symmetry_from_beta(*beta), std::move(grid), *lmax, std::move(policy),
                         std::move(values), std::move(defects));
}

CountingTable build_table(SymmetryClass beta, const std::vector<double>& s_grid, std::size_t lmax,
                          const ResolutionPolicy& policy, const std::optional<fs::path>& cache_dir)
{
    check_grid(s_grid);
    policy.validate();

    std::optional<fs::path> cache_file;
    if (cache_dir) {
        cache_file = *cache_dir / table_cache_name(beta, s_grid, lmax, policy);
        if (fs::exists(*cache_file)) {
            try {
                auto cached = load_table(*cache_file);
                if (cached.beta() == beta && cached.lmax() == lmax && cached.s_grid() == s_grid &&
                    cached.policy_fingerprint() == policy.fingerprint())
                    return cached;
            } catch (const std::exception&) {
                // unreadable cache entries are rebuilt below
            }
        }
    }

    const auto columns = parallel_map(s_grid.size(), [&](std::size_t j) {
        return counting_probabilities(beta, s_grid[j], lmax, policy);
    });

    std::vector<double> values((lmax + 1) * s_grid.size());
    std::vector<double> defects(s_grid.size());
    for (std::size_t j = 0; j < s_grid.size(); ++j) {
        for (std::size_t l = 0; l <= lmax; ++l)
            values[l * s_grid.size() + j] = columns[j].values[l];
        defects[j] = columns[j].truncation_defect;
    }
    CountingTable table(beta, s_grid, lmax, policy.fingerprint(), std::move(values), std::move(defects));
    if (cache_file)
        save_table(table, *cache_file);
    return table;
}

double number_variance_empirical(const CountingTable& table, double s)
{
    const std::size_t j = table.index_of(s);
    const double sj = table.s_grid()[j];
    double var = 0.0;
    for (std::size_t l = 0; l <= table.lmax(); ++l) {
        const double d = double(l) - sj;
        var += d * d * table.at(l, j);
    }
    return var;
}

double gap_integration_limit(std::size_t l)
{
    return double(l) + 12.0 + 6.0 * std::sqrt(std::log(2.0 + double(l)));
}

GapIntegrals gap_integrals(SymmetryClass beta, std::size_t lmax, const ResolutionPolicy& policy,
                           const GapQuadrature& quad, const std::optional<fs::path>& cache_dir)
{
    if (!(quad.panel_width > 0) || quad.panel_order == 0)
        throw ArgumentError("gap_integrals: invalid panel layout");
    const auto panels_for = [&](std::size_t l) {
        return static_cast<std::size_t>(std::ceil(gap_integration_limit(l) / quad.panel_width));
    };
    const std::size_t panels = panels_for(lmax);
    const double upper = double(panels) * quad.panel_width;

    std::vector<double> grid;
    std::vector<double> weights;
    grid.reserve(panels * quad.panel_order);
    for (std::size_t p = 0; p < panels; ++p) {
        const auto rule = gauss_legendre(quad.panel_order, double(p) * quad.panel_width,
                                         double(p + 1) * quad.panel_width);
        grid.insert(grid.end(), rule.nodes.begin(), rule.nodes.end());
        weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
    }

    const auto table = build_table(beta, grid, lmax_for(upper), policy, cache_dir);

    GapIntegrals out;
    out.beta = beta;
    out.I.resize(lmax + 1);
    out.tail_bound.resize(lmax + 1);
    for (std::size_t l = 0; l <= lmax; ++l) {
        const std::size_t np = panels_for(l);
        double total = 0.0;
        double last = 0.0;
        for (std::size_t p = 0; p < np; ++p) {
            double panel = 0.0;
            for (std::size_t q = 0; q < quad.panel_order; ++q) {
                const std::size_t j = p * quad.panel_order + q;
                panel += weights[j] * table.at(l, j);
            }
            total += panel;
            last = panel;
        }
        out.I[l] = total;
        out.tail_bound[l] = 10.0 * std::abs(last);
        if (out.tail_bound[l] > quad.tail_tolerance) {
            std::ostringstream os;
            os << "gap_integrals: tail bound " << out.tail_bound[l] << " for l = " << l;
            throw ResolutionFailure(os.str(), double(np) * quad.panel_width);
        }
    }
    return out;
}

namespace {

double weighted_count(const CountingTable& table, std::size_t k, std::size_t j)
{
    double f = 0.0;
    for (std::size_t l = 0; l < k; ++l)
        f += double(k - l) * table.at(l, j);
    return f;
}

} // namespace

double spacing_density(std::size_t k, double s, const CountingTable& table)
{
    if (k == 0)
        throw ArgumentError("spacing_density: k must be at least 1");
    if (k > table.lmax())
        throw ArgumentError("spacing_density: k exceeds table lmax");
    const std::size_t j = table.index_of(s);
    const auto& g = table.s_grid();
    if (j < 2 || j + 2 >= g.size())
        throw ArgumentError("spacing_density: need two grid neighbours on each side of s");
    const double h = g[j + 1] - g[j];
    for (std::size_t i = j - 2; i < j + 2; ++i) {
        if (std::abs((g[i + 1] - g[i]) - h) > 1e-9 * h)
            throw ArgumentError("spacing_density: grid not uniform around s");
    }
    double f[5];
    for (int d = -2; d <= 2; ++d)
        f[d + 2] = weighted_count(table, k, std::size_t(std::ptrdiff_t(j) + d));
    const double d_h = (f[3] - 2.0 * f[2] + f[1]) / (h * h);
    const double d_2h = (f[4] - 2.0 * f[2] + f[0]) / (4.0 * h * h);
    return (4.0 * d_h - d_2h) / 3.0;
}

double two_point_function_beta2(double s)
{
    const double k = sine_kernel(s);
    return 1.0 - k * k;
}

double two_point_consistency(double s, const CountingTable& table)
{
    if (table.beta() != SymmetryClass::unitary)
        throw ArgumentError("two_point_consistency: analytic R_2 is only wired for beta = 2");
    double sum = 0.0;
    for (std::size_t k = 1; k <= table.lmax(); ++k)
        sum += spacing_density(k, s, table);
    return std::abs(sum - two_point_function_beta2(s));
}

} // namespace snb
