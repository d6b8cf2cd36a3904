#pragma once

#include "snb/fredholm.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace snb {

/// E_beta(l; s) on an s-grid, l = 0..lmax.
class CountingTable {
public:
    CountingTable() = default;
    CountingTable(SymmetryClass beta, std::vector<double> s_grid, std::size_t lmax,
                  std::string policy_fingerprint, std::vector<double> values,
                  std::vector<double> column_defects);

    SymmetryClass beta() const noexcept { return beta_; }
    const std::vector<double>& s_grid() const noexcept { return s_grid_; }
    std::size_t lmax() const noexcept { return lmax_; }
    std::size_t columns() const noexcept { return s_grid_.size(); }
    const std::string& policy_fingerprint() const noexcept { return fingerprint_; }
    /// Largest |1 - sum_l E(l; s)| over the grid.
    double defect() const noexcept { return defect_; }
    const std::vector<double>& column_defects() const noexcept { return column_defects_; }

    double at(std::size_t l, std::size_t column) const { return values_[l * s_grid_.size() + column]; }
    std::vector<double> column(std::size_t j) const;
    /// Row-major storage, E[l][j] at l * columns() + j.
    const std::vector<double>& values() const noexcept { return values_; }

    /// Index of s on the grid; LookupError if s is not a grid point.
    std::size_t index_of(double s) const;

    bool operator==(const CountingTable&) const = default;

private:
    SymmetryClass beta_ = SymmetryClass::unitary;
    std::vector<double> s_grid_;
    std::size_t lmax_ = 0;
    std::string fingerprint_;
    std::vector<double> values_;
    std::vector<double> column_defects_;
    double defect_ = 0.0;
};

/// Builds E(l; s) column by column (columns run in parallel). When
/// `cache_dir` is given, a file whose header matches beta, lmax, grid and
/// policy fingerprint is loaded instead of recomputing; otherwise the
/// result is written there. A column that fails its truncation check turns
/// into a ResolutionFailure naming that s.
CountingTable build_table(SymmetryClass beta, const std::vector<double>& s_grid, std::size_t lmax,
                          const ResolutionPolicy& policy = {},
                          const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// Text persistence: '#'-prefixed header lines, then "l,s,E" rows with 17
/// significant digits, ordered by l then s.
void save_table(const CountingTable& table, const std::filesystem::path& file);
CountingTable load_table(const std::filesystem::path& file);

/// File name used inside a cache directory for the given build request.
std::string table_cache_name(SymmetryClass beta, const std::vector<double>& s_grid,
                             std::size_t lmax, const ResolutionPolicy& policy);

/// sum_l (l - s)^2 E(l; s) at a grid point.
double number_variance_empirical(const CountingTable& table, double s);

/// I[l] = int_0^inf E_beta(l; x) dx together with a per-l truncation estimate.
struct GapIntegrals {
    SymmetryClass beta = SymmetryClass::unitary;
    std::vector<double> I;
    std::vector<double> tail_bound;

    std::size_t lmax() const noexcept { return I.empty() ? 0 : I.size() - 1; }
};

/// Panel layout for the integrals over x.
struct GapQuadrature {
    double panel_width = 1.0;
    std::size_t panel_order = 20;
    double tail_tolerance = 1e-9;
};

/// Upper integration limit used for E(l; .): l + 12 + 6 sqrt(log(2 + l)).
double gap_integration_limit(std::size_t l);

/// Integrates every E(l; .) over [0, gap_integration_limit(l)] with
/// panel-wise Gauss-Legendre; the underlying table is cached like any other.
/// The tail estimate is ten times the size of the last panel's contribution;
/// exceeding `tail_tolerance` raises ResolutionFailure.
GapIntegrals gap_integrals(SymmetryClass beta, std::size_t lmax, const ResolutionPolicy& policy = {},
                           const GapQuadrature& quad = {},
                           const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// p_beta(k; s) = d^2/ds^2 sum_{l<k} (k - l) E(l; s) at a grid point, by
/// central differences on the local grid step with one Richardson step.
/// Needs two uniformly spaced neighbours on each side.
double spacing_density(std::size_t k, double s, const CountingTable& table);

/// |sum_{k=1}^{lmax} p_2(k; s) - R_2(s)| with R_2(s) = 1 - (sin(pi s)/(pi s))^2.
double two_point_consistency(double s, const CountingTable& table);

/// Sine-kernel two-point function 1 - S(s)^2.
double two_point_function_beta2(double s);

} // namespace snb
