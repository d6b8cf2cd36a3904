#pragma once

#include "snb/fredholm.hpp"
#include "snb/symmetry.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace snb::cli {

enum class OutputFormat { csv, tsv, report };

struct RunConfig {
    SymmetryClass beta = SymmetryClass::unitary;
    std::optional<std::size_t> lmax;
    std::optional<std::size_t> quad_order;
    std::optional<std::size_t> contour_points;
    double contour_radius = 1.0;
    double s_step = 0.01;
    std::optional<std::filesystem::path> cache_dir = std::filesystem::path(".snb-cache");
    std::optional<std::filesystem::path> output;
    OutputFormat format = OutputFormat::report;

    ResolutionPolicy policy() const;
    /// Throws ArgumentError on non-positive parameters or a bad radius.
    void validate() const;
};

/// How a column is printed in report mode; CSV/TSV always use 17 significant digits.
enum class ColumnStyle { integer, fixed, scientific, text };

struct Column {
    std::string name;
    ColumnStyle style = ColumnStyle::fixed;
};

struct Cell {
    double number = 0.0;
    std::string text;
};

struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

void write_table(const Table& t, OutputFormat format, std::ostream& os);

/// Default L lists: desk scale, or the extended range with `full`.
std::vector<std::size_t> default_table1_L(SymmetryClass beta, bool full);

Table cmd_table1(const RunConfig& cfg, const std::vector<std::size_t>& L_list);
Table cmd_table2(const RunConfig& cfg, std::size_t M);
Table cmd_figure(const RunConfig& cfg, const std::string& which, bool full);

struct CheckResult {
    std::string suite;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

const std::vector<std::string>& verify_suites();

/// Runs one suite, or every suite for "all". Never throws for numerical
/// failures: they become failed checks carrying the error text.
std::vector<CheckResult> cmd_verify(const RunConfig& cfg, const std::string& suite);

Table verify_table(const std::vector<CheckResult>& checks);

/// Full command-line entry point; returns the process exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace snb::cli
