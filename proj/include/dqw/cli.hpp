// cli.hpp — Command layer behind the `dqw` executable
//
// Every subcommand is a plain function returning a table or JSON document so
// it can be exercised without spawning a process; run() wires them to CLI11.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqw/params.hpp"
#include "dqw/spectral.hpp"
#include "dqw/specfun.hpp"
#include "dqw/wigner.hpp"

namespace dqw::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInvalidInput = 1,
    kNumericalFailure = 2,
    kIoFailure = 3,
};

// Tolerances that may come from a key=value config file and be overridden by flags.
struct Settings {
    double mass_tol{spectral::kDefaultMassTol};
    double eps_tail{specfun::kDefaultEpsTail};
    int quad_nodes{256};
    int k_nodes{wigner::kDefaultKNodes};
    int jobs{0};
};

// Keys: mass_tol, eps_tail, quad_nodes, k_nodes, jobs ('-' and '_' interchangeable).
// Blank lines and lines starting with '#' are ignored.
Settings parse_config(std::istream& in, Settings base = {});
Settings load_config(const std::string& path, Settings base = {});

struct SiteRange {
    int lo{0};
    int hi{0};
};

SiteRange parse_site_range(const std::string& text);        // "lo:hi"
std::vector<double> parse_grid(const std::string& text);    // "a:b:step", inclusive of b
std::vector<double> parse_list(const std::string& text);    // "v1,v2,..."

// 17 significant digits, '.' decimal separator; round-trips every double.
std::string format_double(double v);

// Header plus numeric rows. Rows are sorted by the key columns before writing
// so output never depends on evaluation order.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> sort_keys;

    void sort_rows();
    void write(std::ostream& out) const;
};

CsvTable cmd_prob(double tprime, std::span<const double> r_d_list, SiteRange sites, const Settings& settings);
CsvTable cmd_carpet(std::span<const double> t_grid, double r_d, SiteRange sites, const Settings& settings);
CsvTable cmd_wigner(double tprime, double r_d, SiteRange sites, int k_nodes, const Settings& settings);

enum class Scalar { purity, entropy, variance, cf };
Scalar parse_scalar(const std::string& name);
std::string scalar_name(Scalar s);

CsvTable cmd_scalar(Scalar observable, std::span<const double> t_grid, std::span<const double> r_d_grid,
                    double xi, const Settings& settings);

nlohmann::json cmd_critical_rd(double t_star, double lo, double hi, double tol);

struct CellTiming {
    double tprime;
    double r_d;
    double seconds;
};

struct SweepResult {
    CsvTable table;   // t, r_d, purity, entropy, variance
    std::vector<CellTiming> timings;
};

SweepResult cmd_sweep(std::span<const double> t_grid, std::span<const double> r_d_grid, const Settings& settings);

enum class ValidationLevel { fast, full };

struct ValidationReport {
    nlohmann::json json;
    bool passed{false};
};

ValidationReport cmd_validate(ValidationLevel level, const Settings& settings);

nlohmann::json make_manifest(const std::string& command, std::span<const double> t_grid,
                             std::span<const double> r_d_grid, const Settings& settings,
                             const std::vector<std::string>& outputs, const std::vector<CellTiming>& timings);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dqw::cli
