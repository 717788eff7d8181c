// commands.cpp — Subcommand implementations and CLI11 wiring

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "dqw/cli.hpp"
#include "dqw/core.hpp"
#include "dqw/errors.hpp"
#include "dqw/kernels.hpp"

namespace dqw::cli {

namespace {

// Runs fn(i) for i in [0, count) across the OpenMP pool. Exceptions are
// captured per cell and the first one (by index) is rethrown afterwards.
template <class Fn>
void for_each_cell(std::size_t count, Fn&& fn) {
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void require_nonempty(std::span<const double> grid, const char* what) {
    if (grid.empty()) throw InvalidInput(std::string(what) + " grid is empty");
}

std::vector<double> profile(const ModelParams& p, SiteRange sites, const Settings& settings,
                            kernels::Backend backend) {
    const auto trunc = truncation_for(p, settings.eps_tail);
    const int reach = std::max(std::abs(sites.lo), std::abs(sites.hi));
    const SeriesTables tables(p, trunc, reach);
    std::vector<double> out(static_cast<std::size_t>(sites.hi - sites.lo + 1));
    if (backend == kernels::Backend::serial) {
        kernels::serial::probability_profile(tables, sites.lo, sites.hi, out);
    } else {
        kernels::omp::probability_profile(tables, sites.lo, sites.hi, out);
    }
    return out;
}

double scalar_value(Scalar observable, const ModelParams& p, double xi, const Settings& settings) {
    switch (observable) {
    case Scalar::purity: return purity(p);
    case Scalar::entropy: return spectral::entropy(p, settings.mass_tol);
    case Scalar::variance: return variance(p);
    case Scalar::cf: return characteristic_function(xi, p);
    }
    throw InvalidInput("unknown observable");
}

} // namespace

CsvTable cmd_prob(double tprime, std::span<const double> r_d_list, SiteRange sites, const Settings& settings) {
    require_nonempty(r_d_list, "r_D");
    CsvTable table{{"r_d", "s", "p"}, {}, {0, 1}};
    for (double r_d : r_d_list) {
        const ModelParams p{tprime, r_d};
        p.validate();
        const auto prob = profile(p, sites, settings, kernels::Backend::omp);
        for (int s = sites.lo; s <= sites.hi; ++s) {
            table.rows.push_back({r_d, static_cast<double>(s), prob[static_cast<std::size_t>(s - sites.lo)]});
        }
    }
    table.sort_rows();
    return table;
}

CsvTable cmd_carpet(std::span<const double> t_grid, double r_d, SiteRange sites, const Settings& settings) {
    require_nonempty(t_grid, "t'");
    for (double t : t_grid) ModelParams{t, r_d}.validate();

    std::vector<std::vector<double>> per_time(t_grid.size());
    for_each_cell(t_grid.size(), [&](std::size_t i) {
        per_time[i] = profile(ModelParams{t_grid[i], r_d}, sites, settings, kernels::Backend::serial);
    });

    CsvTable table{{"t", "s", "p"}, {}, {0, 1}};
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        for (int s = sites.lo; s <= sites.hi; ++s) {
            table.rows.push_back({t_grid[i], static_cast<double>(s), per_time[i][static_cast<std::size_t>(s - sites.lo)]});
        }
    }
    table.sort_rows();
    return table;
}

CsvTable cmd_wigner(double tprime, double r_d, SiteRange sites, int k_nodes, const Settings& settings) {
    const ModelParams p{tprime, r_d};
    const auto grid = wigner::wigner_grid(p, sites.lo, sites.hi, wigner::closed_k_nodes(k_nodes),
                                          wigner::KGridKind::closed, settings.eps_tail);
    const double w_max = grid.max_abs();
    CsvTable table{{"s", "k", "w", "w_normalized"}, {}, {0, 1}};
    for (int s = grid.s_min; s <= grid.s_max; ++s) {
        for (std::size_t j = 0; j < grid.k_nodes.size(); ++j) {
            const double w = grid.at(s, j);
            table.rows.push_back({static_cast<double>(s), grid.k_nodes[j], w, w_max > 0.0 ? w / w_max : 0.0});
        }
    }
    table.sort_rows();
    return table;
}

Scalar parse_scalar(const std::string& name) {
    if (name == "purity") return Scalar::purity;
    if (name == "entropy") return Scalar::entropy;
    if (name == "variance") return Scalar::variance;
    if (name == "cf") return Scalar::cf;
    throw InvalidInput("unknown observable '" + name + "'");
}

std::string scalar_name(Scalar s) {
    switch (s) {
    case Scalar::purity: return "purity";
    case Scalar::entropy: return "entropy";
    case Scalar::variance: return "variance";
    case Scalar::cf: return "cf";
    }
    return "unknown";
}

CsvTable cmd_scalar(Scalar observable, std::span<const double> t_grid, std::span<const double> r_d_grid, double xi,
                    const Settings& settings) {
    require_nonempty(t_grid, "t'");
    require_nonempty(r_d_grid, "r_D");
    if (observable == Scalar::cf && !std::isfinite(xi)) throw InvalidInput("cf needs a finite --xi");

    const std::size_t nt = t_grid.size();
    std::vector<double> values(nt * r_d_grid.size());
    for_each_cell(values.size(), [&](std::size_t c) {
        const ModelParams p{t_grid[c % nt], r_d_grid[c / nt]};
        p.validate();
        values[c] = scalar_value(observable, p, xi, settings);
    });

    CsvTable table{{"t", "r_d", "value"}, {}, {1, 0}};
    for (std::size_t c = 0; c < values.size(); ++c) table.rows.push_back({t_grid[c % nt], r_d_grid[c / nt], values[c]});
    table.sort_rows();
    return table;
}

nlohmann::json cmd_critical_rd(double t_star, double lo, double hi, double tol) {
    const auto r = wigner::critical_rd(t_star, lo, hi, tol);
    return {{"r_d_c", r.r_d_c}, {"iterations", r.iterations}, {"bracket", {r.lo, r.hi}},
            {"t_star", t_star}, {"lo", lo}, {"hi", hi}, {"tol", tol}};
}

SweepResult cmd_sweep(std::span<const double> t_grid, std::span<const double> r_d_grid, const Settings& settings) {
    require_nonempty(t_grid, "t'");
    require_nonempty(r_d_grid, "r_D");
    const std::size_t nt = t_grid.size();
    const std::size_t cells = nt * r_d_grid.size();
    std::vector<std::array<double, 3>> values(cells);
    std::vector<double> seconds(cells);
    for_each_cell(cells, [&](std::size_t c) {
        const auto start = std::chrono::steady_clock::now();
        const ModelParams p{t_grid[c % nt], r_d_grid[c / nt]};
        p.validate();
        values[c] = {purity(p), spectral::entropy(p, settings.mass_tol), variance(p)};
        seconds[c] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });

    SweepResult result;
    result.table = CsvTable{{"t", "r_d", "purity", "entropy", "variance"}, {}, {1, 0}};
    for (std::size_t c = 0; c < cells; ++c) {
        const double t = t_grid[c % nt];
        const double r = r_d_grid[c / nt];
        result.table.rows.push_back({t, r, values[c][0], values[c][1], values[c][2]});
        result.timings.push_back({t, r, seconds[c]});
    }
    result.table.sort_rows();
    return result;
}

nlohmann::json make_manifest(const std::string& command, std::span<const double> t_grid,
                             std::span<const double> r_d_grid, const Settings& settings,
                             const std::vector<std::string>& outputs, const std::vector<CellTiming>& timings) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : timings) cells.push_back({{"t", c.tprime}, {"r_d", c.r_d}, {"seconds", c.seconds}});
    return {
        {"command", command},
        {"version", DQW_VERSION},
        {"grid", {{"t", std::vector<double>(t_grid.begin(), t_grid.end())},
                  {"r_d", std::vector<double>(r_d_grid.begin(), r_d_grid.end())}}},
        {"settings", {{"mass_tol", settings.mass_tol}, {"eps_tail", settings.eps_tail},
                      {"quad_nodes", settings.quad_nodes}, {"k_nodes", settings.k_nodes}, {"jobs", settings.jobs}}},
        {"outputs", outputs},
        {"cells", cells},
    };
}

namespace {

struct Flags {
    std::optional<double> tprime;
    std::optional<double> r_d;
    std::optional<double> omega_over_hbar;
    std::optional<double> d_coeff;
    std::optional<double> t_phys;
    std::optional<std::string> t_grid;
    std::optional<std::string> rd_list;
    std::string s_range{"-40:40"};
    std::optional<int> k_nodes;
    std::optional<std::string> out;
    std::optional<int> jobs;
    std::optional<std::string> config;
    std::optional<double> mass_tol;
    std::optional<double> eps_tail;
    std::optional<int> quad_nodes;

    double xi{std::nan("")};
    double t_star{wigner::kDefaultTStar};
    double lo{0.1};
    double hi{2.0};
    double tol{1e-4};
    std::string level{"fast"};
};

bool physical(const Flags& f) { return f.omega_over_hbar.has_value(); }

double resolve_tprime(const Flags& f) {
    if (physical(f)) {
        if (!f.t_phys) throw InvalidInput("--omega-over-hbar needs --t");
        return ModelParams::from_physical(*f.omega_over_hbar, f.d_coeff.value_or(0.0), *f.t_phys).tprime;
    }
    if (!f.tprime) throw InvalidInput("missing --tprime (or --omega-over-hbar/--d-coeff/--t)");
    return *f.tprime;
}

std::vector<double> resolve_rd_list(const Flags& f) {
    if (f.rd_list) return parse_list(*f.rd_list);
    if (physical(f)) return {ModelParams::from_physical(*f.omega_over_hbar, f.d_coeff.value_or(0.0), 0.0).r_d};
    if (!f.r_d) throw InvalidInput("missing --rd or --rd-list (or --omega-over-hbar/--d-coeff)");
    return {*f.r_d};
}

double resolve_single_rd(const Flags& f) {
    const auto list = resolve_rd_list(f);
    if (list.size() != 1) throw InvalidInput("this command takes a single r_D value");
    return list.front();
}

std::vector<double> resolve_t_grid(const Flags& f) {
    if (f.t_grid) return parse_grid(*f.t_grid);
    return {resolve_tprime(f)};
}

Settings resolve_settings(const Flags& f) {
    Settings s;
    if (f.config) s = load_config(*f.config, s);
    if (f.mass_tol) s.mass_tol = *f.mass_tol;
    if (f.eps_tail) s.eps_tail = *f.eps_tail;
    if (f.quad_nodes) s.quad_nodes = *f.quad_nodes;
    if (f.k_nodes) s.k_nodes = *f.k_nodes;
    if (f.jobs) s.jobs = *f.jobs;
    if (s.jobs < 0) throw InvalidInput("--jobs must be >= 0");
    return s;
}

void emit_csv(const CsvTable& table, const Flags& f, std::ostream& out, const std::string& command,
              std::span<const double> t_grid, std::span<const double> r_d_grid, const Settings& settings,
              const std::vector<CellTiming>& timings) {
    if (!f.out) {
        table.write(out);
        return;
    }
    {
        std::ofstream file(*f.out, std::ios::binary);
        if (!file) throw IoError("cannot open output file '" + *f.out + "'");
        table.write(file);
    }
    const std::string manifest_path = *f.out + ".manifest.json";
    std::ofstream manifest(manifest_path);
    if (!manifest) throw IoError("cannot open manifest file '" + manifest_path + "'");
    manifest << make_manifest(command, t_grid, r_d_grid, settings, {*f.out}, timings).dump(2) << '\n';
    if (!manifest) throw IoError("failed writing manifest '" + manifest_path + "'");
}

void emit_json(const nlohmann::json& doc, const Flags& f, std::ostream& out) {
    if (!f.out) {
        out << doc.dump(2) << '\n';
        return;
    }
    std::ofstream file(*f.out);
    if (!file) throw IoError("cannot open output file '" + *f.out + "'");
    file << doc.dump(2) << '\n';
    if (!file) throw IoError("failed writing '" + *f.out + "'");
}

int dispatch(const CLI::App& app, const Flags& f, std::ostream& out) {
    const Settings settings = resolve_settings(f);
    kernels::set_thread_count(settings.jobs);
    const auto sites = parse_site_range(f.s_range);
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    if (name == "prob") {
        const double tprime = resolve_tprime(f);
        const auto r_d = resolve_rd_list(f);
        const std::vector<double> t{tprime};
        emit_csv(cmd_prob(tprime, r_d, sites, settings), f, out, name, t, r_d, settings, {});
    } else if (name == "carpet") {
        const auto t = resolve_t_grid(f);
        const std::vector<double> r_d{resolve_single_rd(f)};
        emit_csv(cmd_carpet(t, r_d.front(), sites, settings), f, out, name, t, r_d, settings, {});
    } else if (name == "wigner") {
        const std::vector<double> t{resolve_tprime(f)};
        const std::vector<double> r_d{resolve_single_rd(f)};
        emit_csv(cmd_wigner(t.front(), r_d.front(), sites, settings.k_nodes, settings), f, out, name, t, r_d,
                 settings, {});
    } else if (name == "purity" || name == "entropy" || name == "variance" || name == "cf") {
        const auto t = resolve_t_grid(f);
        const auto r_d = resolve_rd_list(f);
        emit_csv(cmd_scalar(parse_scalar(name), t, r_d, f.xi, settings), f, out, name, t, r_d, settings, {});
    } else if (name == "critical-rd") {
        emit_json(cmd_critical_rd(f.t_star, f.lo, f.hi, f.tol), f, out);
    } else if (name == "validate") {
        if (f.level != "fast" && f.level != "full") throw InvalidInput("--level must be fast or full");
        const auto report = cmd_validate(f.level == "full" ? ValidationLevel::full : ValidationLevel::fast, settings);
        emit_json(report.json, f, out);
        return report.passed ? kSuccess : kNumericalFailure;
    } else if (name == "sweep") {
        const auto t = resolve_t_grid(f);
        const auto r_d = resolve_rd_list(f);
        const auto result = cmd_sweep(t, r_d, settings);
        emit_csv(result.table, f, out, name, t, r_d, settings, result.timings);
    }
    return kSuccess;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form observables of a dissipative quantum walk on a 1D lattice", "dqw"};
    app.set_version_flag("--version", DQW_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--tprime", f.tprime, "Dimensionless time t' = (Omega/hbar) t");
    app.add_option("--rd", f.r_d, "Dissipation ratio r_D = 2D/(Omega/hbar)");
    app.add_option("--omega-over-hbar", f.omega_over_hbar, "Hopping rate Omega/hbar (physical units)");
    app.add_option("--d-coeff", f.d_coeff, "Diffusion constant D (physical units)");
    app.add_option("--t", f.t_phys, "Time t (physical units)");
    app.add_option("--t-grid", f.t_grid, "t' grid a:b:step (inclusive)");
    app.add_option("--rd-list", f.rd_list, "Comma separated r_D values");
    app.add_option("--s-range", f.s_range, "Site range lo:hi")->capture_default_str();
    app.add_option("--k-nodes", f.k_nodes, "Number of k nodes on [-pi, pi]");
    app.add_option("--out", f.out, "Output path (stdout if omitted)");
    app.add_option("--jobs", f.jobs, "Worker threads (0 = OpenMP default)");
    app.add_option("--config", f.config, "key=value file with default tolerances");
    app.add_option("--mass-tol", f.mass_tol, "Truncated probability mass allowed outside a window");
    app.add_option("--eps-tail", f.eps_tail, "Tail tolerance of the Bessel series");
    app.add_option("--quad-nodes", f.quad_nodes, "Quadrature nodes per axis for the oracle");

    app.add_subcommand("prob", "Probability profile P_s (columns r_d,s,p)");
    app.add_subcommand("carpet", "Quantum carpet P_s(t') (columns t,s,p)");
    app.add_subcommand("wigner", "Wigner function grid (columns s,k,w,w_normalized)");
    app.add_subcommand("purity", "Quantum purity Tr rho^2 on a (t', r_D) grid");
    app.add_subcommand("entropy", "von Neumann entropy on a (t', r_D) grid");
    app.add_subcommand("variance", "Position variance on a (t', r_D) grid");
    auto* cf = app.add_subcommand("cf", "Characteristic function G(xi) on a (t', r_D) grid");
    cf->add_option("--xi", f.xi, "Argument xi of G(xi)")->required();
    auto* crit = app.add_subcommand("critical-rd", "Bisection for the r_D where W(0,pi,t*) changes sign");
    crit->add_option("--t-star", f.t_star, "Time t* of the first minimum of W(0,pi,t')")->capture_default_str();
    crit->add_option("--lo", f.lo, "Lower bracket")->capture_default_str();
    crit->add_option("--hi", f.hi, "Upper bracket")->capture_default_str();
    crit->add_option("--tol", f.tol, "Bracket width at termination")->capture_default_str();
    auto* val = app.add_subcommand("validate", "Cross-check series against the quadrature oracle and identities");
    val->add_option("--level", f.level, "fast or full")->capture_default_str();
    app.add_subcommand("sweep", "purity, entropy and variance over a (t', r_D) grid with a run manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kSuccess : kInvalidInput;
    }

    try {
        return dispatch(app, f, out);
    } catch (const InvalidInput& e) {
        err << "dqw: invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const ContractError& e) {
        err << "dqw: invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const NumericalFailure& e) {
        err << "dqw: numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const IoError& e) {
        err << "dqw: i/o error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "dqw: error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

} // namespace dqw::cli
