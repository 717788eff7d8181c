// validate.cpp — Self-check suite run by `dqw validate`

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "dqw/cli.hpp"
#include "dqw/core.hpp"
#include "dqw/errors.hpp"
#include "dqw/oracle.hpp"
#include "dqw/spectral.hpp"
#include "dqw/wigner.hpp"

namespace dqw::cli {

namespace {

struct Check {
    std::string name;
    std::string params;
    double residual;
    double tolerance;
};

std::string label(const ModelParams& p) {
    return "t'=" + format_double(p.tprime) + ", r_d=" + format_double(p.r_d);
}

double oracle_residual(const ModelParams& p, const Settings& settings) {
    constexpr int kReach = 20;
    const oracle::QuadratureSpec q{settings.quad_nodes};
    const auto quad = oracle::density_block_quadrature(-kReach, kReach, p, q);
    const auto trunc = truncation_for(p, settings.eps_tail);
    const SeriesTables tables(p, trunc, kReach);
    double worst = 0.0;
    for (int a = -kReach; a <= kReach; ++a) {
        for (int b = -kReach; b <= kReach; ++b) {
            worst = std::max(worst, std::abs(tables.density_element(a, b) - quad(a + kReach, b + kReach)));
        }
    }
    return worst;
}

double quadrature_hermiticity(const ModelParams& p, const Settings& settings) {
    const auto quad = oracle::density_block_quadrature(-10, 10, p, oracle::QuadratureSpec{settings.quad_nodes});
    return (quad - quad.adjoint()).cwiseAbs().maxCoeff();
}

double normalization_residual(const ModelParams& p, const Settings& settings) {
    const auto w = spectral::build_window(p, settings.mass_tol, settings.eps_tail);
    return std::abs(w.elements.diagonal().real().sum() - 1.0);
}

double variance_residual(const ModelParams& p, const Settings& settings) {
    const auto w = spectral::build_window(p, settings.mass_tol, settings.eps_tail);
    double m2 = 0.0;
    for (int s = -w.half_width; s <= w.half_width; ++s) m2 += static_cast<double>(s) * s * w.at(s, s).real();
    const double expected = variance(p);
    return std::abs(m2 - expected) / expected;
}

double purity_residual(const ModelParams& p, const Settings& settings) {
    const auto w = spectral::build_window(p, settings.mass_tol, settings.eps_tail);
    return std::abs(w.elements.squaredNorm() - purity(p));
}

double cf_residual(const ModelParams& p, double xi, const Settings& settings) {
    const auto w = spectral::build_window(p, settings.mass_tol, settings.eps_tail);
    double direct = 0.0;
    for (int s = -w.half_width; s <= w.half_width; ++s) direct += w.at(s, s).real() * std::cos(xi * s);
    return std::abs(direct - characteristic_function(xi, p));
}

double wigner_marginal_residual(const ModelParams& p, const Settings& settings) {
    const int reach = spectral::window_half_width(p, settings.mass_tol, settings.eps_tail);
    const auto grid = wigner::wigner_grid(p, -reach, reach, wigner::periodic_k_nodes(settings.k_nodes),
                                          wigner::KGridKind::periodic, settings.eps_tail);
    const auto trunc = truncation_for(p, settings.eps_tail);
    const SeriesTables tables(p, trunc, reach);
    double worst = 0.0;
    const auto pos = grid.position_marginal();
    for (int s = -reach; s <= reach; ++s) {
        worst = std::max(worst, std::abs(pos[static_cast<std::size_t>(s + reach)] - tables.probability(s)));
    }
    for (double m : grid.momentum_marginal()) worst = std::max(worst, std::abs(m - 0.5 * std::numbers::inv_pi));
    return worst;
}

double convolution_residual(const ModelParams& p, const Settings& settings) {
    const auto trunc = truncation_for(p, settings.eps_tail);
    const auto k = wigner::closed_k_nodes(20);
    double worst = 0.0;
    for (int s = -10; s < 10; ++s) {
        for (double kk : k) {
            worst = std::max(worst, std::abs(wigner::wigner_convolution(s, kk, p, trunc) -
                                             wigner::wigner_value(s, kk, p, trunc)));
        }
    }
    return worst;
}

double entropy_asymptotic_residual(const ModelParams& p, const Settings& settings) {
    const double s = spectral::entropy(p, settings.mass_tol);
    const double a = spectral::entropy_asymptotic(p);
    return std::abs(s - a) / a;
}

} // namespace

ValidationReport cmd_validate(ValidationLevel level, const Settings& settings) {
    std::vector<Check> checks;
    const auto add = [&](std::string name, const ModelParams& p, double tolerance,
                         const std::function<double()>& fn) {
        checks.push_back({std::move(name), label(p), fn(), tolerance});
    };

    for (const ModelParams p : {ModelParams{1, 0}, ModelParams{4, 0.5}, ModelParams{8, 2}, ModelParams{10, 10}}) {
        add("oracle_equivalence", p, 1e-9, [&] { return oracle_residual(p, settings); });
        add("quadrature_hermiticity", p, 1e-11, [&] { return quadrature_hermiticity(p, settings); });
    }

    const std::vector<double> rd_set = level == ValidationLevel::full
                                           ? std::vector<double>{0, 0.05, 0.5, 1, 5, 10}
                                           : std::vector<double>{0, 0.5, 10};
    const std::vector<double> t_set = level == ValidationLevel::full ? std::vector<double>{1, 10, 40}
                                                                     : std::vector<double>{1, 10};
    for (double t : t_set) {
        for (double r : rd_set) {
            const ModelParams p{t, r};
            add("normalization", p, 1e-10, [&] { return normalization_residual(p, settings); });
            add("variance_law", p, 1e-8, [&] { return variance_residual(p, settings); });
            add("purity_window", p, 1e-6, [&] { return purity_residual(p, settings); });
        }
    }

    for (double xi : {0.3, 1.0, 2.5}) {
        const ModelParams p{10, 0.5};
        add("characteristic_function xi=" + format_double(xi), p, 1e-10,
            [&] { return cf_residual(p, xi, settings); });
    }

    {
        const ModelParams p{5, 0.5};
        add("wigner_marginals", p, 1e-8, [&] { return wigner_marginal_residual(p, settings); });
        add("wigner_convolution", p, 1e-9, [&] { return convolution_residual(p, settings); });
    }

    if (level == ValidationLevel::full) {
        const ModelParams p{100, 0.005};
        add("entropy_asymptotic", p, 0.15, [&] { return entropy_asymptotic_residual(p, settings); });
    }

    ValidationReport report;
    report.passed = true;
    nlohmann::json records = nlohmann::json::array();
    for (const auto& c : checks) {
        const bool ok = std::isfinite(c.residual) && c.residual < c.tolerance;
        report.passed = report.passed && ok;
        records.push_back({{"name", c.name}, {"params", c.params}, {"residual", c.residual},
                           {"tolerance", c.tolerance}, {"passed", ok}});
    }
    report.json = {{"level", level == ValidationLevel::full ? "full" : "fast"},
                   {"passed", report.passed},
                   {"checks", records}};
    return report;
}

} // namespace dqw::cli
