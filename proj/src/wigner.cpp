// wigner.cpp — Wigner function: closed form, limits, convolution, threshold

#include "dqw/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dqw/errors.hpp"

namespace dqw::wigner {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;
constexpr double kKSlack = 1e-12;

void require_k(double k) {
    if (!std::isfinite(k) || k < -std::numbers::pi - kKSlack || k > std::numbers::pi + kKSlack) {
        throw InvalidInput("Wigner: k must lie in [-pi, pi] (got " + std::to_string(k) + ")");
    }
}

void require_truncation(const ModelParams& p, const SeriesTruncation& trunc) {
    if (!trunc.built_for(p.tprime, p.x())) {
        throw ContractError("Wigner: SeriesTruncation was built for different parameters");
    }
}

double w_at_pi(double tprime, double r_d) {
    const ModelParams p{tprime, r_d};
    return wigner_value(0, std::numbers::pi, p, truncation_for(p));
}

} // namespace

std::vector<double> closed_k_nodes(int n) {
    if (n < 2) throw InvalidInput("closed_k_nodes: need at least 2 nodes");
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = -std::numbers::pi + kTwoPi * j / (n - 1);
    k.back() = std::numbers::pi;
    return k;
}

std::vector<double> periodic_k_nodes(int n) {
    if (n < 1) throw InvalidInput("periodic_k_nodes: need at least 1 node");
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = -std::numbers::pi + kTwoPi * j / n;
    return k;
}

std::vector<double> WignerGrid::k_weights() const {
    const auto n = k_nodes.size();
    std::vector<double> w(n, 0.0);
    if (kind == KGridKind::periodic) {
        std::fill(w.begin(), w.end(), kTwoPi / static_cast<double>(n));
    } else if (n >= 2) {
        const double h = kTwoPi / static_cast<double>(n - 1);
        std::fill(w.begin(), w.end(), h);
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
    }
    return w;
}

std::vector<double> WignerGrid::position_marginal() const {
    const auto w = k_weights();
    std::vector<double> out(static_cast<std::size_t>(sites()), 0.0);
    for (int a = 0; a < sites(); ++a) {
        double acc = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * values(a, static_cast<Eigen::Index>(j));
        out[static_cast<std::size_t>(a)] = acc;
    }
    return out;
}

std::vector<double> WignerGrid::momentum_marginal() const {
    std::vector<double> out(k_nodes.size(), 0.0);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = values.col(static_cast<Eigen::Index>(j)).sum();
    return out;
}

double WignerGrid::total_mass() const {
    double acc = 0.0;
    for (double v : position_marginal()) acc += v;
    return acc;
}

double WignerGrid::min_value() const { return values.size() ? values.minCoeff() : 0.0; }

double WignerGrid::max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }

WignerGrid wigner_grid(const ModelParams& p, int s_min, int s_max, std::vector<double> k_nodes, KGridKind kind,
                       double eps_tail, kernels::Backend backend) {
    p.validate();
    if (s_max < s_min) throw InvalidInput("wigner_grid: empty site range");
    if (k_nodes.empty()) throw InvalidInput("wigner_grid: no k nodes");
    for (double k : k_nodes) require_k(k);

    WignerGrid g;
    g.s_min = s_min;
    g.s_max = s_max;
    g.kind = kind;
    g.params = p;
    g.k_nodes = std::move(k_nodes);

    const auto trunc = truncation_for(p, eps_tail);
    const auto nk = g.k_nodes.size();
    std::vector<double> flat(static_cast<std::size_t>(g.sites()) * nk);
    if (backend == kernels::Backend::serial) {
        kernels::serial::wigner_grid(p, trunc, s_min, s_max, g.k_nodes, flat);
    } else {
        kernels::omp::wigner_grid(p, trunc, s_min, s_max, g.k_nodes, flat);
    }
    g.values.resize(g.sites(), static_cast<Eigen::Index>(nk));
    for (int a = 0; a < g.sites(); ++a) {
        for (std::size_t j = 0; j < nk; ++j) {
            g.values(a, static_cast<Eigen::Index>(j)) = flat[static_cast<std::size_t>(a) * nk + j];
        }
    }
    return g;
}

double wigner_value(int s, double k, const ModelParams& p, const SeriesTruncation& trunc) {
    p.validate();
    require_k(k);
    require_truncation(p, trunc);
    const auto i_row = specfun::bessel_i_scaled_row(trunc.n_max, p.x());
    double w = 0.0;
    kernels::wigner_column(p, trunc, i_row, s, s, k, &w, 1);
    return w;
}

double wigner_qw(int s, double k, double tprime) {
    require_k(k);
    if (!std::isfinite(tprime) || tprime < 0.0) {
        throw InvalidInput("wigner_qw: t' must be finite and >= 0");
    }
    return kInvTwoPi * specfun::bessel_j(2 * s, 2.0 * tprime * std::sin(0.5 * k));
}

double wigner_crw(int s, double x) { return kInvTwoPi * specfun::bessel_i_scaled(s, x); }

double wigner_convolution(int s, double k, const ModelParams& p, const SeriesTruncation& trunc) {
    p.validate();
    require_k(k);
    require_truncation(p, trunc);
    const double x = p.x();
    double acc = 0.0;
    for (int n = -trunc.n_max; n <= trunc.n_max; ++n) {
        acc += wigner_qw(s - n, k, p.tprime) * wigner_crw(n, x);
    }
    return kTwoPi * acc;
}

double wigner_from_density(int s, double k, const spectral::DensityWindow& window) {
    require_k(k);
    if (!window.contains(s)) {
        throw ContractError("wigner_from_density: site " + std::to_string(s) + " outside window of half width " +
                            std::to_string(window.half_width));
    }
    const int reach = window.half_width - std::abs(s);
    ComplexAmplitude acc{0.0, 0.0};
    for (int sp = -reach; sp <= reach; ++sp) {
        acc += window.at(s + sp, s - sp) * std::polar(1.0, k * sp);
    }
    acc *= kInvTwoPi;
    if (std::abs(acc.imag()) >= 1e-10) {
        throw NumericalFailure("wigner_from_density: imaginary residue " + std::to_string(acc.imag()));
    }
    return acc.real();
}

CriticalRd critical_rd(double t_star, double lo, double hi, double tol) {
    if (!std::isfinite(t_star) || !(t_star > 0.0)) throw InvalidInput("critical_rd: t_star must be > 0");
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(lo < hi)) {
        throw InvalidInput("critical_rd: need 0 <= lo < hi");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("critical_rd: tol must be > 0");

    const double w_lo = w_at_pi(t_star, lo);
    const double w_hi = w_at_pi(t_star, hi);
    if (!(w_lo < 0.0 && w_hi > 0.0)) {
        throw BracketError("critical_rd: no sign change of W(0,pi," + std::to_string(t_star) + ") on [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "] (W(lo)=" + std::to_string(w_lo) +
                           ", W(hi)=" + std::to_string(w_hi) + ")");
    }

    CriticalRd out{0.0, 0, lo, hi};
    while (out.hi - out.lo > tol) {
        const double mid = 0.5 * (out.lo + out.hi);
        (w_at_pi(t_star, mid) < 0.0 ? out.lo : out.hi) = mid;
        ++out.iterations;
    }
    out.r_d_c = 0.5 * (out.lo + out.hi);
    return out;
}

TimeMinimum min_wigner_over_time(double r_d, std::span<const double> t_grid) {
    if (t_grid.empty()) throw InvalidInput("min_wigner_over_time: empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw InvalidInput("min_wigner_over_time: grid must be increasing");
    }
    TimeMinimum best{t_grid.front(), std::numeric_limits<double>::infinity()};
    for (double t : t_grid) {
        const double w = w_at_pi(t, r_d);
        if (w < best.w_min) best = {t, w};
    }
    return best;
}

} // namespace dqw::wigner
