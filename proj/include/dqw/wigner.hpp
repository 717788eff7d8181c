// wigner.hpp — Discrete-position / continuous-momentum Wigner function
//
//   W(s,k,t) = (1/2pi) sum_{s'} <s+s'|rho|s-s'> e^{iks'}
//            = (1/2pi) sum_n J_{2s+2n}(2 t' sin(k/2)) e^{-x} I_n(x)
//
// with k in the first Brillouin zone [-pi, pi].

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dqw/core.hpp"
#include "dqw/kernels.hpp"
#include "dqw/spectral.hpp"

namespace dqw::wigner {

inline constexpr int kDefaultKNodes = 256;
inline constexpr double kDefaultTStar = 1.9;

enum class KGridKind {
    closed,     // n nodes from -pi to pi inclusive
    periodic,   // n nodes -pi + 2 pi j / n, duplicate endpoint excluded
};

std::vector<double> closed_k_nodes(int n);
std::vector<double> periodic_k_nodes(int n);

struct WignerGrid {
    int s_min{0};
    int s_max{0};
    std::vector<double> k_nodes;
    KGridKind kind{KGridKind::closed};
    Eigen::MatrixXd values;   // (site - s_min, k-node)
    ModelParams params;

    int sites() const { return s_max - s_min + 1; }
    double at(int s, std::size_t j) const { return values(s - s_min, static_cast<Eigen::Index>(j)); }

    // Trapezoid weights over k (periodic trapezoid in both layouts).
    std::vector<double> k_weights() const;
    // int dk W(s,k) for each site.
    std::vector<double> position_marginal() const;
    // sum_s W(s,k) for each k node.
    std::vector<double> momentum_marginal() const;
    double total_mass() const;
    double min_value() const;
    double max_abs() const;
};

WignerGrid wigner_grid(const ModelParams& p, int s_min, int s_max, std::vector<double> k_nodes,
                       KGridKind kind = KGridKind::closed, double eps_tail = specfun::kDefaultEpsTail,
                       kernels::Backend backend = kernels::Backend::omp);

double wigner_value(int s, double k, const ModelParams& p, const SeriesTruncation& trunc);

// D = 0: (1/2pi) J_{2s}(2 t' sin(k/2)).
double wigner_qw(int s, double k, double tprime);

// Omega = 0: e^{-x} I_s(x) / 2pi, independent of k.
double wigner_crw(int s, double x);

// 2pi sum_n W_QW(s-n, k) W_CRW(n): the DQW Wigner function as a lattice
// convolution of the closed-walk and classical limits.
double wigner_convolution(int s, double k, const ModelParams& p, const SeriesTruncation& trunc);

// Direct evaluation of the defining sum from stored elements. The phase
// i^{2s'} = (-1)^{s'} is already carried by the window entries.
double wigner_from_density(int s, double k, const spectral::DensityWindow& window);

struct CriticalRd {
    double r_d_c{0.0};
    int iterations{0};
    double lo{0.0};
    double hi{0.0};
};

// Bisection for the root of r_D -> W(0, pi, t_star; r_D). Requires W < 0 at
// lo and W > 0 at hi, otherwise BracketError.
CriticalRd critical_rd(double t_star = kDefaultTStar, double lo = 0.1, double hi = 2.0, double tol = 1e-4);

struct TimeMinimum {
    double t_at_min{0.0};
    double w_min{0.0};
};

// Grid point minimizing W(0, pi, t') for fixed r_D.
TimeMinimum min_wigner_over_time(double r_d, std::span<const double> t_grid);

} // namespace dqw::wigner
