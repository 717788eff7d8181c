// oracle.hpp — Fourier-space solution of the master equation and direct quadrature
//
// Independent of every Bessel series in the library. In momentum space the
// master equation is diagonal,
//
//   d/dt <k1|rho|k2> = F(k1,k2) <k1|rho|k2>,
//   F / (Omega/hbar) = i (cos k1 - cos k2) + r_D (cos(k1 - k2) - 1),
//
// and for rho(0) = |0><0| the site elements are the double Fourier integral
//
//   <s1|rho(t')|s2> = (1/2pi)^2 int int dk1 dk2 e^{i(k1 s1 - k2 s2)} e^{t' F(k1,k2)}.
//
// The integrand is entire and 2pi-periodic in both variables, so a uniform
// periodic trapezoid rule converges spectrally.

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "dqw/params.hpp"

namespace dqw::oracle {

struct QuadratureSpec {
    int nodes_per_axis{256};

    void validate() const;
    // Largest t' the rule is trusted for (nodes_per_axis / 8).
    double tprime_ceiling() const { return nodes_per_axis / 8.0; }
};

// F(k1,k2) per unit t'. Its real part is never positive.
std::complex<double> propagator_exponent(double k1, double k2, const ModelParams& p);

// <k|rho(t)|k> = 1/2pi for every k and t (localized initial state).
double momentum_diagonal(double k, const ModelParams& p);

// Samples e^{t' F(k1_a, k2_b)} on the periodic grid k_j = -pi + 2pi j / N,
// together with the phase table needed to go back to sites. Immutable; the
// same table serves any number of (s1, s2) elements.
class PropagatorTable {
public:
    PropagatorTable(const ModelParams& p, const QuadratureSpec& q);

    int nodes() const { return n_; }
    const ModelParams& params() const { return params_; }
    const Eigen::MatrixXcd& samples() const { return samples_; }

    // e^{i k_j s} = (-1)^s e^{2 pi i (j s mod N) / N}, reduced exactly in integers.
    std::complex<double> site_phase(int j, int s) const;

    // Single element by the full N x N trapezoid sum.
    std::complex<double> element(int s1, int s2) const;

private:
    ModelParams params_;
    int n_;
    Eigen::MatrixXcd samples_;
    Eigen::VectorXcd roots_;   // e^{2 pi i m / N}
};

std::complex<double> density_element_quadrature(int s1, int s2, const ModelParams& p,
                                                const QuadratureSpec& q = {});

// Elements for s1, s2 in [s_lo, s_hi] (row/col 0 <-> s_lo), OpenMP backend.
Eigen::MatrixXcd density_block_quadrature(int s_lo, int s_hi, const ModelParams& p,
                                          const QuadratureSpec& q = {});

} // namespace dqw::oracle
