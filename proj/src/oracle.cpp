// oracle.cpp — Periodic-trapezoid quadrature of the Fourier-space solution

#include "dqw/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dqw/errors.hpp"
#include "dqw/kernels.hpp"

namespace dqw::oracle {

void QuadratureSpec::validate() const {
    if (nodes_per_axis < 16 || (nodes_per_axis % 2) != 0) {
        throw InvalidInput("QuadratureSpec: nodes_per_axis must be even and >= 16 (got " +
                           std::to_string(nodes_per_axis) + ")");
    }
}

std::complex<double> propagator_exponent(double k1, double k2, const ModelParams& p) {
    p.validate();
    if (!std::isfinite(k1) || !std::isfinite(k2)) {
        throw InvalidInput("propagator_exponent: k1, k2 must be finite");
    }
    return {p.r_d * (std::cos(k1 - k2) - 1.0), std::cos(k1) - std::cos(k2)};
}

double momentum_diagonal(double k, const ModelParams& p) {
    p.validate();
    if (!std::isfinite(k)) {
        throw InvalidInput("momentum_diagonal: k must be finite");
    }
    return 0.5 * std::numbers::inv_pi;
}

PropagatorTable::PropagatorTable(const ModelParams& p, const QuadratureSpec& q)
    : params_(p), n_(q.nodes_per_axis) {
    p.validate();
    q.validate();
    if (p.tprime > q.tprime_ceiling()) {
        throw InvalidInput("quadrature oracle: t'=" + std::to_string(p.tprime) + " exceeds the validity ceiling " +
                           std::to_string(q.tprime_ceiling()) + " for " + std::to_string(n_) +
                           " nodes per axis");
    }

    roots_.resize(n_);
    for (int m = 0; m < n_; ++m) {
        roots_(m) = std::polar(1.0, 2.0 * std::numbers::pi * m / n_);
    }

    // k_j = -pi + 2 pi j / N  =>  cos k_j = -cos(2 pi j / N), cos(k_a - k_b) = cos(2 pi (a-b) / N)
    const double x = p.x();
    samples_.resize(n_, n_);
    for (int b = 0; b < n_; ++b) {
        const double cos_b = -roots_(b).real();
        for (int a = 0; a < n_; ++a) {
            const double cos_a = -roots_(a).real();
            const double cos_ab = roots_(((a - b) % n_ + n_) % n_).real();
            samples_(a, b) = std::exp(x * (cos_ab - 1.0)) * std::polar(1.0, p.tprime * (cos_a - cos_b));
        }
    }
}

std::complex<double> PropagatorTable::site_phase(int j, int s) const {
    const long long idx = ((static_cast<long long>(j) * s) % n_ + n_) % n_;
    const std::complex<double> w = roots_(static_cast<Eigen::Index>(idx));
    return (s & 1) ? -w : w;
}

std::complex<double> PropagatorTable::element(int s1, int s2) const {
    std::complex<double> acc{0.0, 0.0};
    for (int b = 0; b < n_; ++b) {
        std::complex<double> inner{0.0, 0.0};
        for (int a = 0; a < n_; ++a) inner += site_phase(a, s1) * samples_(a, b);
        acc += inner * std::conj(site_phase(b, s2));
    }
    return acc / (static_cast<double>(n_) * n_);
}

std::complex<double> density_element_quadrature(int s1, int s2, const ModelParams& p, const QuadratureSpec& q) {
    return PropagatorTable(p, q).element(s1, s2);
}

Eigen::MatrixXcd density_block_quadrature(int s_lo, int s_hi, const ModelParams& p, const QuadratureSpec& q) {
    const PropagatorTable table(p, q);
    Eigen::MatrixXcd out;
    kernels::omp::quadrature_block(table, s_lo, s_hi, out);
    return out;
}

} // namespace dqw::oracle
