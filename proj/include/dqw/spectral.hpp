// spectral.hpp — Finite density-matrix windows, spectra and von Neumann entropy

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dqw/core.hpp"

namespace dqw::spectral {

inline constexpr double kDefaultMassTol = 1e-12;
inline constexpr double kDefaultClamp = 1e-12;
inline constexpr int kMinHalfWidth = 20;

// rho(t) restricted to sites [-L, L]; row/column a <-> site a - L.
struct DensityWindow {
    int half_width{kMinHalfWidth};
    Eigen::MatrixXcd elements;
    ModelParams params;
    double truncated_mass{0.0};   // 1 - sum_{|s|<=L} P_s

    int dim() const { return 2 * half_width + 1; }
    bool contains(int s) const { return s >= -half_width && s <= half_width; }
    Eigen::Index index(int s) const { return static_cast<Eigen::Index>(s + half_width); }
    ComplexAmplitude at(int s1, int s2) const { return elements(index(s1), index(s2)); }
};

struct SpectrumResult {
    std::vector<double> eigenvalues;   // descending
    int clamped_count{0};
    bool renormalized{false};
};

// Smallest L >= 20 whose truncated probability mass is below mass_tol. The
// search starts from L = ceil(t' + 6 sqrt(x) + 10 t'^{1/3} + 20).
int window_half_width(const ModelParams& p, double mass_tol = kDefaultMassTol,
                      double eps_tail = specfun::kDefaultEpsTail);

DensityWindow build_window(const ModelParams& p, double mass_tol = kDefaultMassTol,
                           double eps_tail = specfun::kDefaultEpsTail);

// Conjugation by diag(i^{-s}) strips the i^{s1-s2} phase: R is real symmetric
// and has the same spectrum as the window.
Eigen::MatrixXd dephase_to_real(const DensityWindow& window);

// Eigenvalues of the dephased matrix, descending. Values in [-eps_clamp, 0)
// are set to 0; anything more negative is a NumericalFailure. The result is
// renormalized to unit sum.
SpectrumResult eigen_spectrum(const DensityWindow& window, double eps_clamp = kDefaultClamp);

// -sum Lambda ln Lambda with 0 ln 0 = 0.
double entropy_of(const std::vector<double>& eigenvalues);

double entropy(const ModelParams& p, double mass_tol = kDefaultMassTol);

// Long-time two-level form with e^{-4Dt} = e^{-2x}:
//   S = -((1-e)/2) ln((1-e)/2) - ((1+e)/2) ln((1+e)/2).
// Intended regime r_D << 1, t' >> 1 (not enforced).
double entropy_asymptotic(const ModelParams& p);

struct SmallDEntropy {
    double value{0.0};
    bool outside_regime{false};   // x = r_D t' >= 1
};

// -x ln x, x = 2Dt.
SmallDEntropy entropy_small_d(const ModelParams& p);

struct EigenPair {
    double plus{0.0};
    double minus{0.0};
};

// Two non-null eigenvalues of the L x L long-time {A, +-iB} matrix,
// prefactor 2/(pi t'), phase 2t', decay e^{-2x}. At r_D = 0 returns the
// single eigenvalue (2/(pi t'))(L - sin 2t') and 0.
EigenPair asymptotic_eigenvalues(int L, const ModelParams& p);

struct CoherentStructure {
    double a{0.0};   // (2/(pi t')) (1 - sin(2t') e^{-2x})
    double b{0.0};   // (2/(pi t')) cos(2t') e^{-2x}
};

CoherentStructure asymptotic_structure(const ModelParams& p);

// {A, +-iB} pattern: A when s1, s2 share parity, -iB for (odd, even),
// +iB for (even, odd).
ComplexAmplitude structure_element(int s1, int s2, const ModelParams& p);

namespace diagnostic {

// Stationary-phase long-time element, evaluated term by term as printed:
//   (2/(pi t')) { cos pi(s1+s2) + cos pi(s1-s2)
//                 + e^{-2x} sin(2t') cos((s1+s2)pi/2) cos((s1-s2)pi/2)
//                 - i e^{-2x} cos(2t') sin((s1+s2)pi/2) sin((s1-s2)pi/2) }
// Its diagonal is O(1) off from the envelope of J_s(t')^2; kept for
// comparison only, nothing else depends on it.
ComplexAmplitude asymptotic_density_element(int s1, int s2, const ModelParams& p);

} // namespace diagnostic

} // namespace dqw::spectral
