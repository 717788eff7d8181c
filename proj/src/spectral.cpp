// spectral.cpp — Window construction, dephasing, eigen-decomposition, entropy

#include "dqw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "dqw/errors.hpp"
#include "dqw/kernels.hpp"

namespace dqw::spectral {

namespace {

constexpr int kMaxHalfWidth = 200000;

struct WindowPlan {
    int half_width;
    double truncated_mass;
    SeriesTables tables;
};

void require_mass_tol(double mass_tol) {
    if (!(mass_tol > 0.0 && mass_tol <= 1e-6)) {
        throw InvalidInput("mass_tol must lie in (0, 1e-6]");
    }
}

WindowPlan plan_window(const ModelParams& p, double mass_tol, double eps_tail) {
    p.validate();
    require_mass_tol(mass_tol);
    const auto trunc = truncation_for(p, eps_tail);
    if (p.is_initial_state()) {
        return {kMinHalfWidth, 0.0, SeriesTables(p, trunc, kMinHalfWidth)};
    }

    const double x = p.x();
    const int start = static_cast<int>(std::ceil(p.tprime + 6.0 * std::sqrt(x) + 10.0 * std::cbrt(p.tprime) + 20.0));
    int cap = std::max(start, kMinHalfWidth) + 20;
    for (;;) {
        SeriesTables tables(p, trunc, cap);
        std::vector<double> prob(static_cast<std::size_t>(2 * cap + 1));
        kernels::omp::probability_profile(tables, -cap, cap, prob);
        const auto at = [&prob, cap](int s) { return prob[static_cast<std::size_t>(s + cap)]; };

        double inside = at(0);
        for (int L = 1; L <= cap; ++L) {
            inside += at(L) + at(-L);
            const double mass = 1.0 - inside;
            if (L >= kMinHalfWidth && mass < mass_tol) {
                return {L, std::max(mass, 0.0), std::move(tables)};
            }
        }
        cap *= 2;
        if (cap > kMaxHalfWidth) {
            throw NumericalFailure("build_window: truncated mass never dropped below " + std::to_string(mass_tol));
        }
    }
}

// Exact cos(m pi / 2), sin(m pi / 2) from m mod 4.
double cos_quarter_turns(int m) {
    switch (((m % 4) + 4) % 4) {
    case 0: return 1.0;
    case 2: return -1.0;
    default: return 0.0;
    }
}

double sin_quarter_turns(int m) {
    switch (((m % 4) + 4) % 4) {
    case 1: return 1.0;
    case 3: return -1.0;
    default: return 0.0;
    }
}

double plogp(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

void require_positive_time(const ModelParams& p, const char* who) {
    p.validate();
    if (!(p.tprime > 0.0)) {
        throw InvalidInput(std::string(who) + ": t' must be > 0 (long-time formulas carry 1/t')");
    }
}

} // namespace

int window_half_width(const ModelParams& p, double mass_tol, double eps_tail) {
    return plan_window(p, mass_tol, eps_tail).half_width;
}

DensityWindow build_window(const ModelParams& p, double mass_tol, double eps_tail) {
    auto plan = plan_window(p, mass_tol, eps_tail);
    DensityWindow w;
    w.half_width = plan.half_width;
    w.params = p;
    w.truncated_mass = plan.truncated_mass;

    const int dim = w.dim();
    if (p.is_initial_state()) {
        w.elements = Eigen::MatrixXcd::Zero(dim, dim);
        w.elements(w.index(0), w.index(0)) = 1.0;
        return w;
    }

    Eigen::MatrixXd real_part;
    kernels::omp::dephased_window(plan.tables, w.half_width, real_part);
    w.elements.resize(dim, dim);
    for (int b = 0; b < dim; ++b) {
        for (int a = 0; a < dim; ++a) w.elements(a, b) = i_power(a - b) * real_part(a, b);
    }
    return w;
}

Eigen::MatrixXd dephase_to_real(const DensityWindow& window) {
    const int dim = window.dim();
    Eigen::MatrixXd r(dim, dim);
    for (int b = 0; b < dim; ++b) {
        for (int a = 0; a < dim; ++a) {
            const ComplexAmplitude v = window.elements(a, b) * i_power(b - a);
            if (std::abs(v.imag()) > 1e-10) {
                throw ContractError("dephase_to_real: element does not carry the i^(s1-s2) phase structure");
            }
            r(a, b) = v.real();
        }
    }
    return r;
}

SpectrumResult eigen_spectrum(const DensityWindow& window, double eps_clamp) {
    if (!(eps_clamp >= 0.0)) {
        throw InvalidInput("eigen_spectrum: eps_clamp must be >= 0");
    }
    const Eigen::MatrixXd r = dephase_to_real(window);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(r, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("eigen_spectrum: symmetric eigensolver did not converge");
    }

    SpectrumResult out;
    const auto& ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());

    for (auto& v : out.eigenvalues) {
        if (v >= 0.0) continue;
        if (v < -eps_clamp) {
            throw NumericalFailure("eigen_spectrum: eigenvalue " + std::to_string(v) + " below clamp -" +
                                   std::to_string(eps_clamp));
        }
        v = 0.0;
        ++out.clamped_count;
    }

    double total = 0.0;
    for (double v : out.eigenvalues) total += v;
    for (auto& v : out.eigenvalues) v /= total;
    out.renormalized = true;
    return out;
}

double entropy_of(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double v : eigenvalues) s -= plogp(v);
    return s;
}

double entropy(const ModelParams& p, double mass_tol) {
    p.validate();
    if (p.is_initial_state()) return 0.0;
    return entropy_of(eigen_spectrum(build_window(p, mass_tol)).eigenvalues);
}

double entropy_asymptotic(const ModelParams& p) {
    p.validate();
    const double e = std::exp(-2.0 * p.x());
    return -plogp(0.5 * (1.0 - e)) - plogp(0.5 * (1.0 + e));
}

SmallDEntropy entropy_small_d(const ModelParams& p) {
    p.validate();
    const double x = p.x();
    return {-plogp(x), x >= 1.0};
}

EigenPair asymptotic_eigenvalues(int L, const ModelParams& p) {
    require_positive_time(p, "asymptotic_eigenvalues");
    if (L < 1) {
        throw InvalidInput("asymptotic_eigenvalues: L must be >= 1");
    }
    const double c = 2.0 / (std::numbers::pi * p.tprime);
    const double sn = std::sin(2.0 * p.tprime);
    const double lf = static_cast<double>(L);
    if (p.r_d == 0.0) return {c * (lf - sn), 0.0};

    const double e = std::exp(-2.0 * p.x());
    const double root = std::sqrt(1.0 + (lf * lf - 1.0) * e * e - 2.0 * lf * e * sn + e * e * sn * sn);
    return {c * (lf - sn + root), c * (lf - sn - root)};
}

CoherentStructure asymptotic_structure(const ModelParams& p) {
    require_positive_time(p, "asymptotic_structure");
    const double c = 2.0 / (std::numbers::pi * p.tprime);
    const double e = std::exp(-2.0 * p.x());
    return {c * (1.0 - std::sin(2.0 * p.tprime) * e), c * std::cos(2.0 * p.tprime) * e};
}

ComplexAmplitude structure_element(int s1, int s2, const ModelParams& p) {
    const auto ab = asymptotic_structure(p);
    const bool odd1 = (s1 & 1) != 0;
    const bool odd2 = (s2 & 1) != 0;
    if (odd1 == odd2) return {ab.a, 0.0};
    return odd1 ? ComplexAmplitude{0.0, -ab.b} : ComplexAmplitude{0.0, ab.b};
}

namespace diagnostic {

ComplexAmplitude asymptotic_density_element(int s1, int s2, const ModelParams& p) {
    require_positive_time(p, "asymptotic_density_element");
    const double c = 2.0 / (std::numbers::pi * p.tprime);
    const double e = std::exp(-2.0 * p.x());
    const int sum = s1 + s2;
    const int diff = s1 - s2;
    // cos(pi m) = cos(2m pi/2)
    const double leading = cos_quarter_turns(2 * sum) + cos_quarter_turns(2 * diff);
    const double re = leading + e * std::sin(2.0 * p.tprime) * cos_quarter_turns(sum) * cos_quarter_turns(diff);
    const double im = -e * std::cos(2.0 * p.tprime) * sin_quarter_turns(sum) * sin_quarter_turns(diff);
    return c * ComplexAmplitude{re, im};
}

} // namespace diagnostic

} // namespace dqw::spectral
