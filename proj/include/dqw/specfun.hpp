// specfun.hpp — Integer-order Bessel rows J_n(x) and e^{-x} I_n(x)

#pragma once

#include <vector>

namespace dqw::specfun {

inline constexpr double kDefaultEpsTail = 1e-14;

// Truncation of the symmetric Bessel sums sum_{n=-n_max}^{n_max}.
// Remembers the (t', x) it was built for so callers can detect a mismatch.
struct SeriesTruncation {
    int n_max{0};
    double eps_tail{kDefaultEpsTail};
    double tprime{0.0};
    double x{0.0};

    bool built_for(double tp, double xx) const { return tp == tprime && xx == x; }
};

// J_0(x) .. J_{n_max}(x), x >= 0, by Miller backward recurrence normalized
// with sum_n J_n^2 = 1 (sign fixed by J_0 + 2 sum_k J_2k = 1).
// Negative orders: J_{-n} = (-1)^n J_n. Negative x: J_n(-x) = (-1)^n J_n(x).
std::vector<double> bessel_j_row(int n_max, double x);

// e^{-x} I_0(x) .. e^{-x} I_{n_max}(x), x >= 0. The unscaled I is never formed.
std::vector<double> bessel_i_scaled_row(int n_max, double x);

// Single J_n(x) for any integer n and real x.
double bessel_j(int n, double x);

// Single e^{-x} I_n(x) for any integer n and x >= 0.
double bessel_i_scaled(int n, double x);

// Order n_max such that the scaled-I tail beyond +-n_max is below eps_tail and
// |J_m(t')| < eps_tail for |m| > n_max + ceil(t').
SeriesTruncation truncation_order(double tprime, double x, double eps_tail = kDefaultEpsTail);

// Signed-order lookup into a row produced by bessel_j_row; zero past the row end.
inline double j_from_row(const std::vector<double>& row, int m) {
    const int a = m < 0 ? -m : m;
    if (a >= static_cast<int>(row.size())) return 0.0;
    const double v = row[static_cast<std::size_t>(a)];
    return (m < 0 && (a & 1)) ? -v : v;
}

// Signed-order lookup into a scaled-I row (I_{-n} = I_n).
inline double i_from_row(const std::vector<double>& row, int n) {
    const int a = n < 0 ? -n : n;
    if (a >= static_cast<int>(row.size())) return 0.0;
    return row[static_cast<std::size_t>(a)];
}

} // namespace dqw::specfun
