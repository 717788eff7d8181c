// specfun.cpp — Miller backward recurrence for J_n and scaled I_n rows

#include "dqw/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqw/errors.hpp"

namespace dqw::specfun {

namespace {

// Below this argument the two-term ascending series is exact to ~1e-22 relative.
constexpr double kSmallArg = 1e-5;

// Rescale thresholds for the unnormalized recurrences. J uses squares in its
// normalization, so it must stay well below sqrt(DBL_MAX).
constexpr double kJRescaleAt = 1e150;
constexpr double kIRescaleAt = 1e250;

void require_order(int n_max, const char* who) {
    if (n_max < 0) {
        throw InvalidInput(std::string(who) + ": n_max must be >= 0");
    }
}

// Start index for the backward recurrence: even, comfortably past both the
// requested order and the turning point n ~ x.
int miller_start(int n_max, double x) {
    const double top = std::max(static_cast<double>(n_max), std::ceil(x)) + 1.0;
    int m = static_cast<int>(top + std::ceil(std::sqrt(160.0 * top))) + 20;
    if (m & 1) ++m;
    return m;
}

// (x/2)^n / n! * (1 + sign * (x/2)^2 / (n+1)), sign = -1 for J, +1 for I.
std::vector<double> small_arg_row(int n_max, double x, double sign) {
    std::vector<double> row(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double half = 0.5 * x;
    double lead = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) lead *= half / n;
        if (lead == 0.0) break;
        row[static_cast<std::size_t>(n)] = lead * (1.0 + sign * half * half / (n + 1));
    }
    return row;
}

} // namespace

std::vector<double> bessel_j_row(int n_max, double x) {
    require_order(n_max, "bessel_j_row");
    if (!std::isfinite(x)) {
        throw InvalidInput("bessel_j_row: x must be finite");
    }
    if (x < 0.0) {
        auto row = bessel_j_row(n_max, -x);
        for (std::size_t n = 1; n < row.size(); n += 2) row[n] = -row[n];
        return row;
    }

    std::vector<double> row(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        row[0] = 1.0;
        return row;
    }
    if (x < kSmallArg) {
        return small_arg_row(n_max, x, -1.0);
    }

    const int m = miller_start(n_max, x);
    std::vector<double> f(static_cast<std::size_t>(m) + 2, 0.0);
    f[static_cast<std::size_t>(m)] = 1.0;
    const double two_over_x = 2.0 / x;
    for (int k = m; k >= 1; --k) {
        const auto uk = static_cast<std::size_t>(k);
        f[uk - 1] = k * two_over_x * f[uk] - f[uk + 1];
        if (std::abs(f[uk - 1]) > kJRescaleAt) {
            for (std::size_t j = uk - 1; j <= static_cast<std::size_t>(m); ++j) f[j] /= kJRescaleAt;
        }
    }

    // sum_n J_n^2 = 1 fixes the magnitude; J_0 + 2 sum_k J_2k = 1 fixes the sign.
    double sum_sq = f[0] * f[0];
    double sum_even = f[0];
    for (int k = 1; k <= m; ++k) {
        const double v = f[static_cast<std::size_t>(k)];
        sum_sq += 2.0 * v * v;
        if ((k & 1) == 0) sum_even += 2.0 * v;
    }
    const double scale = (sum_even < 0.0 ? -1.0 : 1.0) / std::sqrt(sum_sq);
    for (int n = 0; n <= n_max; ++n) {
        row[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n)] * scale;
    }
    return row;
}

std::vector<double> bessel_i_scaled_row(int n_max, double x) {
    require_order(n_max, "bessel_i_scaled_row");
    if (!std::isfinite(x) || x < 0.0) {
        throw InvalidInput("bessel_i_scaled_row: x must be finite and >= 0");
    }

    std::vector<double> row(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        row[0] = 1.0;
        return row;
    }
    if (x < kSmallArg) {
        row = small_arg_row(n_max, x, +1.0);
        const double damp = std::exp(-x);
        for (auto& v : row) v *= damp;
        return row;
    }

    const int m = miller_start(n_max, x);
    std::vector<double> f(static_cast<std::size_t>(m) + 2, 0.0);
    f[static_cast<std::size_t>(m)] = 1.0;
    const double two_over_x = 2.0 / x;
    for (int k = m; k >= 1; --k) {
        const auto uk = static_cast<std::size_t>(k);
        f[uk - 1] = k * two_over_x * f[uk] + f[uk + 1];
        if (f[uk - 1] > kIRescaleAt) {
            for (std::size_t j = uk - 1; j <= static_cast<std::size_t>(m); ++j) f[j] /= kIRescaleAt;
        }
    }

    // e^{-x} (I_0 + 2 sum_{n>=1} I_n) = 1; every term is positive.
    double sum = f[0];
    for (int k = 1; k <= m; ++k) sum += 2.0 * f[static_cast<std::size_t>(k)];
    for (int n = 0; n <= n_max; ++n) {
        row[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n)] / sum;
    }
    return row;
}

double bessel_j(int n, double x) {
    const int a = n < 0 ? -n : n;
    return j_from_row(bessel_j_row(a, x), n);
}

double bessel_i_scaled(int n, double x) {
    const int a = n < 0 ? -n : n;
    return bessel_i_scaled_row(a, x)[static_cast<std::size_t>(a)];
}

SeriesTruncation truncation_order(double tprime, double x, double eps_tail) {
    if (!std::isfinite(tprime) || !std::isfinite(x) || tprime < 0.0 || x < 0.0) {
        throw InvalidInput("truncation_order: t' and x must be finite and >= 0");
    }
    if (!(eps_tail > 0.0) || !std::isfinite(eps_tail)) {
        throw InvalidInput("truncation_order: eps_tail must be finite and > 0");
    }

    const double heuristic =
        std::max(x + 10.0 * std::sqrt(x), tprime + 10.0 * std::cbrt(tprime)) + 20.0;
    int n = static_cast<int>(std::ceil(heuristic));
    const int j_shift = static_cast<int>(std::ceil(tprime));

    for (;;) {
        const auto irow = bessel_i_scaled_row(2 * n + 50, x);
        double tail = 0.0;
        for (std::size_t k = static_cast<std::size_t>(n) + 1; k < irow.size(); ++k) tail += 2.0 * irow[k];

        const auto jrow = bessel_j_row(n + j_shift + 50, tprime);
        double j_excess = 0.0;
        for (std::size_t k = static_cast<std::size_t>(n + j_shift) + 1; k < jrow.size(); ++k) {
            j_excess = std::max(j_excess, std::abs(jrow[k]));
        }

        if (tail < eps_tail && j_excess < eps_tail) break;
        n += 10;
    }
    return SeriesTruncation{n, eps_tail, tprime, x};
}

} // namespace dqw::specfun
