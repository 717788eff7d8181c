// core.cpp — Bessel-series evaluation of the reduced density matrix

#include "dqw/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dqw/errors.hpp"

namespace dqw {

namespace {

constexpr double kNegligibleJ = 1e-30;

void require_truncation(const ModelParams& p, const SeriesTruncation& trunc) {
    if (!trunc.built_for(p.tprime, p.x())) {
        throw ContractError("SeriesTruncation was built for (t'=" + std::to_string(trunc.tprime) +
                            ", x=" + std::to_string(trunc.x) + ") but used with (t'=" +
                            std::to_string(p.tprime) + ", x=" + std::to_string(p.x()) + ")");
    }
}

} // namespace

SeriesTruncation truncation_for(const ModelParams& p, double eps_tail) {
    p.validate();
    return specfun::truncation_order(p.tprime, p.x(), eps_tail);
}

SeriesTables::SeriesTables(const ModelParams& p, const SeriesTruncation& trunc, int max_site)
    : params_(p), trunc_(trunc), max_site_(max_site) {
    p.validate();
    require_truncation(p, trunc);
    if (max_site < 0) {
        throw InvalidInput("SeriesTables: max_site must be >= 0");
    }

    const int n_max = trunc.n_max;
    const int row_len = max_site + n_max;
    const auto jrow = specfun::bessel_j_row(row_len, p.tprime);

    j_limit_ = 0;
    for (int m = row_len; m >= 0; --m) {
        if (std::abs(jrow[static_cast<std::size_t>(m)]) >= kNegligibleJ) {
            j_limit_ = m;
            break;
        }
    }
    j_offset_ = row_len;
    j_.assign(static_cast<std::size_t>(2 * row_len + 1), 0.0);
    for (int m = -row_len; m <= row_len; ++m) {
        j_[static_cast<std::size_t>(m + j_offset_)] = specfun::j_from_row(jrow, m);
    }

    const auto irow = specfun::bessel_i_scaled_row(n_max, p.x());
    i_.assign(static_cast<std::size_t>(2 * n_max + 1), 0.0);
    for (int n = -n_max; n <= n_max; ++n) {
        i_[static_cast<std::size_t>(n + n_max)] = specfun::i_from_row(irow, n);
    }
}

void SeriesTables::require_site(int s) const {
    if (s < -max_site_ || s > max_site_) {
        throw ContractError("SeriesTables: site " + std::to_string(s) + " outside tabulated range +-" +
                            std::to_string(max_site_));
    }
}

double SeriesTables::j(int m) const {
    if (m < -j_offset_ || m > j_offset_) return 0.0;
    return j_[static_cast<std::size_t>(m + j_offset_)];
}

double SeriesTables::i_scaled(int n) const {
    const int n_max = trunc_.n_max;
    if (n < -n_max || n > n_max) return 0.0;
    return i_[static_cast<std::size_t>(n + n_max)];
}

double SeriesTables::dephased_element(int s1, int s2) const {
    require_site(s1);
    require_site(s2);
    const int n_max = trunc_.n_max;
    // Only n with |s1+n| and |s2+n| inside the non-negligible J band contribute.
    const int lo = std::max({-n_max, -j_limit_ - s1, -j_limit_ - s2});
    const int hi = std::min({n_max, j_limit_ - s1, j_limit_ - s2});
    const double* ja = j_.data() + j_offset_ + s1;
    const double* jb = j_.data() + j_offset_ + s2;
    const double* iw = i_.data() + n_max;
    double acc = 0.0;
    for (int n = lo; n <= hi; ++n) acc += ja[n] * jb[n] * iw[n];
    return acc;
}

ComplexAmplitude SeriesTables::density_element(int s1, int s2) const {
    return i_power(s1 - s2) * dephased_element(s1, s2);
}

double SeriesTables::probability(int s) const { return dephased_element(s, s); }

ComplexAmplitude density_element(int s1, int s2, const ModelParams& p, const SeriesTruncation& trunc) {
    p.validate();
    require_truncation(p, trunc);
    if (p.is_initial_state()) {
        return (s1 == 0 && s2 == 0) ? ComplexAmplitude{1.0, 0.0} : ComplexAmplitude{0.0, 0.0};
    }
    const SeriesTables tables(p, trunc, std::max(std::abs(s1), std::abs(s2)));
    return tables.density_element(s1, s2);
}

double probability(int s, const ModelParams& p, const SeriesTruncation& trunc) {
    p.validate();
    require_truncation(p, trunc);
    if (p.is_initial_state()) return s == 0 ? 1.0 : 0.0;
    const SeriesTables tables(p, trunc, std::abs(s));
    return tables.probability(s);
}

double probability_qw(int s, double tprime) {
    if (!std::isfinite(tprime) || tprime < 0.0) {
        throw InvalidInput("probability_qw: t' must be finite and >= 0");
    }
    const double v = specfun::bessel_j(s, tprime);
    return v * v;
}

double probability_crw(int s, double x) { return specfun::bessel_i_scaled(s, x); }

double purity(const ModelParams& p) {
    p.validate();
    return specfun::bessel_i_scaled(0, 2.0 * p.x());
}

double characteristic_function(double xi, const ModelParams& p) {
    p.validate();
    if (!std::isfinite(xi)) {
        throw InvalidInput("characteristic_function: xi must be finite");
    }
    const double damping = std::exp(-p.x() * (1.0 - std::cos(xi)));
    return damping * specfun::bessel_j(0, 2.0 * p.tprime * std::sin(0.5 * xi));
}

double variance(const ModelParams& p) {
    p.validate();
    return 0.5 * p.tprime * p.tprime + p.x();
}

double moment_via_cf(int order, const ModelParams& p, double h) {
    p.validate();
    if (order != 1 && order != 2) {
        throw InvalidInput("moment_via_cf: only orders 1 and 2 are supported");
    }
    if (!(h > 0.0 && h <= 0.1)) {
        throw InvalidInput("moment_via_cf: step h must lie in (0, 0.1]");
    }
    const auto g = [&p](double xi) { return characteristic_function(xi, p); };

    if (order == 1) {
        // G is even, so the odd part (and <q>) vanishes; i^{-1} only rotates zero.
        const auto d1 = [&g](double step) { return (g(step) - g(-step)) / (2.0 * step); };
        return (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
    }
    const double g0 = g(0.0);
    const auto d2 = [&g, g0](double step) { return (g(step) - 2.0 * g0 + g(-step)) / (step * step); };
    // i^{-2} = -1
    return -(4.0 * d2(0.5 * h) - d2(h)) / 3.0;
}

double anderson_velocity() { return 1.0 / std::numbers::sqrt2; }

} // namespace dqw
