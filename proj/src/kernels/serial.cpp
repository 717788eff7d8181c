// serial.cpp — Reference (single-threaded) kernels

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dqw/errors.hpp"
#include "dqw/kernels.hpp"

namespace dqw::kernels {

namespace {
constexpr double kNegligibleJ = 1e-30;
} // namespace

void wigner_column(const ModelParams& p, const SeriesTruncation& trunc, const std::vector<double>& i_row,
                   int s_lo, int s_hi, double k, double* out, std::size_t stride) {
    const int n_max = trunc.n_max;
    const int s_abs = std::max(std::abs(s_lo), std::abs(s_hi));
    const int row_len = 2 * (s_abs + n_max);
    // J_{2m} is even in both order and argument, so |z| and |2s+2n| suffice.
    const double z = std::abs(2.0 * p.tprime * std::sin(0.5 * k));
    const auto jrow = specfun::bessel_j_row(row_len, z);

    int j_limit = 0;
    for (int m = row_len; m >= 0; --m) {
        if (std::abs(jrow[static_cast<std::size_t>(m)]) >= kNegligibleJ) {
            j_limit = m;
            break;
        }
    }
    const int half_limit = j_limit / 2;

    const double inv_two_pi = 0.5 * std::numbers::inv_pi;
    for (int s = s_lo; s <= s_hi; ++s) {
        const int lo = std::max(-n_max, -half_limit - s);
        const int hi = std::min(n_max, half_limit - s);
        double acc = 0.0;
        for (int n = lo; n <= hi; ++n) {
            const int order = std::abs(2 * (s + n));
            const int na = n < 0 ? -n : n;
            acc += jrow[static_cast<std::size_t>(order)] * i_row[static_cast<std::size_t>(na)];
        }
        out[static_cast<std::size_t>(s - s_lo) * stride] = inv_two_pi * acc;
    }
}

Eigen::MatrixXcd site_phase_table(const oracle::PropagatorTable& table, int s_lo, int s_hi) {
    if (s_hi < s_lo) throw InvalidInput("site_phase_table: empty site range");
    const int n = table.nodes();
    Eigen::MatrixXcd phase(n, s_hi - s_lo + 1);
    for (int s = s_lo; s <= s_hi; ++s) {
        for (int j = 0; j < n; ++j) phase(j, s - s_lo) = table.site_phase(j, s);
    }
    return phase;
}

namespace serial {

void probability_profile(const SeriesTables& tables, int s_lo, int s_hi, std::span<double> out) {
    if (s_hi < s_lo || out.size() != static_cast<std::size_t>(s_hi - s_lo + 1)) {
        throw InvalidInput("probability_profile: output size does not match site range");
    }
    if (s_lo < -tables.max_site() || s_hi > tables.max_site()) {
        throw ContractError("probability_profile: site range exceeds tabulated range");
    }
    for (int s = s_lo; s <= s_hi; ++s) out[static_cast<std::size_t>(s - s_lo)] = tables.probability(s);
}

void dephased_window(const SeriesTables& tables, int half_width, Eigen::MatrixXd& out) {
    if (half_width < 0 || half_width > tables.max_site()) {
        throw ContractError("dephased_window: half width exceeds tabulated range");
    }
    const int dim = 2 * half_width + 1;
    out.resize(dim, dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = a; b < dim; ++b) {
            const double v = tables.dephased_element(a - half_width, b - half_width);
            out(a, b) = v;
            out(b, a) = v;
        }
    }
}

void wigner_grid(const ModelParams& p, const SeriesTruncation& trunc, int s_lo, int s_hi,
                 std::span<const double> k_nodes, std::span<double> out) {
    const auto nk = k_nodes.size();
    if (s_hi < s_lo || out.size() != static_cast<std::size_t>(s_hi - s_lo + 1) * nk) {
        throw InvalidInput("wigner_grid: output size does not match grid");
    }
    const auto i_row = specfun::bessel_i_scaled_row(trunc.n_max, p.x());
    for (std::size_t j = 0; j < nk; ++j) {
        wigner_column(p, trunc, i_row, s_lo, s_hi, k_nodes[j], out.data() + j, nk);
    }
}

void quadrature_block(const oracle::PropagatorTable& table, int s_lo, int s_hi, Eigen::MatrixXcd& out) {
    const int n = table.nodes();
    if (s_hi < s_lo) throw InvalidInput("quadrature_block: empty site range");
    const int dim = s_hi - s_lo + 1;
    const auto& m = table.samples();
    const Eigen::MatrixXcd phase = site_phase_table(table, s_lo, s_hi);
    Eigen::MatrixXcd partial(dim, n);
    for (int a = 0; a < dim; ++a) {
        for (int k2 = 0; k2 < n; ++k2) {
            std::complex<double> acc{0.0, 0.0};
            for (int k1 = 0; k1 < n; ++k1) acc += phase(k1, a) * m(k1, k2);
            partial(a, k2) = acc;
        }
    }
    const double norm = 1.0 / (static_cast<double>(n) * n);
    out.resize(dim, dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            std::complex<double> acc{0.0, 0.0};
            for (int k2 = 0; k2 < n; ++k2) acc += partial(a, k2) * std::conj(phase(k2, b));
            out(a, b) = acc * norm;
        }
    }
}

} // namespace serial
} // namespace dqw::kernels
