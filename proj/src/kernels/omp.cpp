// omp.cpp — OpenMP kernels; same per-cell arithmetic as serial.cpp

#include <omp.h>

#include "dqw/errors.hpp"
#include "dqw/kernels.hpp"

namespace dqw::kernels {

void set_thread_count(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace omp {

void probability_profile(const SeriesTables& tables, int s_lo, int s_hi, std::span<double> out) {
    if (s_hi < s_lo || out.size() != static_cast<std::size_t>(s_hi - s_lo + 1)) {
        throw InvalidInput("probability_profile: output size does not match site range");
    }
    if (s_lo < -tables.max_site() || s_hi > tables.max_site()) {
        throw ContractError("probability_profile: site range exceeds tabulated range");
    }
#pragma omp parallel for schedule(static)
    for (int s = s_lo; s <= s_hi; ++s) out[static_cast<std::size_t>(s - s_lo)] = tables.probability(s);
}

void dephased_window(const SeriesTables& tables, int half_width, Eigen::MatrixXd& out) {
    if (half_width < 0 || half_width > tables.max_site()) {
        throw ContractError("dephased_window: half width exceeds tabulated range");
    }
    const int dim = 2 * half_width + 1;
    out.resize(dim, dim);
    // Rows get shorter towards the bottom (upper triangle only): dynamic schedule.
#pragma omp parallel for schedule(dynamic, 4)
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
    const auto count = static_cast<long>(nk);
#pragma omp parallel for schedule(dynamic, 2)
    for (long j = 0; j < count; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        wigner_column(p, trunc, i_row, s_lo, s_hi, k_nodes[uj], out.data() + uj, nk);
    }
}

void quadrature_block(const oracle::PropagatorTable& table, int s_lo, int s_hi, Eigen::MatrixXcd& out) {
    const int n = table.nodes();
    if (s_hi < s_lo) throw InvalidInput("quadrature_block: empty site range");
    const int dim = s_hi - s_lo + 1;
    const auto& m = table.samples();
    const Eigen::MatrixXcd phase = site_phase_table(table, s_lo, s_hi);
    Eigen::MatrixXcd partial(dim, n);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < dim; ++a) {
        for (int k2 = 0; k2 < n; ++k2) {
            std::complex<double> acc{0.0, 0.0};
            for (int k1 = 0; k1 < n; ++k1) acc += phase(k1, a) * m(k1, k2);
            partial(a, k2) = acc;
        }
    }
    const double norm = 1.0 / (static_cast<double>(n) * n);
    out.resize(dim, dim);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            std::complex<double> acc{0.0, 0.0};
            for (int k2 = 0; k2 < n; ++k2) acc += partial(a, k2) * std::conj(phase(k2, b));
            out(a, b) = acc * norm;
        }
    }
}

} // namespace omp
} // namespace dqw::kernels
