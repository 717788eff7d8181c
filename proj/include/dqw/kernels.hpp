// kernels.hpp — Data-parallel inner loops, serial reference and OpenMP versions
//
// Each kernel exists twice with the same signature. `serial` is the reference
// kept for testing; `omp` distributes the outer loop across threads and keeps
// the per-cell summation order identical, so both produce the same bits.

#pragma once

#include <span>

#include <Eigen/Dense>

#include "dqw/core.hpp"
#include "dqw/oracle.hpp"

namespace dqw::kernels {

enum class Backend { serial, omp };

// probability_profile: P_s for s in [s_lo, s_hi]; out.size() == s_hi - s_lo + 1.
// dephased_window:     R(s1,s2) on [-L, L], real symmetric, resized to 2L+1.
// wigner_grid:         W(s,k) row-major by site then k-node.
// quadrature_block:    oracle elements for s1, s2 in [s_lo, s_hi].

namespace serial {
void probability_profile(const SeriesTables& tables, int s_lo, int s_hi, std::span<double> out);
void dephased_window(const SeriesTables& tables, int half_width, Eigen::MatrixXd& out);
void wigner_grid(const ModelParams& p, const SeriesTruncation& trunc, int s_lo, int s_hi,
                 std::span<const double> k_nodes, std::span<double> out);
void quadrature_block(const oracle::PropagatorTable& table, int s_lo, int s_hi, Eigen::MatrixXcd& out);
} // namespace serial

namespace omp {
void probability_profile(const SeriesTables& tables, int s_lo, int s_hi, std::span<double> out);
void dephased_window(const SeriesTables& tables, int half_width, Eigen::MatrixXd& out);
void wigner_grid(const ModelParams& p, const SeriesTruncation& trunc, int s_lo, int s_hi,
                 std::span<const double> k_nodes, std::span<double> out);
void quadrature_block(const oracle::PropagatorTable& table, int s_lo, int s_hi, Eigen::MatrixXcd& out);
} // namespace omp

// Shared per-k-node Wigner evaluation used by both backends:
// W(s,k) = (1/2pi) sum_n J_{2s+2n}(2 t' sin(k/2)) e^{-x} I_n(x) for s in [s_lo, s_hi].
void wigner_column(const ModelParams& p, const SeriesTruncation& trunc, const std::vector<double>& i_row,
                   int s_lo, int s_hi, double k, double* out, std::size_t stride);

// e^{i k_j s} for every node j (rows) and site s in [s_lo, s_hi] (columns).
Eigen::MatrixXcd site_phase_table(const oracle::PropagatorTable& table, int s_lo, int s_hi);

// Worker count used by the omp backend (0 = OpenMP default).
void set_thread_count(int threads);
int thread_count();

} // namespace dqw::kernels
