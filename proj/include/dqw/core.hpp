// core.hpp — Closed-form density matrix, probabilities, purity and moments

#pragma once

#include <complex>
#include <vector>

#include "dqw/params.hpp"
#include "dqw/specfun.hpp"

namespace dqw {

using ComplexAmplitude = std::complex<double>;
using specfun::SeriesTruncation;

// i^m from the residue of m mod 4: exactly one of {1, i, -1, -i}.
inline ComplexAmplitude i_power(int m) {
    switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

// Truncation for the (t', x) of p; shorthand for specfun::truncation_order.
SeriesTruncation truncation_for(const ModelParams& p, double eps_tail = specfun::kDefaultEpsTail);

// Precomputed Bessel rows for one parameter point, covering sites |s| <= max_site.
//
//   <s1|rho|s2> = i^{s1-s2} sum_n J_{s1+n}(t') J_{s2+n}(t') e^{-x} I_n(x)
//
// The e^{-2Dt} prefactor is carried inside the scaled I factors term by term.
// Immutable after construction and safe to share across threads.
class SeriesTables {
public:
    SeriesTables(const ModelParams& p, const SeriesTruncation& trunc, int max_site);

    const ModelParams& params() const { return params_; }
    const SeriesTruncation& truncation() const { return trunc_; }
    int max_site() const { return max_site_; }

    double j(int m) const;
    double i_scaled(int n) const;

    ComplexAmplitude density_element(int s1, int s2) const;
    // Phase-stripped element sum_n J_{s1+n} J_{s2+n} e^{-x} I_n(x); real symmetric.
    double dephased_element(int s1, int s2) const;
    double probability(int s) const;

private:
    void require_site(int s) const;

    ModelParams params_;
    SeriesTruncation trunc_;
    int max_site_;
    int j_limit_;               // |J_m| is negligible (< 1e-30) for |m| > j_limit_
    int j_offset_;
    std::vector<double> j_;     // J_m at index m + j_offset_
    std::vector<double> i_;     // e^{-x} I_n at index n + n_max
};

ComplexAmplitude density_element(int s1, int s2, const ModelParams& p, const SeriesTruncation& trunc);

double probability(int s, const ModelParams& p, const SeriesTruncation& trunc);

// D = 0: J_s(t')^2.
double probability_qw(int s, double tprime);

// Omega = 0: e^{-x} I_s(x), x = 2Dt.
double probability_crw(int s, double x);

// Tr rho^2 = e^{-4Dt} I_0(4Dt) = e^{-2x} I_0(2x).
double purity(const ModelParams& p);

// G(xi) = sum_s P_s e^{i xi s} = e^{-x(1-cos xi)} J_0(2 t' sin(xi/2)).
double characteristic_function(double xi, const ModelParams& p);

// sigma^2 = t'^2/2 + r_D t'.
double variance(const ModelParams& p);

// <q^m> = i^{-m} d^m G / d xi^m at 0 for m in {1, 2}, by central differences
// with one Richardson step.
double moment_via_cf(int order, const ModelParams& p, double h = 1e-3);

// Anderson boundary velocity 1/sqrt(2) in sites per unit t'.
double anderson_velocity();

} // namespace dqw
