// params.hpp — Dimensionless model parameters of the dissipative walk

#pragma once

#include <cmath>
#include <string>

#include "dqw/errors.hpp"

namespace dqw {

// Every observable depends on the pair (t', r_D):
//   t'  = (Omega/hbar) t        dimensionless time
//   r_D = 2D / (Omega/hbar)     dissipation relative to hopping
// so that x = r_D t' = 2Dt is the argument of the modified Bessel factors.
// The bath enters only through D, which scales as Gamma^2 k_B T / hbar.
struct ModelParams {
    double tprime{0.0};
    double r_d{0.0};

    double x() const { return r_d * tprime; }

    void validate() const {
        if (!std::isfinite(tprime) || !std::isfinite(r_d) || tprime < 0.0 || r_d < 0.0) {
            throw InvalidInput("ModelParams: t' and r_D must be finite and >= 0 (got t'=" +
                               std::to_string(tprime) + ", r_D=" + std::to_string(r_d) + ")");
        }
    }

    // Localized initial state, no series needed.
    bool is_initial_state() const { return tprime == 0.0; }

    // Physical units: hopping rate Omega/hbar, diffusion constant D, time t.
    static ModelParams from_physical(double omega_over_hbar, double d_coeff, double t) {
        if (!(omega_over_hbar > 0.0) || !std::isfinite(omega_over_hbar)) {
            throw InvalidInput("from_physical: Omega/hbar must be finite and > 0");
        }
        ModelParams p{omega_over_hbar * t, 2.0 * d_coeff / omega_over_hbar};
        p.validate();
        return p;
    }
};

} // namespace dqw
