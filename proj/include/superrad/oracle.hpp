#pragma once

#include <Eigen/Dense>
#include <vector>

#include "superrad/coupling.hpp"
#include "superrad/fock.hpp"
#include "superrad/states.hpp"
#include "superrad/timeseries.hpp"

namespace superrad {

/// Density operator on a truncated Fock box; the working state of the
/// brute-force evolutions that everything closed-form is checked against.
struct DensityOperator {
    FockSpace space;
    Eigen::MatrixXcd rho;

    /// Hermiticity / unit-trace / positivity (up to tolerance) checks;
    /// throws std::invalid_argument on failure.
    void validate(double hermiticity_tol = 1e-10, double trace_tol = 1e-8,
                  double negativity_tol = 1e-8) const;

    static DensityOperator from_state(const StateSpec& spec,
                                      const CouplingConfig& cfg,
                                      int max_quanta, double tail_tol = 1e-8);
};

struct OracleOptions {
    double channel_tol = 1e-9;     ///< Richardson acceptance per channel
    double leak_threshold = 1e-8;  ///< allowed growth of cutoff-edge mass
    bool store_states = false;     ///< keep the density matrix at each time
};

/// One brute-force trajectory.  `series` carries the recorded channels on
/// the requested grid; `states` is filled when store_states is set.
struct EvolutionRecord {
    TimeSeries series;
    std::vector<Eigen::MatrixXcd> states;
    double kappa_ratio = 0.0;  ///< kappa / G_N (ancilla evolutions only)
};

/// Reduced collective decay rho' = (N/2) D[C] rho in tau = Gamma t units,
/// with D[A]rho = 2 A rho A^dag - A^dag A rho - rho A^dag A.  Channels:
/// "total", "bright", "dark", "intensity" (units of Gamma), "occ_<j>" for
/// each mode (1-based label), "trace".  Integration is deterministic
/// fixed-step RK4 with per-interval step halving until every channel moves
/// by less than channel_tol.  All evolutions watch for population reaching
/// configurations the truncated generator handles wrongly (a mode at its
/// cutoff with quanta elsewhere that could transfer in); growth of that
/// mass beyond leak_threshold aborts with NumericalContractError.  A box
/// whose uniform cutoff covers the total quanta never triggers it: such
/// boxes are exactly closed under these generators.
EvolutionRecord evolve_reduced(const DensityOperator& rho0,
                               const CouplingConfig& cfg,
                               const std::vector<double>& taus,
                               const OracleOptions& options = {});

/// Full model with the central mode kept explicitly (appended as the last
/// Fock mode with its own cutoff, starting in vacuum):
///   rho' = -i (G/Gamma) [a^dag C + a C^dag, rho]
///          + (kappa/(2 Gamma)) D[a] rho,
/// still on the tau = Gamma t grid, so only the stiffness ratio
/// kappa / G_N enters.  System channels as in evolve_reduced plus
/// "ancilla" (central-mode occupation).
EvolutionRecord evolve_full_with_ancilla(const DensityOperator& system_rho0,
                                         const CouplingConfig& cfg,
                                         const std::vector<double>& taus,
                                         int ancilla_cutoff = 3,
                                         const OracleOptions& options = {});

/// Independent single-mode baths rho' = gamma sum_j D[b_j] rho, with gamma
/// the amplitude decay rate; occupations fall as e^{-2 gamma t}.  The rate
/// scales out, so the grid `gamma_ts` is dimensionless gamma t.  Channels:
/// "total", "occ_<j>", "trace".
EvolutionRecord evolve_independent_baths(const DensityOperator& rho0,
                                         const std::vector<double>& gamma_ts,
                                         const OracleOptions& options = {});

/// Regression-theorem two-time correlation
///   c_ij(tau) = tr(b_i^dag e^{L tau}[b_j rho0])
///             - tr(b_i^dag e^{L tau}[rho0]) tr(b_j rho0)
/// under the reduced collective-decay generator; the independent route the
/// closed-form two_time_correlation is validated against.  Channel "corr"
/// (complex) on the tau grid.
TimeSeries regression_correlation(const DensityOperator& rho0,
                                  const CouplingConfig& cfg, int i, int j,
                                  const std::vector<double>& taus,
                                  const OracleOptions& options = {});

}  // namespace superrad
