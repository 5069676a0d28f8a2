#pragma once

#include <Eigen/Dense>
#include <vector>

#include "superrad/timeseries.hpp"

namespace superrad {

/// Photon-count distribution of a fully excited two-level ensemble decaying
/// collectively: P(n, tau) is the probability that n photons have been
/// emitted by time tau = Gamma t, with Gamma the single-emitter decay rate.
/// Columns sum to one; P(., 0) = (1, 0, ..., 0).
struct AtomicPopulations {
    int n_atoms = 0;
    std::vector<double> times;
    Eigen::MatrixXd populations;  ///< (n_atoms + 1) x times.size(), row n

    TimeSeries series() const;  ///< channels "P0".."PN"
};

/// Integrates the emission cascade
///   P'(n) = (N - n + 1) n P(n-1) - (N - n)(n + 1) P(n)
/// from the fully excited state over the given tau >= 0 grid, with the same
/// deterministic step-halving contract as the brute-force evolutions.
AtomicPopulations atomic_populations(int n_atoms,
                                     const std::vector<double>& taus);

/// Emission intensity in units of Gamma, evaluated as the expectation of the
/// cascade gain term sum_n (N - n)(n + 1) P(n, tau) (the exact derivative of
/// the mean photon count, no numerical differentiation).  Channel
/// "intensity".
TimeSeries atomic_intensity(int n_atoms, const std::vector<double>& taus);

/// Peak initial intensity with K quanta spread over N systems, in units of
/// Gamma: a two-level ensemble tops out at N K + K - K^2 (from its best
/// half-filled ladder state), harmonic oscillators reach N K (rung K of the
/// bright ladder).  Oscillators win strictly for K > 1; the two agree for
/// K <= 1.  K > N is impossible for atoms -> std::domain_error.
struct IntensityComparison {
    double atomic = 0.0;
    double bosonic = 0.0;
};
IntensityComparison initial_intensity_comparison(int n_systems, int quanta);

}  // namespace superrad
