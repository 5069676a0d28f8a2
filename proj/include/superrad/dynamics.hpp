#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superrad/coupling.hpp"
#include "superrad/states.hpp"
#include "superrad/timeseries.hpp"

namespace superrad {

/// Emission character of an initial state under the collective decay
/// channel.  Superradiant states emit a larger share of their quanta than
/// the same quanta spread over independent emitters would; subradiant ones a
/// smaller share; dark states do not emit at all.
enum class Radiance { Superradiant, Normal, Subradiant, Dark, Vacuum };

std::string to_string(Radiance r);

/// F = dark/total is the fraction of quanta that never leaves (1 - R/M);
/// `reference` is the same fraction for the uncorrelated benchmark with
/// identical per-mode populations, 1 - sum_j g_j^2 S_jj / (G_N^2 M)
/// (1 - 1/N for uniform coupling).  Both are empty for the vacuum.
struct FractionSplit {
    std::optional<double> fraction_dark;
    std::optional<double> reference;
};
FractionSplit dark_fraction(const StateSpec& spec, const CouplingConfig& cfg);

struct RadianceClassification {
    Radiance tag = Radiance::Vacuum;
    MRL quanta;               ///< initial M, R, L
    FractionSplit fractions;  ///< F and its uncorrelated reference
};

/// Classify by comparing F against the uncorrelated reference with absolute
/// tolerance epsilon: Vacuum (M <= eps), Dark (R <= eps max(M,1)), Normal
/// (|F - F_ref| <= eps), else Super/Subradiant by the sign of F_ref - F.
RadianceClassification classify(const StateSpec& spec,
                                const CouplingConfig& cfg,
                                double epsilon = 1e-12);

/// Moments after time tau = Gamma t of collective decay:
/// S(tau) = E S E, mu(tau) = E mu with E = I + (e^{-N tau/2} - 1) P and
/// P = g g^T / G_N^2.
ModeMoments propagate_moments(const ModeMoments& m0,
                              const CouplingConfig& cfg, double tau);

/// Closed-form decay curves on the grid `taus` (tau = Gamma t):
/// channels "intensity" (units of Gamma), "total", "bright", "dark".
/// bright decays as e^{-N tau}, dark stays constant,
/// intensity = N * bright.
TimeSeries closed_form_evolution(const StateSpec& spec,
                                 const CouplingConfig& cfg,
                                 const std::vector<double>& taus);

/// Same grid, single "intensity" channel.
TimeSeries intensity_series(const StateSpec& spec, const CouplingConfig& cfg,
                            const std::vector<double>& taus);

/// Intensity split at time tau into the uncorrelated part
/// (N/G_N^2) sum_j g_j^2 S_jj(tau) and the coherence part (the rest); both
/// in units of Gamma.  They sum to the total intensity.
std::pair<double, double> split_intensity(const StateSpec& spec,
                                          const CouplingConfig& cfg,
                                          double tau);

/// Populations P_{R,d}(tau) of every rung R on every ladder d populated by
/// the superposition, from the closed-form cascade solution
///   P_{R,d}(tau) = sum_{k>=R} |a_{k,d}|^2 C(k,R) e^{-R N tau}
///                  (1 - e^{-N tau})^{k-R}.
/// Channel labels: "P_d<m1>x<m2>..._R<r>" ("P_R<r>" for one mode).
TimeSeries ladder_populations(const DickeSuperposition& state,
                              const CouplingConfig& cfg,
                              const std::vector<double>& taus);

/// Residual of the closed-form similarity that triangularizes the cascade
/// generator: with A the dim x dim matrix A(i,i) = 1-i, A(i,i+1) = i
/// (1-based), B(i,j) = C(i-1,j-1) and D = diag(1-i), returns the max-norm
/// residual of A - (B^{-1})^T D B^T together with the inversion residual
/// B B^{-1} - I, whichever is larger.
double pascal_solution_check(int dim);

/// Two-time normally ordered correlation of bare modes i, j (0-based) under
/// collective decay:
///   c_ij(tau) = <db_i^dag(tau) db_j(0)>
///             = [S_ij - mu_i* mu_j]
///               - (g_i/G)(1 - e^{-N tau/2}) [T_j - <C>* mu_j],
/// with T_j = sum_m g_m S_mj / G evaluated on the initial state.  The
/// amplitude decay rate is half the population rate N Gamma.  Channel
/// "corr" (complex) over the grid `taus`.
TimeSeries two_time_correlation(const StateSpec& spec,
                                const CouplingConfig& cfg, int i, int j,
                                const std::vector<double>& taus);

}  // namespace superrad
