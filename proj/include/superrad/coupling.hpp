#pragma once

#include <Eigen/Dense>
#include <vector>

namespace superrad {

/// Star-coupled ensemble: N oscillator modes b_j, all at frequency omega,
/// each coupled with strength g_j > 0 to one strongly damped central mode
/// (energy decay rate kappa).  Everything downstream is expressed through the
/// partial norms G_k = sqrt(g_1^2+...+g_k^2); G_N is the collective coupling.
struct CouplingConfig {
    int n_modes = 0;
    std::vector<double> couplings;  ///< g_j, one per mode, > 0
    double kappa = 0.0;             ///< central-mode energy decay rate, > 0
    double omega = 0.0;             ///< common oscillator frequency, >= 0

    static CouplingConfig uniform(int n, double g, double kappa,
                                  double omega = 0.0);

    /// Throws std::invalid_argument unless n_modes >= 1,
    /// couplings.size() == n_modes, every g_j > 0, kappa > 0, omega >= 0.
    void validate() const;

    /// {G_1, ..., G_N}; strictly increasing since every g_j > 0.
    std::vector<double> cumulative_norms() const;

    /// G_N.
    double total_norm() const;

    /// Collective decay rate per mode, Gamma = 4 G_N^2 / (N kappa).
    double decay_rate() const;
};

/// Orthogonal N x N matrix U mapping bare modes to collective modes,
/// c_k = sum_j U(k,j) b_j.  Row N-1 (0-based) is the bright mode
/// C = sum_j g_j b_j / G_N; rows k < N-1 are the dark modes, built so that
/// row k mixes only modes 0..k+1:
///   U(k,j) = g_{k+1} g_j / (G_{k+1} G_{k+2})   for j <= k   (1-based g,G)
///   U(k,k+1) = -G_{k+1}^2 / (G_{k+1} G_{k+2})
///   U(k,j) = 0                                  for j > k+1.
/// Every dark row is orthogonal to the coupling vector, so dark modes do not
/// radiate.  For n_modes == 1 the matrix is the 1x1 identity.
Eigen::MatrixXd collective_transform(const CouplingConfig& cfg);

}  // namespace superrad
