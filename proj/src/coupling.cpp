#include "superrad/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace superrad {

CouplingConfig CouplingConfig::uniform(int n, double g, double kappa,
                                       double omega) {
    CouplingConfig cfg;
    cfg.n_modes = n;
    cfg.couplings.assign(static_cast<std::size_t>(n > 0 ? n : 0), g);
    cfg.kappa = kappa;
    cfg.omega = omega;
    cfg.validate();
    return cfg;
}

void CouplingConfig::validate() const {
    if (n_modes < 1)
        throw std::invalid_argument("CouplingConfig: n_modes must be >= 1");
    if (couplings.size() != static_cast<std::size_t>(n_modes))
        throw std::invalid_argument(
            "CouplingConfig: couplings.size() != n_modes");
    for (std::size_t j = 0; j < couplings.size(); ++j) {
        if (!(couplings[j] > 0.0) || !std::isfinite(couplings[j]))
            throw std::invalid_argument(
                "CouplingConfig: coupling g_" + std::to_string(j + 1) +
                " must be finite and > 0");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("CouplingConfig: kappa must be > 0");
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("CouplingConfig: omega must be >= 0");
}

std::vector<double> CouplingConfig::cumulative_norms() const {
    std::vector<double> norms(couplings.size());
    double sumsq = 0.0;
    for (std::size_t j = 0; j < couplings.size(); ++j) {
        sumsq += couplings[j] * couplings[j];
        norms[j] = std::sqrt(sumsq);
    }
    return norms;
}

double CouplingConfig::total_norm() const {
    double sumsq = 0.0;
    for (double g : couplings) sumsq += g * g;
    return std::sqrt(sumsq);
}

double CouplingConfig::decay_rate() const {
    double gn = total_norm();
    return 4.0 * gn * gn / (static_cast<double>(n_modes) * kappa);
}

Eigen::MatrixXd collective_transform(const CouplingConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_modes;
    const std::vector<double> G = cfg.cumulative_norms();
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) u(n - 1, j) = cfg.couplings[j] / G[n - 1];
    for (int k = 0; k + 1 < n; ++k) {
        // Dark row k mixes bare modes 0..k+1 only; G[k] is the 1-based G_{k+1}.
        const double denom = G[k] * G[k + 1];
        for (int j = 0; j <= k; ++j)
            u(k, j) = cfg.couplings[k + 1] * cfg.couplings[j] / denom;
        u(k, k + 1) = -G[k] * G[k] / denom;
    }
    return u;
}

}  // namespace superrad
