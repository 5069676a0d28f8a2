#include "superrad/atomic.hpp"

#include <stdexcept>
#include <string>

#include "superrad/ode.hpp"

namespace superrad {

TimeSeries AtomicPopulations::series() const {
    TimeSeries ts;
    ts.times = times;
    for (int n = 0; n <= n_atoms; ++n) {
        std::vector<double> vals(times.size());
        for (std::size_t k = 0; k < times.size(); ++k)
            vals[k] = populations(n, Eigen::Index(k));
        ts.add_real("P" + std::to_string(n), std::move(vals));
    }
    return ts;
}

AtomicPopulations atomic_populations(int n_atoms,
                                     const std::vector<double>& taus) {
    if (n_atoms < 1)
        throw std::invalid_argument("atomic_populations: need n_atoms >= 1");
    if (!taus.empty() && !(taus.front() >= 0.0))
        throw std::invalid_argument("atomic_populations: tau must be >= 0");

    const int dim = n_atoms + 1;
    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(dim);
    p0[0] = 1.0;

    auto deriv = [n_atoms, dim](double, const Eigen::VectorXd& p) {
        Eigen::VectorXd dp(dim);
        for (int n = 0; n < dim; ++n) {
            double v = -double(n_atoms - n) * (n + 1) * p[n];
            if (n > 0) v += double(n_atoms - n + 1) * n * p[n - 1];
            dp[n] = v;
        }
        return dp;
    };
    auto monitor = [](const Eigen::VectorXd& p) { return p; };

    AtomicPopulations out;
    out.n_atoms = n_atoms;
    out.times = taus;
    out.populations.resize(dim, Eigen::Index(taus.size()));
    auto record = [&](std::size_t k, double, const Eigen::VectorXd& p) {
        out.populations.col(Eigen::Index(k)) = p;
    };
    rk4_evolve<Eigen::VectorXd>(deriv, p0, taus, monitor, record);
    return out;
}

TimeSeries atomic_intensity(int n_atoms, const std::vector<double>& taus) {
    AtomicPopulations pops = atomic_populations(n_atoms, taus);
    std::vector<double> vals(taus.size());
    for (std::size_t k = 0; k < taus.size(); ++k) {
        double sum = 0.0;
        for (int n = 0; n <= n_atoms; ++n)
            sum += double(n_atoms - n) * (n + 1) *
                   pops.populations(n, Eigen::Index(k));
        vals[k] = sum;
    }
    TimeSeries ts;
    ts.times = taus;
    ts.add_real("intensity", std::move(vals));
    return ts;
}

IntensityComparison initial_intensity_comparison(int n_systems, int quanta) {
    if (n_systems < 1)
        throw std::invalid_argument(
            "initial_intensity_comparison: need n_systems >= 1");
    if (quanta < 0 || quanta > n_systems)
        throw std::domain_error(
            "initial_intensity_comparison: atoms need 0 <= quanta <= "
            "n_systems");
    const double n = n_systems, k = quanta;
    return {n * k + k - k * k, n * k};
}

}  // namespace superrad
