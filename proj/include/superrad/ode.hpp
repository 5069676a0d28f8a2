#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "superrad/errors.hpp"

namespace superrad {

struct RK4Options {
    double channel_tol = 1e-9;  ///< per-channel acceptance threshold
    int max_doublings = 24;     ///< refinement budget per output interval
    int seed_steps = 1;         ///< initial step count for the first interval
    int min_steps = 1;          ///< floor per interval (stiff generators)
};

/// Deterministic classical Runge-Kutta integration over a fixed output grid.
/// Each interval [t_k, t_{k+1}] is integrated with n and 2n equal steps and
/// accepted once every monitored channel differs by less than channel_tol
/// between the two refinements (Richardson acceptance); n carries over to the
/// next interval, allowed to relax by one halving.  The accepted (finer)
/// states at every grid point, including the initial one, are passed to
/// `record`.  No randomness, no heuristics beyond the deterministic step
/// doubling: rerunning reproduces results bit for bit.
///
/// State must support y + y, scalar * y (Eigen vectors/matrices qualify).
template <class State>
void rk4_evolve(const std::function<State(double, const State&)>& deriv,
                State y0, const std::vector<double>& times,
                const std::function<Eigen::VectorXd(const State&)>& monitor,
                const std::function<void(std::size_t, double, const State&)>&
                    record,
                const RK4Options& options = {}) {
    if (times.empty()) return;
    auto step = [&](double t, double h, const State& y) -> State {
        State k1 = deriv(t, y);
        State k2 = deriv(t + 0.5 * h, y + (0.5 * h) * k1);
        State k3 = deriv(t + 0.5 * h, y + (0.5 * h) * k2);
        State k4 = deriv(t + h, y + h * k3);
        return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    auto run = [&](const State& y, double t0, double dt, int n) -> State {
        State cur = y;
        double h = dt / n;
        for (int i = 0; i < n; ++i) cur = step(t0 + i * h, h, cur);
        return cur;
    };

    record(0, times[0], y0);
    State y = std::move(y0);
    const int floor_steps = std::max(1, options.min_steps);
    int n = std::max(floor_steps, options.seed_steps);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double t0 = times[k];
        const double dt = times[k + 1] - t0;
        if (!(dt > 0.0))
            throw std::invalid_argument("rk4_evolve: times must increase");
        n = std::max(floor_steps, n / 2);
        State accepted = y;
        bool ok = false;
        // Each failed comparison promotes the finer run to the new coarse
        // reference, so every resolution is integrated once.
        Eigen::VectorXd a = monitor(run(y, t0, dt, n));
        for (int attempt = 0; attempt <= options.max_doublings; ++attempt) {
            State fine = run(y, t0, dt, 2 * n);
            Eigen::VectorXd b = monitor(fine);
            if (a.allFinite() && b.allFinite() &&
                (a - b).cwiseAbs().maxCoeff() < options.channel_tol) {
                accepted = std::move(fine);
                n *= 2;  // the accepted resolution carries to the next interval
                ok = true;
                break;
            }
            a = std::move(b);
            n *= 2;
        }
        if (!ok)
            throw NumericalContractError(
                "rk4_evolve: step-halving did not converge to the channel "
                "tolerance");
        y = std::move(accepted);
        record(k + 1, times[k + 1], y);
    }
}

}  // namespace superrad
