#include "superrad/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "superrad/numeric.hpp"

namespace superrad {

std::string to_string(Radiance r) {
    switch (r) {
        case Radiance::Superradiant: return "Superradiant";
        case Radiance::Normal: return "Normal";
        case Radiance::Subradiant: return "Subradiant";
        case Radiance::Dark: return "Dark";
        case Radiance::Vacuum: return "Vacuum";
    }
    return "unknown";
}

namespace {

// Uncorrelated-reference bright weight: sum_j g_j^2 S_jj / G_N^2.
double independent_bright(const ModeMoments& m, const CouplingConfig& cfg) {
    double gn = cfg.total_norm();
    double acc = 0.0;
    for (int j = 0; j < cfg.n_modes; ++j)
        acc += cfg.couplings[std::size_t(j)] * cfg.couplings[std::size_t(j)] *
               m.second(j, j).real();
    return std::max(0.0, acc / (gn * gn));
}

}  // namespace

FractionSplit dark_fraction(const StateSpec& spec, const CouplingConfig& cfg) {
    ModeMoments m = state_moments(spec, cfg);
    MRL q = mrl_expectations(m, cfg);
    FractionSplit out;
    if (q.total <= 0.0) return out;
    out.fraction_dark = q.dark / q.total;
    out.reference = 1.0 - independent_bright(m, cfg) / q.total;
    return out;
}

RadianceClassification classify(const StateSpec& spec,
                                const CouplingConfig& cfg, double epsilon) {
    if (!(epsilon >= 0.0))
        throw std::invalid_argument("classify: epsilon must be >= 0");
    ModeMoments m = state_moments(spec, cfg);
    RadianceClassification out;
    out.quanta = mrl_expectations(m, cfg);
    if (out.quanta.total <= epsilon) {
        out.tag = Radiance::Vacuum;
        return out;
    }
    const double f = out.quanta.dark / out.quanta.total;
    const double ref = 1.0 - independent_bright(m, cfg) / out.quanta.total;
    out.fractions.fraction_dark = f;
    out.fractions.reference = ref;
    if (out.quanta.bright <= epsilon * std::max(out.quanta.total, 1.0))
        out.tag = Radiance::Dark;
    else if (std::abs(f - ref) <= epsilon)
        out.tag = Radiance::Normal;
    else
        out.tag = f < ref ? Radiance::Superradiant : Radiance::Subradiant;
    return out;
}

ModeMoments propagate_moments(const ModeMoments& m0,
                              const CouplingConfig& cfg, double tau) {
    if (m0.n_modes() != cfg.n_modes)
        throw std::invalid_argument("propagate_moments: mode count mismatch");
    const int n = cfg.n_modes;
    Eigen::VectorXd g =
        Eigen::Map<const Eigen::VectorXd>(cfg.couplings.data(), n);
    const double gn2 = g.squaredNorm();
    Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n) +
                        (std::exp(-0.5 * n * tau) - 1.0) * (g * g.transpose()) /
                            gn2;
    ModeMoments m;
    m.means = e * m0.means;
    m.second = e * m0.second * e;
    return m;
}

TimeSeries closed_form_evolution(const StateSpec& spec,
                                 const CouplingConfig& cfg,
                                 const std::vector<double>& taus) {
    MRL q0 = mrl_expectations(spec, cfg);
    const double n = double(cfg.n_modes);
    TimeSeries ts;
    ts.times = taus;
    std::vector<double> intensity, total, bright, dark;
    for (double tau : taus) {
        if (!(tau >= 0.0))
            throw std::invalid_argument(
                "closed_form_evolution: tau must be >= 0");
        double r = q0.bright * std::exp(-n * tau);
        intensity.push_back(n * r);
        total.push_back(q0.dark + r);
        bright.push_back(r);
        dark.push_back(q0.dark);
    }
    ts.add_real("intensity", std::move(intensity));
    ts.add_real("total", std::move(total));
    ts.add_real("bright", std::move(bright));
    ts.add_real("dark", std::move(dark));
    return ts;
}

TimeSeries intensity_series(const StateSpec& spec, const CouplingConfig& cfg,
                            const std::vector<double>& taus) {
    TimeSeries full = closed_form_evolution(spec, cfg, taus);
    TimeSeries ts;
    ts.times = full.times;
    ts.channels.push_back(full.find("intensity"));
    return ts;
}

std::pair<double, double> split_intensity(const StateSpec& spec,
                                          const CouplingConfig& cfg,
                                          double tau) {
    if (!(tau >= 0.0))
        throw std::invalid_argument("split_intensity: tau must be >= 0");
    ModeMoments m = propagate_moments(state_moments(spec, cfg), cfg, tau);
    const double n = double(cfg.n_modes);
    double uncorrelated = n * independent_bright(m, cfg);
    double total = n * mrl_expectations(m, cfg).bright;
    return {uncorrelated, total - uncorrelated};
}

TimeSeries ladder_populations(const DickeSuperposition& state,
                              const CouplingConfig& cfg,
                              const std::vector<double>& taus) {
    validate_state(StateSpec(state), cfg);
    // Group squared amplitudes by ladder (degeneracy vector).
    std::map<std::vector<int>, std::map<int, double>> ladders;
    for (auto& t : state.terms)
        ladders[t.index.degeneracy][t.index.rung] += std::norm(t.amplitude);

    TimeSeries ts;
    ts.times = taus;
    const double n = double(cfg.n_modes);
    for (auto& [deg, rungs] : ladders) {
        const int top = rungs.rbegin()->first;
        std::string stem = "P";
        if (!deg.empty()) {
            stem += "_d";
            for (std::size_t k = 0; k < deg.size(); ++k) {
                if (k) stem += "x";
                stem += std::to_string(deg[std::size_t(k)]);
            }
        }
        for (int r = 0; r <= top; ++r) {
            std::vector<double> vals;
            for (double tau : taus) {
                if (!(tau >= 0.0))
                    throw std::invalid_argument(
                        "ladder_populations: tau must be >= 0");
                // drop = 1 - e^{-N tau}, computed stably near tau = 0.
                const double drop = -std::expm1(-n * tau);
                double p = 0.0;
                for (auto& [k, weight] : rungs) {
                    if (k < r) continue;
                    double term;
                    if (drop == 0.0) {
                        term = (k == r) ? 1.0 : 0.0;
                    } else {
                        term = std::exp(log_binomial(k, r) - r * n * tau +
                                        (k - r) * std::log(drop));
                    }
                    p += weight * term;
                }
                vals.push_back(p);
            }
            ts.add_real(stem + "_R" + std::to_string(r), std::move(vals));
        }
    }
    return ts;
}

double pascal_solution_check(int dim) {
    if (dim < 1)
        throw std::invalid_argument("pascal_solution_check: dim must be >= 1");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd binv = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 1; i <= dim; ++i) {
        a(i - 1, i - 1) = 1.0 - i;
        if (i + 1 <= dim) a(i - 1, i) = double(i);
        d(i - 1, i - 1) = 1.0 - i;
        for (int j = 1; j <= i; ++j) {
            b(i - 1, j - 1) = binomial(i - 1, j - 1);
            binv(i - 1, j - 1) =
                ((i - j) % 2 == 0 ? 1.0 : -1.0) * binomial(i - 1, j - 1);
        }
    }
    double r1 = (a - binv.transpose() * d * b.transpose())
                    .cwiseAbs()
                    .maxCoeff();
    double r2 = (b * binv - Eigen::MatrixXd::Identity(dim, dim))
                    .cwiseAbs()
                    .maxCoeff();
    return std::max(r1, r2);
}

TimeSeries two_time_correlation(const StateSpec& spec,
                                const CouplingConfig& cfg, int i, int j,
                                const std::vector<double>& taus) {
    if (i < 0 || i >= cfg.n_modes || j < 0 || j >= cfg.n_modes)
        throw std::out_of_range("two_time_correlation: mode out of range");
    ModeMoments m = state_moments(spec, cfg);
    Eigen::VectorXd g =
        Eigen::Map<const Eigen::VectorXd>(cfg.couplings.data(), cfg.n_modes);
    const double gn = cfg.total_norm();
    const Complex t_j = (g.transpose() * m.second.col(j))(0) / gn;
    const Complex bright_mean =
        (g.transpose() * m.means)(0) / gn;  // <C> on the initial state
    const Complex fluct = m.second(i, j) - std::conj(m.means[i]) * m.means[j];
    const Complex slope =
        (g[i] / gn) * (t_j - std::conj(bright_mean) * m.means[j]);
    const double n = double(cfg.n_modes);

    TimeSeries ts;
    ts.times = taus;
    std::vector<Complex> vals;
    for (double tau : taus) {
        if (!(tau >= 0.0))
            throw std::invalid_argument(
                "two_time_correlation: tau must be >= 0");
        vals.push_back(fluct + slope * std::expm1(-0.5 * n * tau));
    }
    ts.add_complex("corr", std::move(vals));
    return ts;
}

}  // namespace superrad
