#include "superrad/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "superrad/errors.hpp"
#include "superrad/ode.hpp"

namespace superrad {

namespace {

using SpMat = Eigen::SparseMatrix<Complex>;

// tr(A rho) for sparse A, contracting only over the stored entries.
Complex trace_product(const SpMat& a, const Eigen::MatrixXcd& rho) {
    Complex sum = 0.0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it)
            sum += it.value() * rho(it.col(), it.row());
    return sum;
}

// rho' = rate (2 A rho A^dag - A^dag A rho - rho A^dag A), all parts dense
// only where they must be.
struct LindbladTerm {
    SpMat a, a_dag, a_dag_a;
    double rate = 1.0;

    explicit LindbladTerm(const SpMat& op, double r)
        : a(op), a_dag(op.adjoint()), a_dag_a((a_dag * a).pruned()), rate(r) {}

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const {
        Eigen::MatrixXcd out = 2.0 * ((a * rho) * a_dag);
        out -= a_dag_a * rho;
        out -= rho * a_dag_a;
        return rate * out;
    }
};

void check_space(const DensityOperator& rho0) {
    if (rho0.rho.rows() != rho0.space.dim() ||
        rho0.rho.cols() != rho0.space.dim())
        throw std::invalid_argument(
            "oracle: density matrix does not match its Fock space");
}

// Population the truncated generator handles wrongly: a state loses
// amplitude only when a creation operator pushes some occupation past its
// cutoff, and every creation in these generators rides a transfer term
// (b_j^dag b_k or a^dag C), so the danger set is "mode at its cutoff with
// quanta elsewhere to move in".  On a uniform box whose cutoff covers the
// total quanta this set is empty: such boxes are exactly closed and the
// only truncation is the gated initial tail, which trace-norm contraction
// cannot amplify.
double transfer_edge_mass(const FockSpace& space, const Eigen::MatrixXcd& rho) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const double p = rho(i, i).real();
        if (p == 0.0) continue;
        auto occ = space.occupations(i);
        int total = 0;
        for (int v : occ) total += v;
        for (int j = 0; j < space.n_modes(); ++j)
            if (occ[std::size_t(j)] >= space.cutoff(j) &&
                total > occ[std::size_t(j)]) {
                mass += p;
                break;
            }
    }
    return mass;
}

// Abort as soon as danger mass grows beyond what was already there at t = 0
// (an initial tail pressed against the cutoff is gated by from_state; only
// growth signals that the evolution itself is being truncated).
struct LeakGuard {
    const FockSpace& space;
    double baseline;
    double threshold;

    LeakGuard(const FockSpace& s, const Eigen::MatrixXcd& rho0, double thr)
        : space(s), baseline(transfer_edge_mass(s, rho0)), threshold(thr) {}

    void check(double t, const Eigen::MatrixXcd& rho) const {
        const double edge = transfer_edge_mass(space, rho);
        if (edge > baseline + threshold)
            throw NumericalContractError(
                "oracle: truncation leak of " +
                std::to_string(edge - baseline) + " at t = " +
                std::to_string(t) + "; enlarge the cutoff");
    }
};

}  // namespace

void DensityOperator::validate(double hermiticity_tol, double trace_tol,
                               double negativity_tol) const {
    if (rho.rows() != rho.cols() || rho.rows() != space.dim())
        throw std::invalid_argument(
            "DensityOperator: matrix does not match the Fock space");
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > hermiticity_tol)
        throw std::invalid_argument(
            "DensityOperator: not Hermitian (deviation " +
            std::to_string(herm) + ")");
    const double trace_err = std::abs(rho.trace() - Complex(1.0));
    if (trace_err > trace_tol)
        throw std::invalid_argument("DensityOperator: trace off by " +
                                    std::to_string(trace_err));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -negativity_tol)
        throw std::invalid_argument(
            "DensityOperator: negative eigenvalue " + std::to_string(min_eig));
}

DensityOperator DensityOperator::from_state(const StateSpec& spec,
                                            const CouplingConfig& cfg,
                                            int max_quanta, double tail_tol) {
    FockRep rep = fock_representation(spec, cfg, max_quanta, tail_tol);
    return DensityOperator{rep.space, rep.density_matrix()};
}

EvolutionRecord evolve_reduced(const DensityOperator& rho0,
                               const CouplingConfig& cfg,
                               const std::vector<double>& taus,
                               const OracleOptions& options) {
    cfg.validate();
    check_space(rho0);
    const int n = cfg.n_modes;
    if (rho0.space.n_modes() != n)
        throw std::invalid_argument("evolve_reduced: mode count mismatch");

    Eigen::VectorXd weights =
        Eigen::Map<const Eigen::VectorXd>(cfg.couplings.data(), n) /
        cfg.total_norm();
    const LindbladTerm decay(rho0.space.weighted_annihilation(weights),
                             0.5 * n);
    std::vector<SpMat> numbers;
    for (int j = 0; j < n; ++j) numbers.push_back(rho0.space.number_matrix(j));

    const LeakGuard guard(rho0.space, rho0.rho, options.leak_threshold);
    auto deriv = [&](double, const Eigen::MatrixXcd& rho) {
        return decay.apply(rho);
    };
    auto monitor = [&](const Eigen::MatrixXcd& rho) {
        Eigen::VectorXd v(n + 2);
        for (int j = 0; j < n; ++j)
            v[j] = std::real(trace_product(numbers[j], rho));
        v[n] = std::real(trace_product(decay.a_dag_a, rho));  // bright
        v[n + 1] = std::real(rho.trace());
        return v;
    };

    EvolutionRecord rec;
    std::vector<double> total(taus.size()), bright(taus.size()),
        dark(taus.size()), intensity(taus.size()), trace(taus.size());
    std::vector<std::vector<double>> occ(n,
                                         std::vector<double>(taus.size()));
    auto record = [&](std::size_t k, double tau, const Eigen::MatrixXcd& rho) {
        guard.check(tau, rho);
        double tot = 0.0;
        for (int j = 0; j < n; ++j) {
            occ[j][k] = std::real(trace_product(numbers[j], rho));
            tot += occ[j][k];
        }
        const double br = std::real(trace_product(decay.a_dag_a, rho));
        total[k] = tot;
        bright[k] = br;
        dark[k] = tot - br;
        intensity[k] = n * br;
        trace[k] = std::real(rho.trace());
        if (options.store_states) rec.states.push_back(rho);
    };

    RK4Options rk;
    rk.channel_tol = options.channel_tol;
    rk4_evolve<Eigen::MatrixXcd>(deriv, rho0.rho, taus, monitor, record, rk);

    rec.series.times = taus;
    rec.series.add_real("total", std::move(total));
    rec.series.add_real("bright", std::move(bright));
    rec.series.add_real("dark", std::move(dark));
    rec.series.add_real("intensity", std::move(intensity));
    for (int j = 0; j < n; ++j)
        rec.series.add_real("occ_" + std::to_string(j + 1),
                            std::move(occ[j]));
    rec.series.add_real("trace", std::move(trace));
    return rec;
}

EvolutionRecord evolve_full_with_ancilla(const DensityOperator& system_rho0,
                                         const CouplingConfig& cfg,
                                         const std::vector<double>& taus,
                                         int ancilla_cutoff,
                                         const OracleOptions& options) {
    cfg.validate();
    check_space(system_rho0);
    const int n = cfg.n_modes;
    if (system_rho0.space.n_modes() != n)
        throw std::invalid_argument(
            "evolve_full_with_ancilla: mode count mismatch");
    if (ancilla_cutoff < 1)
        throw std::invalid_argument(
            "evolve_full_with_ancilla: ancilla cutoff must be >= 1");

    std::vector<int> cutoffs;
    for (int j = 0; j < n; ++j) cutoffs.push_back(system_rho0.space.cutoff(j));
    cutoffs.push_back(ancilla_cutoff);
    FockSpace ext(cutoffs);

    Eigen::MatrixXcd anc_vac =
        Eigen::MatrixXcd::Zero(ancilla_cutoff + 1, ancilla_cutoff + 1);
    anc_vac(0, 0) = 1.0;
    Eigen::MatrixXcd rho =
        Eigen::kroneckerProduct(system_rho0.rho, anc_vac).eval();

    // Rates in tau = Gamma t units for Gamma = 4 G^2 / (N kappa): only the
    // stiffness ratio kappa / G enters.
    const double ratio = cfg.kappa / cfg.total_norm();
    const double g_over_gamma = 0.25 * n * ratio;          // G / Gamma
    const double kappa_over_gamma = 0.25 * n * ratio * ratio;

    Eigen::VectorXd weights(n + 1);
    weights.setZero();
    for (int j = 0; j < n; ++j) weights[j] = cfg.couplings[j];
    weights /= cfg.total_norm();
    SpMat c = ext.weighted_annihilation(weights);
    SpMat c_dag = c.adjoint();
    SpMat a = ext.annihilation_matrix(n);
    SpMat a_dag = a.adjoint();
    SpMat h = (g_over_gamma * (a_dag * c + a * c_dag).eval()).pruned();
    SpMat bright_op = (c_dag * c).pruned();
    std::vector<SpMat> numbers;
    for (int j = 0; j <= n; ++j) numbers.push_back(ext.number_matrix(j));

    // Anticommutator half of the dissipator folded into a non-Hermitian
    // effective Hamiltonian,
    //   rho' = -i (H_eff rho - rho H_eff^dag) + (kappa/Gamma) a rho a^dag,
    //   H_eff = H - i (kappa / 2 Gamma) a^dag a:
    // same generator, two fewer sparse products per call.
    SpMat a_dag_a = (a_dag * a).pruned();
    SpMat h_eff =
        (h - Complex(0.0, 0.5 * kappa_over_gamma) * a_dag_a).pruned();
    SpMat h_eff_dag = h_eff.adjoint();
    auto deriv = [&](double, const Eigen::MatrixXcd& r) {
        Eigen::MatrixXcd out =
            Complex(0.0, -1.0) * (h_eff * r - r * h_eff_dag);
        out += kappa_over_gamma * ((a * r) * a_dag);
        return out;
    };
    auto monitor = [&](const Eigen::MatrixXcd& r) {
        Eigen::VectorXd v(n + 3);
        for (int j = 0; j <= n; ++j)
            v[j] = std::real(trace_product(numbers[j], r));
        v[n + 1] = std::real(trace_product(bright_op, r));
        v[n + 2] = std::real(r.trace());
        return v;
    };

    const LeakGuard guard(ext, rho, options.leak_threshold);
    EvolutionRecord rec;
    rec.kappa_ratio = ratio;
    std::vector<double> total(taus.size()), bright(taus.size()),
        dark(taus.size()), intensity(taus.size()), ancilla(taus.size()),
        trace(taus.size());
    std::vector<std::vector<double>> occ(n,
                                         std::vector<double>(taus.size()));
    auto record = [&](std::size_t k, double tau, const Eigen::MatrixXcd& r) {
        guard.check(tau, r);
        double tot = 0.0;
        for (int j = 0; j < n; ++j) {
            occ[j][k] = std::real(trace_product(numbers[j], r));
            tot += occ[j][k];
        }
        const double br = std::real(trace_product(bright_op, r));
        total[k] = tot;
        bright[k] = br;
        dark[k] = tot - br;
        intensity[k] = n * br;
        ancilla[k] = std::real(trace_product(numbers[n], r));
        trace[k] = std::real(r.trace());
        if (options.store_states) rec.states.push_back(r);
    };

    // Fast sector: a coherence |i><j| loses amplitude at
    // (n_a(i) + n_a(j))/2 * kappa/Gamma, and neither the exchange coupling
    // nor the loss ever raises the total quantum number, so the stiffest
    // populated scale is set by the largest total occupancy at tau = 0 (the
    // ancilla can never hold more than that, or than its own cutoff).  Seed
    // the step count inside the RK4 stability region of that scale so the
    // first doubling comparison is already meaningful; accuracy is still
    // guarded by the Richardson acceptance, the seed is only a floor.
    int q_max = 0;
    for (Eigen::Index i = 0; i < ext.dim(); ++i) {
        if (std::real(rho(i, i)) <= 1e-14) continue;
        int tot = 0;
        for (int v : ext.occupations(i)) tot += v;
        q_max = std::max(q_max, tot);
    }
    q_max = std::max(1, q_max);
    double max_dt = 0.0;
    for (std::size_t k = 0; k + 1 < taus.size(); ++k)
        max_dt = std::max(max_dt, taus[k + 1] - taus[k]);
    const double rate =
        kappa_over_gamma * std::min(ancilla_cutoff, q_max) +
        4.0 * g_over_gamma * std::sqrt(double(q_max));
    int floor_steps = 1;
    if (max_dt > 0.0) {
        double want = std::ceil(max_dt * rate / 2.5);
        floor_steps = static_cast<int>(std::min(want, double(1 << 18)));
        floor_steps = std::max(1, floor_steps);
    }
    RK4Options rk;
    rk.channel_tol = options.channel_tol;
    rk.min_steps = floor_steps;
    rk.seed_steps = floor_steps;
    rk4_evolve<Eigen::MatrixXcd>(deriv, rho, taus, monitor, record, rk);

    rec.series.times = taus;
    rec.series.add_real("total", std::move(total));
    rec.series.add_real("bright", std::move(bright));
    rec.series.add_real("dark", std::move(dark));
    rec.series.add_real("intensity", std::move(intensity));
    for (int j = 0; j < n; ++j)
        rec.series.add_real("occ_" + std::to_string(j + 1),
                            std::move(occ[j]));
    rec.series.add_real("ancilla", std::move(ancilla));
    rec.series.add_real("trace", std::move(trace));
    return rec;
}

EvolutionRecord evolve_independent_baths(const DensityOperator& rho0,
                                         const std::vector<double>& gamma_ts,
                                         const OracleOptions& options) {
    check_space(rho0);
    const int n = rho0.space.n_modes();
    std::vector<LindbladTerm> terms;
    std::vector<SpMat> numbers;
    for (int j = 0; j < n; ++j) {
        terms.emplace_back(rho0.space.annihilation_matrix(j), 1.0);
        numbers.push_back(rho0.space.number_matrix(j));
    }

    auto deriv = [&](double, const Eigen::MatrixXcd& rho) {
        Eigen::MatrixXcd out = terms[0].apply(rho);
        for (int j = 1; j < n; ++j) out += terms[j].apply(rho);
        return out;
    };
    auto monitor = [&](const Eigen::MatrixXcd& rho) {
        Eigen::VectorXd v(n + 1);
        for (int j = 0; j < n; ++j)
            v[j] = std::real(trace_product(numbers[j], rho));
        v[n] = std::real(rho.trace());
        return v;
    };

    const LeakGuard guard(rho0.space, rho0.rho, options.leak_threshold);
    EvolutionRecord rec;
    std::vector<double> total(gamma_ts.size()), trace(gamma_ts.size());
    std::vector<std::vector<double>> occ(
        n, std::vector<double>(gamma_ts.size()));
    auto record = [&](std::size_t k, double t, const Eigen::MatrixXcd& rho) {
        guard.check(t, rho);
        double tot = 0.0;
        for (int j = 0; j < n; ++j) {
            occ[j][k] = std::real(trace_product(numbers[j], rho));
            tot += occ[j][k];
        }
        total[k] = tot;
        trace[k] = std::real(rho.trace());
        if (options.store_states) rec.states.push_back(rho);
    };

    RK4Options rk;
    rk.channel_tol = options.channel_tol;
    rk4_evolve<Eigen::MatrixXcd>(deriv, rho0.rho, gamma_ts, monitor, record,
                                 rk);

    rec.series.times = gamma_ts;
    rec.series.add_real("total", std::move(total));
    for (int j = 0; j < n; ++j)
        rec.series.add_real("occ_" + std::to_string(j + 1),
                            std::move(occ[j]));
    rec.series.add_real("trace", std::move(trace));
    return rec;
}

namespace {

// rho and the regression companion X = e^{L tau}[b_j rho0] ride through the
// integrator together so both see identical step sequences.
struct PairMat {
    Eigen::MatrixXcd rho, x;
};
PairMat operator+(const PairMat& l, const PairMat& r) {
    return {l.rho + r.rho, l.x + r.x};
}
PairMat operator*(double s, const PairMat& m) {
    return {s * m.rho, s * m.x};
}

}  // namespace

TimeSeries regression_correlation(const DensityOperator& rho0,
                                  const CouplingConfig& cfg, int i, int j,
                                  const std::vector<double>& taus,
                                  const OracleOptions& options) {
    cfg.validate();
    check_space(rho0);
    const int n = cfg.n_modes;
    if (rho0.space.n_modes() != n)
        throw std::invalid_argument(
            "regression_correlation: mode count mismatch");
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::out_of_range("regression_correlation: mode out of range");

    Eigen::VectorXd weights =
        Eigen::Map<const Eigen::VectorXd>(cfg.couplings.data(), n) /
        cfg.total_norm();
    const LindbladTerm decay(rho0.space.weighted_annihilation(weights),
                             0.5 * n);
    SpMat b_i_dag = rho0.space.annihilation_matrix(i).adjoint();
    SpMat b_j = rho0.space.annihilation_matrix(j);

    PairMat y0{rho0.rho, (b_j * rho0.rho).eval()};
    const Complex mean_j0 = y0.x.trace();  // tr(b_j rho0)

    auto deriv = [&](double, const PairMat& y) {
        return PairMat{decay.apply(y.rho), decay.apply(y.x)};
    };
    auto monitor = [&](const PairMat& y) {
        const Complex cx = trace_product(b_i_dag, y.x);
        const Complex cr = trace_product(b_i_dag, y.rho);
        Eigen::VectorXd v(5);
        v << cx.real(), cx.imag(), cr.real(), cr.imag(),
            std::real(y.rho.trace());
        return v;
    };

    const LeakGuard guard(rho0.space, rho0.rho, options.leak_threshold);
    std::vector<Complex> corr(taus.size());
    auto record = [&](std::size_t k, double tau, const PairMat& y) {
        guard.check(tau, y.rho);
        const Complex mean_i = trace_product(b_i_dag, y.rho);
        corr[k] = trace_product(b_i_dag, y.x) - mean_i * mean_j0;
    };

    RK4Options rk;
    rk.channel_tol = options.channel_tol;
    rk4_evolve<PairMat>(deriv, y0, taus, monitor, record, rk);

    TimeSeries ts;
    ts.times = taus;
    ts.add_complex("corr", std::move(corr));
    return ts;
}

}  // namespace superrad
