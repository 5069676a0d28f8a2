// Command-line front end: wires the config file to the library and writes
// CSV plus static SVG renderings.  Exit codes: 0 ok, 1 validation error,
// 2 numerical contract failure.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "superrad/atomic.hpp"
#include "superrad/config.hpp"
#include "superrad/csv.hpp"
#include "superrad/dynamics.hpp"
#include "superrad/errors.hpp"
#include "superrad/oracle.hpp"
#include "superrad/preparation.hpp"
#include "superrad/svg.hpp"

namespace {

using namespace superrad;

std::string num(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void emit(const RunConfig& rc, const std::string& stem,
          const TimeSeries& series, const std::string& title,
          const std::string& time_label = "t_gamma") {
    const std::string csv_path = rc.output.path(stem, "csv");
    write_text_file(csv_path, to_csv(series, time_label));
    std::printf("wrote %s\n", csv_path.c_str());
    PlotOptions opt;
    opt.title = title;
    opt.x_label = time_label;
    const std::string svg_path = rc.output.path(stem, "svg");
    write_text_file(svg_path, line_plot_svg(series, opt));
    std::printf("wrote %s\n", svg_path.c_str());
}

int thread_budget(std::size_t work_items) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("SUPERRAD_THREADS")) {
        try {
            n = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw std::invalid_argument(
                "SUPERRAD_THREADS must be a positive integer");
        }
    }
    return std::min<std::size_t>(n, std::max<std::size_t>(work_items, 1));
}

// "lo:hi:count" -> uniform grid including both ends
std::vector<double> parse_range(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &tail) !=
            3 ||
        count < 1 || hi < lo)
        throw std::invalid_argument("bad range '" + spec +
                                    "', want lo:hi:count");
    if (count == 1 && hi != lo)
        throw std::invalid_argument("range '" + spec +
                                    "' has one sample but lo != hi");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        out[std::size_t(k)] =
            count == 1 ? lo : lo + (hi - lo) * k / double(count - 1);
    return out;
}

void run_classify(const RunConfig& rc) {
    auto cls = classify(rc.state, rc.coupling, rc.tolerances.epsilon);
    if (cls.fractions.fraction_dark && cls.fractions.reference) {
        std::printf("%s F=%.3f F_N=%.3f\n", to_string(cls.tag).c_str(),
                    *cls.fractions.fraction_dark, *cls.fractions.reference);
    } else {
        std::printf("%s F=- F_N=-\n", to_string(cls.tag).c_str());
    }
    std::printf("M=%.6g R=%.6g L=%.6g\n", cls.quanta.total, cls.quanta.bright,
                cls.quanta.dark);
}

void run_evolve(const RunConfig& rc, bool with_oracle, int cutoff) {
    const auto taus = rc.grid.taus();
    TimeSeries series = closed_form_evolution(rc.state, rc.coupling, taus);
    if (with_oracle) {
        const double dim =
            std::pow(double(cutoff) + 1.0, rc.coupling.n_modes);
        if (dim > 4096.0)
            throw std::invalid_argument(
                "evolve --oracle: the brute-force box has dimension "
                "(cutoff+1)^N = " +
                num(dim, "%.0f") +
                " > 4096; lower --cutoff or use fewer modes");
        DensityOperator rho = DensityOperator::from_state(
            rc.state, rc.coupling, cutoff, rc.tolerances.truncation);
        OracleOptions opts;
        opts.channel_tol = rc.tolerances.channel;
        opts.leak_threshold = rc.tolerances.leak;
        EvolutionRecord rec = evolve_reduced(rho, rc.coupling, taus, opts);
        for (const char* name : {"intensity", "total", "bright", "dark"})
            series.add_real(std::string("oracle_") + name,
                            rec.series.real_values(name));
    }
    emit(rc, "evolve", series, "collective decay");
}

void run_populations(const RunConfig& rc) {
    const auto* sup = std::get_if<DickeSuperposition>(&rc.state.value);
    if (!sup)
        throw std::invalid_argument(
            "populations: the configured state family has no closed-form "
            "ladder populations (use a dicke/moon state)");
    TimeSeries series =
        ladder_populations(*sup, rc.coupling, rc.grid.taus());
    emit(rc, "populations", series, "ladder populations");
}

void run_correlations(const RunConfig& rc, int i, int j) {
    const int n = rc.coupling.n_modes;
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("correlations: mode indices must lie in "
                                    "[0, " +
                                    std::to_string(n) + ")");
    TimeSeries series =
        two_time_correlation(rc.state, rc.coupling, i, j, rc.grid.taus());
    emit(rc, "correlations", series, "two-time correlation");
}

void run_compare_atomic(const RunConfig& rc, int n) {
    const auto taus = rc.grid.taus();
    TimeSeries atoms = atomic_intensity(n, taus);
    CouplingConfig ucfg = CouplingConfig::uniform(n, 1.0, 1.0);
    DickeSuperposition rung;
    rung.terms.push_back(
        {1.0, BasisIndex{std::vector<int>(std::size_t(n - 1), 0), n}});
    TimeSeries bosons = intensity_series(StateSpec(rung), ucfg, taus);
    TimeSeries series;
    series.times = taus;
    series.add_real("atomic", atoms.real_values("intensity"));
    series.add_real("bosonic", bosons.real_values("intensity"));
    emit(rc, "compare_atomic", series, "atomic vs bosonic intensity");
}

void run_sweep_fraction(const RunConfig& rc, const std::string& alpha_spec,
                        const std::string& r_spec) {
    const std::vector<double> alphas = parse_range(alpha_spec);
    const std::vector<double> rs = parse_range(r_spec);
    const int n = rc.coupling.n_modes;
    Eigen::MatrixXd values(rs.size(), alphas.size());

    // deterministic fan-out: point (ir, ia) owns one matrix slot
    const std::size_t points = rs.size() * alphas.size();
    const int workers = thread_budget(points);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_lock;
    auto work = [&](std::size_t start) {
        try {
            for (std::size_t p = start; p < points;
                 p += std::size_t(workers)) {
                const std::size_t ir = p / alphas.size();
                const std::size_t ia = p % alphas.size();
                ProductSqueezedCoherent state;
                state.alpha.assign(std::size_t(n), Complex(alphas[ia], 0.0));
                state.xi.assign(std::size_t(n), Complex(rs[ir], 0.0));
                auto split = dark_fraction(StateSpec(state), rc.coupling);
                values(Eigen::Index(ir), Eigen::Index(ia)) =
                    split.fraction_dark
                        ? *split.fraction_dark
                        : std::numeric_limits<double>::quiet_NaN();
            }
        } catch (...) {
            std::lock_guard<std::mutex> hold(error_lock);
            if (!first_error) first_error = std::current_exception();
        }
    };
    for (int w = 1; w < workers; ++w) pool.emplace_back(work, std::size_t(w));
    work(0);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    Table table;
    table.columns = {"alpha", "r", "fraction"};
    for (std::size_t ir = 0; ir < rs.size(); ++ir)
        for (std::size_t ia = 0; ia < alphas.size(); ++ia)
            table.rows.push_back({alphas[ia], rs[ir],
                                  values(Eigen::Index(ir), Eigen::Index(ia))});
    const std::string csv_path = rc.output.path("sweep_fraction", "csv");
    write_text_file(csv_path, to_csv(table));
    std::printf("wrote %s\n", csv_path.c_str());
    PlotOptions opt;
    opt.title = "trapped fraction";
    opt.x_label = "alpha";
    opt.y_label = "r";
    const std::string svg_path = rc.output.path("sweep_fraction", "svg");
    write_text_file(svg_path, heatmap_svg(alphas, rs, values, opt));
    std::printf("wrote %s\n", svg_path.c_str());
}

void run_waveguide(const RunConfig& rc, int input_guide, double hopping) {
    const auto times = rc.grid.taus();  // here: plain lattice time
    std::vector<double> fractions;
    fractions.reserve(times.size());
    for (double t : times)
        fractions.push_back(
            waveguide_dark_fraction(input_guide, hopping, t, rc.coupling));
    TimeSeries series;
    series.times = times;
    series.add_real("fraction", fractions);
    emit(rc, "waveguide", series, "waveguide dark fraction", "t");
}

void run_law_eberly(const RunConfig& rc, const std::string& target_spec) {
    std::vector<Complex> coeffs;
    std::istringstream in(target_spec);
    std::string tok;
    while (std::getline(in, tok, ',')) coeffs.push_back(parse_complex(tok));
    if (coeffs.empty())
        throw std::invalid_argument("law-eberly: empty target");
    Eigen::VectorXcd target(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        target[Eigen::Index(k)] = coeffs[k];
    Eigen::Map<const Eigen::VectorXd> couplings(
        rc.coupling.couplings.data(), rc.coupling.n_modes);

    PulseSequence seq = law_eberly_synthesize(target, couplings);
    const std::string path = rc.output.path("schedule", "txt");
    write_text_file(path, seq.to_text());
    std::printf("wrote %s\n", path.c_str());

    const int top = static_cast<int>(target.size()) - 1;
    QubitModeState prepared =
        law_eberly_simulate(seq, couplings, std::max(top, 1));
    std::printf("steps=%zu rotations=%d exchanges=%d pauses=%d\n",
                seq.steps.size(), seq.count(PulseStep::Kind::Rotation),
                seq.count(PulseStep::Kind::JaynesCummings),
                seq.count(PulseStep::Kind::PhasePause));
    std::printf("fidelity=%.12f\n", preparation_fidelity(prepared, target));
}

struct CheckRow {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass() const { return measured <= tolerance; }
};

// Fixed invariant battery over small oracle runs (N <= 3, M <= 3).
std::vector<CheckRow> oracle_battery() {
    std::vector<CheckRow> rows;
    std::vector<double> taus;
    for (int k = 0; k <= 24; ++k) taus.push_back(0.125 * k);

    {  // rung state: trace, conservation, exponential bright decay
        CouplingConfig cfg = CouplingConfig::uniform(2, 1.0, 4.0);
        DickeSuperposition rung;
        rung.terms.push_back({1.0, BasisIndex{{0}, 3}});
        DensityOperator rho =
            DensityOperator::from_state(StateSpec(rung), cfg, 3);
        EvolutionRecord rec = evolve_reduced(rho, cfg, taus, {});
        double trace_dev = 0.0, dark_drift = 0.0, bright_dev = 0.0;
        const auto& trace = rec.series.find("trace").values;
        const auto& dark = rec.series.find("dark").values;
        const auto& bright = rec.series.find("bright").values;
        for (std::size_t k = 0; k < taus.size(); ++k) {
            trace_dev = std::max(trace_dev,
                                 std::abs(trace[k].real() - 1.0));
            dark_drift =
                std::max(dark_drift, std::abs(dark[k].real() - dark[0].real()));
            const double law = 3.0 * std::exp(-2.0 * taus[k]);
            bright_dev = std::max(
                bright_dev, std::abs(bright[k].real() - law) /
                                std::max(law, 1e-300));
        }
        rows.push_back({"trace preserved", trace_dev, 1e-9});
        rows.push_back({"dark quanta conserved", dark_drift, 1e-8});
        rows.push_back({"bright rung exponential", bright_dev, 1e-6});
    }
    {  // dark state: no emission at all
        CouplingConfig cfg;
        cfg.n_modes = 3;
        cfg.couplings = {1.0, 2.0, 2.0};
        cfg.kappa = 2.0;
        DickeSuperposition dark_state;
        dark_state.terms.push_back({1.0, BasisIndex{{1, 0}, 0}});
        DensityOperator rho =
            DensityOperator::from_state(StateSpec(dark_state), cfg, 2);
        EvolutionRecord rec = evolve_reduced(rho, cfg, taus, {});
        double emitted = 0.0;
        for (const auto& v : rec.series.find("intensity").values)
            emitted = std::max(emitted, std::abs(v.real()));
        rows.push_back({"dark state stationary", emitted, 1e-9});
    }
    {  // moment flow against the brute-force density operator
        CouplingConfig cfg;
        cfg.n_modes = 2;
        cfg.couplings = {1.0, 2.0};
        cfg.kappa = 3.0;
        ProductSqueezedCoherent st;
        st.alpha = {Complex(0.4, 0.1), Complex(-0.3, 0.2)};
        st.xi = {Complex(0.2, 0.0), Complex(0.1, 0.0)};
        const StateSpec spec(st);
        DensityOperator rho = DensityOperator::from_state(spec, cfg, 13);
        OracleOptions opts;
        opts.store_states = true;
        std::vector<double> short_taus = {0.0, 0.35, 0.8};
        EvolutionRecord rec = evolve_reduced(rho, cfg, short_taus, opts);
        ModeMoments m0 = state_moments(spec, cfg);
        double dev = 0.0;
        for (std::size_t k = 0; k < short_taus.size(); ++k) {
            ModeMoments flowed = propagate_moments(m0, cfg, short_taus[k]);
            ModeMoments brute =
                moments_of_density(rho.space, rec.states[k]);
            dev = std::max(dev, (flowed.second - brute.second)
                                    .cwiseAbs()
                                    .maxCoeff());
            dev = std::max(dev,
                           (flowed.means - brute.means).cwiseAbs().maxCoeff());
        }
        rows.push_back({"moment flow agreement", dev, 1e-7});
    }
    {  // regression correlation against the closed form (Fock state)
        CouplingConfig cfg = CouplingConfig::uniform(2, 1.0, 2.0);
        StateSpec spec(MultimodeFock{{1, 1}});
        DensityOperator rho = DensityOperator::from_state(spec, cfg, 3);
        std::vector<double> short_taus = {0.0, 0.4, 1.1};
        TimeSeries oracle =
            regression_correlation(rho, cfg, 0, 1, short_taus, {});
        TimeSeries closed =
            two_time_correlation(spec, cfg, 0, 1, short_taus);
        double dev = 0.0;
        const auto& a = oracle.find("corr").values;
        const auto& b = closed.find("corr").values;
        for (std::size_t k = 0; k < short_taus.size(); ++k)
            dev = std::max(dev, std::abs(a[k] - b[k]));
        rows.push_back({"regression matches closed form", dev, 1e-8});
    }
    return rows;
}

int run_oracle_check() {
    const auto rows = oracle_battery();
    bool all_pass = true;
    for (const auto& row : rows) {
        all_pass = all_pass && row.pass();
        std::printf("%s  %-32s measured %.3e  (tolerance %.0e)\n",
                    row.pass() ? "PASS" : "FAIL", row.name.c_str(),
                    row.measured, row.tolerance);
    }
    std::printf("%s\n", all_pass ? "all oracle invariants hold"
                                 : "oracle invariant violated");
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collective decay of harmonic oscillators"};
    app.require_subcommand(1);

    std::string config_path;
    bool with_oracle = false;
    int cutoff = 6;
    int corr_i = 0, corr_j = 0;
    int atoms_n = 5;
    std::string alpha_spec = "0:2:41", r_spec = "0:2:41";
    int input_guide = 1;
    double hopping = 1.0;
    std::string target_spec;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "run configuration file")
            ->required();
    };

    auto* c_classify =
        app.add_subcommand("classify", "radiance class of the initial state");
    add_config(c_classify);
    auto* c_evolve =
        app.add_subcommand("evolve", "closed-form decay trajectory");
    add_config(c_evolve);
    c_evolve->add_flag("--oracle", with_oracle,
                       "overlay brute-force density-operator evolution");
    c_evolve->add_option("--cutoff", cutoff,
                         "per-mode Fock cutoff for the oracle overlay");
    auto* c_pop =
        app.add_subcommand("populations", "ladder population curves");
    add_config(c_pop);
    auto* c_corr =
        app.add_subcommand("correlations", "two-time mode correlations");
    add_config(c_corr);
    c_corr->add_option("--i", corr_i, "left mode index (0-based)");
    c_corr->add_option("--j", corr_j, "right mode index (0-based)");
    auto* c_atoms = app.add_subcommand(
        "compare-atomic", "oscillator ensemble vs two-level atoms");
    add_config(c_atoms);
    c_atoms->add_option("--n", atoms_n, "number of systems")->required();
    auto* c_sweep = app.add_subcommand(
        "sweep-fraction", "trapped fraction over displacement and squeeze");
    add_config(c_sweep);
    c_sweep->add_option("--alpha-range", alpha_spec, "lo:hi:count");
    c_sweep->add_option("--r-range", r_spec, "lo:hi:count");
    auto* c_guide = app.add_subcommand(
        "waveguide", "dark fraction after lattice propagation");
    add_config(c_guide);
    c_guide->add_option("--input-guide", input_guide, "injection guide, 1-based");
    c_guide->add_option("--hopping", hopping, "lattice hopping rate J");
    auto* c_le = app.add_subcommand(
        "law-eberly", "pulse schedule preparing a collective-mode target");
    add_config(c_le);
    c_le->add_option("--target", target_spec,
                     "comma-separated amplitudes c_0,c_1,...")
        ->required();
    auto* c_check =
        app.add_subcommand("oracle-check", "run the oracle invariant battery");
    add_config(c_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        RunConfig rc = load_config(config_path);
        if (app.got_subcommand(c_classify)) {
            run_classify(rc);
        } else if (app.got_subcommand(c_evolve)) {
            run_evolve(rc, with_oracle, cutoff);
        } else if (app.got_subcommand(c_pop)) {
            run_populations(rc);
        } else if (app.got_subcommand(c_corr)) {
            run_correlations(rc, corr_i, corr_j);
        } else if (app.got_subcommand(c_atoms)) {
            run_compare_atomic(rc, atoms_n);
        } else if (app.got_subcommand(c_sweep)) {
            run_sweep_fraction(rc, alpha_spec, r_spec);
        } else if (app.got_subcommand(c_guide)) {
            run_waveguide(rc, input_guide, hopping);
        } else if (app.got_subcommand(c_le)) {
            run_law_eberly(rc, target_spec);
        } else if (app.got_subcommand(c_check)) {
            return run_oracle_check();
        }
        return 0;
    } catch (const TruncationError& e) {
        std::fprintf(stderr, "truncation leak: %s (tail mass %s)\n", e.what(),
                     num(e.tail_mass(), "%.3e").c_str());
        return 2;
    } catch (const NumericalContractError& e) {
        std::fprintf(stderr, "numerical contract failure: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
