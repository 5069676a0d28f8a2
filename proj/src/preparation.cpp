#include "superrad/preparation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "superrad/dynamics.hpp"
#include "superrad/errors.hpp"
#include "superrad/states.hpp"

namespace superrad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAmpTol = 1e-12;  // amplitudes below this count as empty

double wrap_phase(double phi) {
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi > kPi) phi -= 2.0 * kPi;
    if (phi <= -kPi) phi += 2.0 * kPi;
    return phi;
}

}  // namespace

PulseStep PulseStep::rotation(Complex a) {
    PulseStep s;
    s.kind = Kind::Rotation;
    s.area = a;
    return s;
}
PulseStep PulseStep::jaynes_cummings(double gt) {
    PulseStep s;
    s.kind = Kind::JaynesCummings;
    s.duration = gt;
    return s;
}
PulseStep PulseStep::pause(double phi) {
    PulseStep s;
    s.kind = Kind::PhasePause;
    s.phase = phi;
    return s;
}

int PulseSequence::count(PulseStep::Kind kind) const {
    int n = 0;
    for (const auto& s : steps)
        if (s.kind == kind) ++n;
    return n;
}

void PulseSequence::validate() const {
    for (const auto& s : steps) {
        if (s.kind == PulseStep::Kind::JaynesCummings &&
            !(s.duration >= 0.0))
            throw std::invalid_argument(
                "PulseSequence: exchange durations must be >= 0");
        if (s.kind == PulseStep::Kind::Rotation && !std::isfinite(std::abs(s.area)))
            throw std::invalid_argument("PulseSequence: rotation area not finite");
        if (s.kind == PulseStep::Kind::PhasePause && !std::isfinite(s.phase))
            throw std::invalid_argument("PulseSequence: phase not finite");
    }
}

std::string PulseSequence::to_text() const {
    std::ostringstream out;
    char line[96];
    for (const auto& s : steps) {
        switch (s.kind) {
            case PulseStep::Kind::Rotation:
                std::snprintf(line, sizeof line, "ROT %.17g %.17g\n",
                              s.area.real(), s.area.imag());
                break;
            case PulseStep::Kind::JaynesCummings:
                std::snprintf(line, sizeof line, "JC %.17g\n", s.duration);
                break;
            case PulseStep::Kind::PhasePause:
                std::snprintf(line, sizeof line, "PHASE %.17g\n", s.phase);
                break;
        }
        out << line;
    }
    return out.str();
}

PulseSequence PulseSequence::from_text(const std::string& text) {
    PulseSequence seq;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        auto fail = [&] {
            throw std::invalid_argument("PulseSequence: bad line " +
                                        std::to_string(lineno) + ": " + line);
        };
        if (tag == "ROT") {
            double re, im;
            if (!(ls >> re >> im)) fail();
            seq.steps.push_back(PulseStep::rotation({re, im}));
        } else if (tag == "JC") {
            double gt;
            if (!(ls >> gt)) fail();
            seq.steps.push_back(PulseStep::jaynes_cummings(gt));
        } else if (tag == "PHASE") {
            double phi;
            if (!(ls >> phi)) fail();
            seq.steps.push_back(PulseStep::pause(phi));
        } else {
            fail();
        }
    }
    seq.validate();
    return seq;
}

QubitModeState QubitModeState::vacuum(int max_level) {
    if (max_level < 0)
        throw std::invalid_argument("QubitModeState: max_level < 0");
    QubitModeState s;
    s.ground = Eigen::VectorXcd::Zero(max_level + 1);
    s.excited = Eigen::VectorXcd::Zero(max_level + 1);
    s.ground[0] = 1.0;
    return s;
}

double QubitModeState::norm() const {
    return std::sqrt(ground.squaredNorm() + excited.squaredNorm());
}

void apply_rotation(QubitModeState& s, Complex area) {
    const double mag = std::abs(area);
    if (mag == 0.0) return;
    const double c = std::cos(mag), sn = std::sin(mag);
    const Complex up = Complex(0.0, -1.0) * (area / mag);    // -i e^{i eta}
    const Complex down = Complex(0.0, -1.0) * std::conj(area) / mag;
    for (Eigen::Index n = 0; n < s.ground.size(); ++n) {
        const Complex g = s.ground[n], e = s.excited[n];
        s.ground[n] = c * g + down * sn * e;
        s.excited[n] = c * e + up * sn * g;
    }
}

void apply_phase(QubitModeState& s, double phi) {
    s.excited *= std::exp(Complex(0.0, phi));
}

void apply_jc(QubitModeState& s, double gt) {
    const Eigen::Index top = s.ground.size() - 1;
    if (std::abs(s.excited[top]) > kAmpTol)
        throw TruncationError(
            "apply_jc: amplitude on the top excited level has no exchange "
            "partner inside the truncation",
            std::norm(s.excited[top]));
    for (Eigen::Index n = top; n >= 1; --n) {
        const double angle = gt * std::sqrt(double(n));
        const double c = std::cos(angle);
        const Complex is(0.0, std::sin(angle));
        const Complex g = s.ground[n], e = s.excited[n - 1];
        s.ground[n] = c * g - is * e;
        s.excited[n - 1] = c * e - is * g;
    }
}

namespace {

struct Stage {
    int level = 0;
    bool has_phase = false, has_jc = false, has_rot = false;
    double phi = 0.0, theta = 0.0;
    Complex area;
};

}  // namespace

PulseSequence law_eberly_synthesize(
    const Eigen::VectorXcd& target,
    const Eigen::VectorXd& collective_couplings) {
    if (target.size() == 0)
        throw std::invalid_argument("law_eberly_synthesize: empty target");
    if (!(collective_couplings.norm() > 0.0))
        throw std::invalid_argument(
            "law_eberly_synthesize: couplings must not vanish");
    const double nrm = target.norm();
    if (std::abs(nrm - 1.0) > 1e-9)
        throw std::invalid_argument(
            "law_eberly_synthesize: target must be normalized");

    int top = static_cast<int>(target.size()) - 1;
    while (top > 0 && std::abs(target[top]) <= kAmpTol) --top;

    QubitModeState state;
    state.ground = target / nrm;
    state.excited = Eigen::VectorXcd::Zero(target.size());

    // Reverse pass: empty the ladder one level at a time.
    std::vector<Stage> stages;
    for (int n = top; n >= 1; --n) {
        const Complex g_n = state.ground[n];
        const Complex e_below = state.excited[n - 1];
        if (std::abs(g_n) <= kAmpTol && std::abs(e_below) <= kAmpTol)
            continue;
        Stage st;
        st.level = n;
        if (std::abs(g_n) > kAmpTol) {
            if (std::abs(e_below) > kAmpTol) {
                st.phi = wrap_phase(std::arg(g_n) - std::arg(e_below) -
                                    0.5 * kPi);
                if (st.phi != 0.0) {
                    st.has_phase = true;
                    apply_phase(state, st.phi);
                }
            }
            st.theta = std::atan2(std::abs(g_n), std::abs(e_below));
            st.has_jc = true;
            apply_jc(state, st.theta / std::sqrt(double(n)));
            if (std::abs(state.ground[n]) > 1e-10)
                throw NumericalContractError(
                    "law_eberly_synthesize: exchange pulse failed to empty "
                    "the level");
        }
        const Complex g = state.ground[n - 1];
        const Complex e = state.excited[n - 1];
        if (std::abs(e) > kAmpTol) {
            double mag, eta;
            if (std::abs(g) <= kAmpTol) {
                mag = 0.5 * kPi;
                eta = 0.0;
            } else {
                mag = std::atan(std::abs(e) / std::abs(g));
                eta = std::arg(e / g) - 0.5 * kPi;
            }
            st.area = mag * std::exp(Complex(0.0, eta));
            st.has_rot = true;
            apply_rotation(state, st.area);
            if (std::abs(state.excited[n - 1]) > 1e-10)
                throw NumericalContractError(
                    "law_eberly_synthesize: rotation failed to ground the "
                    "qubit");
        }
        stages.push_back(st);
    }

    // Forward pass: invert the chain.  Rotations invert by negating the
    // area, the exchange pulse by conjugation with pi pauses, and pauses by
    // sign; a pending phase rides right through rotations (it reappears as
    // e^{-i p} on the area) and merges into the pre-exchange pause.
    PulseSequence seq;
    double pending = 0.0;
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        const Stage& st = *it;
        if (st.has_rot) {
            const Complex area =
                -st.area * std::exp(Complex(0.0, -pending));
            if (std::abs(area) > kAmpTol)
                seq.steps.push_back(PulseStep::rotation(area));
        }
        if (st.has_jc) {
            const double phi = wrap_phase(pending + kPi);
            if (std::abs(phi) > kAmpTol)
                seq.steps.push_back(PulseStep::pause(phi));
            seq.steps.push_back(PulseStep::jaynes_cummings(
                st.theta / std::sqrt(double(st.level))));
            pending = kPi - (st.has_phase ? st.phi : 0.0);
        } else {
            pending -= st.has_phase ? st.phi : 0.0;
        }
    }
    // A trailing pause only phases the empty excited sector: drop it.
    seq.validate();
    return seq;
}

QubitModeState law_eberly_simulate(
    const PulseSequence& seq, const Eigen::VectorXd& collective_couplings,
    int max_quanta) {
    if (!(collective_couplings.norm() > 0.0))
        throw std::invalid_argument(
            "law_eberly_simulate: couplings must not vanish");
    seq.validate();
    QubitModeState state = QubitModeState::vacuum(max_quanta);
    for (const auto& s : seq.steps) {
        switch (s.kind) {
            case PulseStep::Kind::Rotation:
                apply_rotation(state, s.area);
                break;
            case PulseStep::Kind::JaynesCummings:
                apply_jc(state, s.duration);
                break;
            case PulseStep::Kind::PhasePause:
                apply_phase(state, s.phase);
                break;
        }
    }
    return state;
}

double preparation_fidelity(const QubitModeState& prepared,
                            const Eigen::VectorXcd& target) {
    Complex overlap = 0.0;
    const Eigen::Index n =
        std::min(prepared.ground.size(), target.size());
    for (Eigen::Index k = 0; k < n; ++k)
        overlap += std::conj(target[k]) * prepared.ground[k];
    return std::norm(overlap);
}

namespace {

void expand_level(const Eigen::VectorXd& w, Complex prefix, int mode,
                  int remaining, std::vector<int>& occ,
                  std::vector<MultimodeTerm>& out) {
    const int n_modes = static_cast<int>(w.size());
    if (mode == n_modes - 1) {
        occ[std::size_t(mode)] = remaining;
        Complex amp = prefix * std::pow(w[mode], remaining) /
                      std::sqrt(std::tgamma(double(remaining) + 1.0));
        if (std::abs(amp) > 1e-15) out.push_back({occ, amp});
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        occ[std::size_t(mode)] = k;
        const Complex next = prefix * std::pow(w[mode], k) /
                             std::sqrt(std::tgamma(double(k) + 1.0));
        if (std::abs(next) > 1e-15 || k == 0)
            expand_level(w, next, mode + 1, remaining - k, occ, out);
    }
}

}  // namespace

std::vector<MultimodeTerm> multimode_expansion(
    const Eigen::VectorXcd& coeffs, const Eigen::VectorXd& couplings) {
    const double nrm = couplings.norm();
    if (!(nrm > 0.0))
        throw std::invalid_argument(
            "multimode_expansion: couplings must not vanish");
    Eigen::VectorXd w = couplings / nrm;
    std::vector<MultimodeTerm> out;
    std::vector<int> occ(std::size_t(w.size()), 0);
    for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
        if (std::abs(coeffs[n]) <= 1e-15) continue;
        const Complex prefix =
            coeffs[n] * std::sqrt(std::tgamma(double(n) + 1.0));
        expand_level(w, prefix, 0, static_cast<int>(n), occ, out);
    }
    return out;
}

WaveguidePropagator waveguide_propagator(int n_guides, double coupling,
                                         double omega, double t) {
    if (n_guides < 1)
        throw std::invalid_argument("waveguide_propagator: need guides >= 1");
    if (!(t >= 0.0))
        throw std::invalid_argument("waveguide_propagator: need t >= 0");
    WaveguidePropagator wp;
    wp.n_guides = n_guides;
    wp.coupling = coupling;
    wp.omega = omega;
    wp.time = t;
    wp.matrix = Eigen::MatrixXcd::Zero(n_guides, n_guides);
    const double denom = n_guides + 1.0;
    for (int p = 1; p <= n_guides; ++p) {
        const double energy =
            omega + 2.0 * coupling * std::cos(p * kPi / denom);
        const Complex phase = std::exp(Complex(0.0, -energy * t));
        for (int j = 1; j <= n_guides; ++j)
            for (int q = 1; q <= n_guides; ++q)
                wp.matrix(j - 1, q - 1) += (2.0 / denom) * phase *
                                           std::sin(q * p * kPi / denom) *
                                           std::sin(j * p * kPi / denom);
    }
    return wp;
}

double WaveguidePropagator::unitarity_defect() const {
    return (matrix.adjoint() * matrix -
            Eigen::MatrixXcd::Identity(n_guides, n_guides))
        .cwiseAbs()
        .maxCoeff();
}

double waveguide_dark_fraction(int input_guide, double coupling, double t,
                               const CouplingConfig& cfg) {
    cfg.validate();
    if (input_guide < 1 || input_guide > cfg.n_modes)
        throw std::out_of_range("waveguide_dark_fraction: bad input guide");
    WaveguidePropagator wp =
        waveguide_propagator(cfg.n_modes, coupling, cfg.omega, t);
    Eigen::VectorXcd psi = wp.matrix.col(input_guide - 1);
    // One photon over the bare modes re-expressed over the collective ones.
    Eigen::MatrixXd u = collective_transform(cfg);
    Eigen::VectorXcd beta = u * psi;
    DickeSuperposition state;
    const int n = cfg.n_modes;
    for (int mode = 0; mode < n; ++mode) {
        if (std::abs(beta[mode]) <= 1e-14) continue;
        std::vector<int> deg(std::size_t(n - 1), 0);
        int rung = 0;
        if (mode == n - 1)
            rung = 1;  // bright quantum
        else
            deg[std::size_t(mode)] = 1;
        state.terms.push_back({beta[mode], BasisIndex{deg, rung}});
    }
    auto split = dark_fraction(StateSpec(state), cfg);
    if (!split.fraction_dark.has_value())
        throw NumericalContractError(
            "waveguide_dark_fraction: evolved photon vanished");
    return *split.fraction_dark;
}

}  // namespace superrad
