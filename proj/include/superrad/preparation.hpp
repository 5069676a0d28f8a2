#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "superrad/coupling.hpp"
#include "superrad/fock.hpp"

namespace superrad {

/// One control primitive of the qubit + collective-mode preparation chain.
///   Rotation:       qubit drive with complex Rabi area A = integral E dt,
///                   U = exp(-i (A sigma+ + A* sigma-))
///   JaynesCummings: exchange coupling for duration t, recorded as the
///                   product s = g~ t; level n swaps at angle s sqrt(n)
///   PhasePause:     relative phase on the excited qubit state,
///                   U = diag(1, e^{i phi})
struct PulseStep {
    enum class Kind { Rotation, JaynesCummings, PhasePause };
    Kind kind = Kind::Rotation;
    Complex area;           ///< Rotation
    double duration = 0.0;  ///< JaynesCummings: g~ t >= 0
    double phase = 0.0;     ///< PhasePause, radians

    static PulseStep rotation(Complex a);
    static PulseStep jaynes_cummings(double gt);
    static PulseStep pause(double phi);
};

struct PulseSequence {
    std::vector<PulseStep> steps;

    int count(PulseStep::Kind kind) const;
    void validate() const;  ///< throws std::invalid_argument on bad steps

    /// Line-oriented schedule: "ROT <re> <im>", "JC <gt>", "PHASE <rad>".
    std::string to_text() const;
    static PulseSequence from_text(const std::string& text);
};

/// Qubit (ground/excited) tensor one bosonic mode, levels 0..max.  The
/// preparation pulses act in closed form on the 2x2 blocks.
struct QubitModeState {
    Eigen::VectorXcd ground, excited;

    static QubitModeState vacuum(int max_level);
    int max_level() const { return static_cast<int>(ground.size()) - 1; }
    double norm() const;
};

void apply_rotation(QubitModeState& s, Complex area);
void apply_phase(QubitModeState& s, double phi);
/// Throws TruncationError if amplitude sits on |e, max_level> (its exchange
/// partner lies outside the truncation).
void apply_jc(QubitModeState& s, double gt);

/// Pulse schedule preparing sum_n c_n (d^dag)^n / sqrt(n!) |0> on the mode
/// the qubit couples to, qubit returning to its ground state.  Built by
/// reverse evolution: walking down from the top occupied level, a phase
/// pause aligns |g,n> with |e,n-1>, a fractional exchange pulse empties
/// level n into |e,n-1>, and a qubit rotation folds that into |g,n-1>; the
/// forward schedule is the inverted chain with phases absorbed into the
/// rotation areas.  At most one rotation, one pause, and one exchange pulse
/// per occupied level.  Couplings enter serialized durations only through
/// the product g~ t, so the schedule itself is coupling independent; the
/// vector fixes the mode and must not vanish.
PulseSequence law_eberly_synthesize(
    const Eigen::VectorXcd& target,
    const Eigen::VectorXd& collective_couplings);

/// Runs a schedule on |g, 0> with mode levels 0..max_quanta.
QubitModeState law_eberly_simulate(const PulseSequence& seq,
                                   const Eigen::VectorXd& collective_couplings,
                                   int max_quanta);

/// |<target|prepared>|^2 against the mode amplitudes in the ground sector
/// (global phase dropped; any excited-sector amplitude counts as loss).
double preparation_fidelity(const QubitModeState& prepared,
                            const Eigen::VectorXcd& target);

/// Expansion of sum_n c_n (d^dag)^n / sqrt(n!) |0> over the modes behind
/// d = sum_j w_j m_j with w = couplings / |couplings|:  each occupation
/// pattern (k_1..k_N) with sum k = n carries sqrt(n!) prod w_j^{k_j} /
/// sqrt(k_j!) c_n.  Terms below 1e-15 in amplitude are dropped.
struct MultimodeTerm {
    std::vector<int> occupations;
    Complex amplitude;
};
std::vector<MultimodeTerm> multimode_expansion(
    const Eigen::VectorXcd& coeffs, const Eigen::VectorXd& couplings);

/// Nearest-neighbour photonic lattice propagator
///   A(j, q) = (2/(N+1)) sum_p e^{-i (omega + 2 J cos(p pi/(N+1))) t}
///             sin(q p pi/(N+1)) sin(j p pi/(N+1)),
/// the single-photon amplitude for guide q to reach guide j after time t.
/// Unitary for every t; A(0) = identity.
struct WaveguidePropagator {
    int n_guides = 0;
    double coupling = 0.0;
    double omega = 0.0;
    double time = 0.0;
    Eigen::MatrixXcd matrix;  ///< (j, q) zero-based

    double unitarity_defect() const;  ///< max |A^dag A - I|
};
WaveguidePropagator waveguide_propagator(int n_guides, double coupling,
                                         double omega, double t);

/// Dark-energy fraction F of the ensemble state reached by injecting one
/// photon into `input_guide` (1-based), letting the lattice evolve for time
/// t, then handing the guides over to the superradiant section described by
/// cfg (mode j takes the photon amplitude of guide j).  Uniform couplings
/// keep the analytic midpoint/oscillation structure.
double waveguide_dark_fraction(int input_guide, double coupling, double t,
                               const CouplingConfig& cfg);

}  // namespace superrad
