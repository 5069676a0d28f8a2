#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "superrad/basis.hpp"
#include "superrad/coupling.hpp"
#include "superrad/fock.hpp"

namespace superrad {

struct StateSpec;

/// Superposition over collective number states, sum_t amplitude_t |index_t>.
/// Indices must share one mode count and be pairwise distinct; amplitudes
/// must be normalized (sum |a|^2 == 1 within 1e-9).
struct DickeTerm {
    Complex amplitude;
    BasisIndex index;
};
struct DickeSuperposition {
    std::vector<DickeTerm> terms;
};

/// Bare product Fock state |n_1, ..., n_N>.
struct MultimodeFock {
    std::vector<int> occupations;
};

/// Product of per-mode classical mixtures of number states; distributions[j]
/// lists P(n_j = 0), P(n_j = 1), ... and must sum to 1 within 1e-12.
struct IncoherentMixture {
    std::vector<std::vector<double>> distributions;
};

/// Product of per-mode thermal states with mean occupations nbar[j] >= 0.
struct ThermalState {
    std::vector<double> nbar;
};

/// Product over bare modes of displaced squeezed states D(alpha_j) S(xi_j)|0>,
/// with D(a) = exp(a b^dag - a* b) and S(x) = exp((x* b^2 - x b^dag2)/2).
struct ProductSqueezedCoherent {
    std::vector<Complex> alpha;
    std::vector<Complex> xi;
};

/// Displacement of one collective mode applied to a base state:
/// D_mode(amplitude) = exp(amplitude c_mode^dag - amplitude* c_mode), where
/// c_mode is a row of collective_transform (bright mode = n_modes-1).
struct CollectiveDisplaced {
    std::shared_ptr<const StateSpec> base;
    int mode = 0;
    Complex amplitude;
};

/// Squeezed vacuum of the bright collective mode, S_C(xi)|0>.
struct CollectiveSqueezedVacuum {
    Complex xi;
};

struct StateSpec {
    using Value =
        std::variant<DickeSuperposition, MultimodeFock, IncoherentMixture,
                     ThermalState, ProductSqueezedCoherent,
                     CollectiveDisplaced, CollectiveSqueezedVacuum>;
    Value value;

    StateSpec() : value(MultimodeFock{{0}}) {}
    StateSpec(Value v) : value(std::move(v)) {}
    template <class T>
    StateSpec(T v) : value(Value(std::move(v))) {}
};

/// |vacuum> for n modes (as an empty collective superposition).
StateSpec vacuum_state(int n_modes);

/// (|m,0> + |0,n>)/sqrt(2) for a two-mode ensemble, expanded over the
/// collective basis of cfg (cfg.n_modes must be 2; m, n >= 1).
StateSpec moon_state(int m, int n, const CouplingConfig& cfg);

/// Mode count a StateSpec demands, or 0 if any count is admissible.
int spec_mode_count(const StateSpec& spec);

/// True when a StateSpec describes a pure state.
bool is_pure(const StateSpec& spec);

/// Throws std::invalid_argument on malformed content or mode-count mismatch
/// with cfg.
void validate_state(const StateSpec& spec, const CouplingConfig& cfg);

/// First and second moments of the bare-mode operators, by closed form
/// (collective families go through the orthogonal transform; no Fock-space
/// truncation is involved).
ModeMoments state_moments(const StateSpec& spec, const CouplingConfig& cfg);

/// Expectation values of total / bright / dark quanta derived from moments:
/// total = tr S, bright = g^T S g / G_N^2, dark = total - bright.  Tiny
/// negative values from roundoff are clamped to zero.
struct MRL {
    double total = 0.0;
    double bright = 0.0;
    double dark = 0.0;
};
MRL mrl_expectations(const ModeMoments& m, const CouplingConfig& cfg);
MRL mrl_expectations(const StateSpec& spec, const CouplingConfig& cfg);

/// Collective-basis expansion of the families that admit one in closed form
/// (collective superpositions themselves, collective displacements of dark
/// or single-ladder states, collective squeezed vacuum).  Throws
/// std::domain_error otherwise.  `tail_mass` is the probability outside the
/// emitted terms.
struct DickeExpansion {
    std::vector<DickeTerm> terms;
    double tail_mass = 0.0;
};
DickeExpansion expansion_coefficients(const StateSpec& spec,
                                      const CouplingConfig& cfg,
                                      int max_terms = 256);

/// Truncated-Fock realization: pure states as vectors, mixed ones as
/// diagonal-or-dense density operators on box(n_modes, max_quanta).
/// `tail_mass` is the probability the truncation failed to hold (explicit
/// dropped mass for thermal/mixture/series families, edge-population proxy
/// for displaced/squeezed ones).  Throws TruncationError when it exceeds
/// tail_tol.
struct FockRep {
    FockSpace space;
    Eigen::VectorXcd pure;     ///< nonempty iff the state is pure
    Eigen::MatrixXcd density;  ///< nonempty iff the state is mixed
    double tail_mass = 0.0;

    bool is_pure() const { return pure.size() > 0; }
    Eigen::MatrixXcd density_matrix() const;
    ModeMoments moments() const;
};
FockRep fock_representation(const StateSpec& spec, const CouplingConfig& cfg,
                            int max_quanta, double tail_tol = 1e-8);

/// Population within `margin` levels of any per-mode cutoff; the truncation
/// leak proxy used by fock_representation.
double edge_population(const FockSpace& space, const Eigen::VectorXcd& v,
                       int margin = 2);
double edge_population(const FockSpace& space, const Eigen::MatrixXcd& rho,
                       int margin = 2);

/// Single-mode operator matrices on occupations 0..dim-1 (unitary on the
/// truncated space; accurate while the state keeps clear of the cutoff).
Eigen::MatrixXcd displacement_matrix(int dim, Complex alpha);
Eigen::MatrixXcd squeeze_matrix(int dim, Complex xi);

}  // namespace superrad
