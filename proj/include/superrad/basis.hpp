#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "superrad/coupling.hpp"

namespace superrad {

/// Label of one collective number state for an N-mode ensemble:
/// `degeneracy` holds the dark-mode occupations (m_1..m_{N-1}, empty for
/// N == 1) and `rung` the bright-mode occupation R.  The state is
///   prod_k (C_k^dag)^{m_k}/sqrt(m_k!) (C^dag)^R/sqrt(R!) |vacuum>,
/// with C the bright mode and C_k the dark modes of collective_transform().
/// All ladder coefficients are real positive (sqrt of occupations); this is
/// the phase convention used everywhere in the library.
struct BasisIndex {
    std::vector<int> degeneracy;  ///< m_k >= 0 for each dark mode
    int rung = 0;                 ///< R >= 0

    int n_modes() const { return static_cast<int>(degeneracy.size()) + 1; }

    /// L = sum_k m_k (quanta trapped in dark modes).
    int ladder_quanta() const;

    /// M = L + R (total quanta).
    int total_quanta() const;

    /// Throws std::invalid_argument if any occupation is negative.
    void validate() const;

    bool operator==(const BasisIndex&) const = default;

    /// Canonical enumeration order: graded by total quanta M, then rung
    /// descending (superradiant states first within a grade), then the
    /// degeneracy vector lexicographically ascending.
    std::strong_ordering operator<=>(const BasisIndex& other) const;

    /// "(m1,...,m_{N-1} | R)"; "(| R)" for N == 1.
    std::string to_string() const;
};

/// Number of distinct degeneracy vectors with ladder_quanta == l for an
/// N-mode ensemble: C(l + N - 2, l).  1 for N == 1, l == 0; 0 for N == 1,
/// l > 0.
double degeneracy_count(int n_modes, int l);

/// All BasisIndex with total_quanta <= max_quanta, in canonical order.
/// Throws std::length_error if the count would exceed max_count.
std::vector<BasisIndex> enumerate_basis(int n_modes, int max_quanta,
                                        std::size_t max_count = 5'000'000);

/// Result of applying one collective ladder operator to a basis state:
/// op|idx> = coefficient * |result>; an annihilated state has
/// coefficient == 0 and no result.
struct LadderAction {
    double coefficient = 0.0;
    std::optional<BasisIndex> result;
};

/// Apply C_mode (raise == false) or C_mode^dag (raise == true) to |idx>.
/// `mode` is 0-based; mode == idx.n_modes()-1 is the bright mode and moves
/// the rung (coefficient sqrt(R) down, sqrt(R+1) up); smaller modes move the
/// corresponding degeneracy entry (sqrt(m_k) / sqrt(m_k+1)).  Lowering an
/// empty occupation annihilates.  Throws std::out_of_range for a bad mode.
LadderAction apply_collective_ladder(const BasisIndex& idx, int mode,
                                     bool raise);

/// Energy of the hybridized eigenstate with l quanta across the dark modes
/// and n_plus/n_minus quanta in the two bright-central hybrid modes
/// (a +- C)/sqrt(2):  E = omega (l + n_plus + n_minus)
///                      + G_N (n_plus - n_minus).
double eigen_energy(int l, int n_plus, int n_minus,
                    const CouplingConfig& cfg);

}  // namespace superrad
