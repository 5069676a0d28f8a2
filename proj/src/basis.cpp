#include "superrad/basis.hpp"

#include <algorithm>
#include <stdexcept>

#include "superrad/numeric.hpp"

namespace superrad {

int BasisIndex::ladder_quanta() const {
    int l = 0;
    for (int m : degeneracy) l += m;
    return l;
}

int BasisIndex::total_quanta() const { return ladder_quanta() + rung; }

void BasisIndex::validate() const {
    if (rung < 0)
        throw std::invalid_argument("BasisIndex: rung must be >= 0");
    for (int m : degeneracy)
        if (m < 0)
            throw std::invalid_argument(
                "BasisIndex: degeneracy entries must be >= 0");
}

std::strong_ordering BasisIndex::operator<=>(const BasisIndex& other) const {
    if (auto c = total_quanta() <=> other.total_quanta(); c != 0) return c;
    if (auto c = other.rung <=> rung; c != 0) return c;  // rung descending
    return std::lexicographical_compare_three_way(
        degeneracy.begin(), degeneracy.end(), other.degeneracy.begin(),
        other.degeneracy.end());
}

std::string BasisIndex::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < degeneracy.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(degeneracy[k]);
    }
    s += " | " + std::to_string(rung) + ")";
    return s;
}

double degeneracy_count(int n_modes, int l) {
    if (n_modes < 1 || l < 0) return 0.0;
    if (n_modes == 1) return l == 0 ? 1.0 : 0.0;
    return binomial(l + n_modes - 2, l);
}

namespace {

// Appends every degeneracy vector with sum l over n_dark slots, in
// lexicographically ascending order, each paired with the fixed rung.
void emit_degeneracies(int n_dark, int l, int rung,
                       std::vector<BasisIndex>& out, std::size_t max_count) {
    std::vector<int> m(static_cast<std::size_t>(n_dark), 0);
    if (n_dark == 0) {
        if (l == 0) out.push_back({m, rung});
        return;
    }
    // First vector in ascending lex order puts all quanta in the last slot.
    m.back() = l;
    while (true) {
        if (out.size() >= max_count)
            throw std::length_error("enumerate_basis: max_count exceeded");
        out.push_back({m, rung});
        // Lex successor: rightmost j < n_dark-1 with quanta strictly to its
        // right gains one; the remainder moves to the last slot.
        int j = n_dark - 2;
        int right = 0;
        while (j >= 0) {
            right = 0;
            for (int t = j + 1; t < n_dark; ++t) right += m[t];
            if (right > 0) break;
            --j;
        }
        if (j < 0) return;  // all quanta in slot 0: last vector
        for (int t = j + 1; t < n_dark; ++t) m[t] = 0;
        m[j] += 1;
        m.back() = right - 1;
    }
}

}  // namespace

std::vector<BasisIndex> enumerate_basis(int n_modes, int max_quanta,
                                        std::size_t max_count) {
    if (n_modes < 1)
        throw std::invalid_argument("enumerate_basis: n_modes must be >= 1");
    if (max_quanta < 0)
        throw std::invalid_argument("enumerate_basis: max_quanta must be >= 0");
    std::vector<BasisIndex> out;
    for (int total = 0; total <= max_quanta; ++total)
        for (int rung = total; rung >= 0; --rung)
            emit_degeneracies(n_modes - 1, total - rung, rung, out, max_count);
    return out;
}

LadderAction apply_collective_ladder(const BasisIndex& idx, int mode,
                                     bool raise) {
    idx.validate();
    const int n = idx.n_modes();
    if (mode < 0 || mode >= n)
        throw std::out_of_range("apply_collective_ladder: mode out of range");
    BasisIndex next = idx;
    int occ;
    if (mode == n - 1) {
        occ = idx.rung;
        next.rung += raise ? 1 : -1;
    } else {
        occ = idx.degeneracy[static_cast<std::size_t>(mode)];
        next.degeneracy[static_cast<std::size_t>(mode)] += raise ? 1 : -1;
    }
    if (!raise && occ == 0) return {0.0, std::nullopt};
    double coeff = raise ? std::sqrt(double(occ) + 1.0) : std::sqrt(double(occ));
    return {coeff, std::move(next)};
}

double eigen_energy(int l, int n_plus, int n_minus,
                    const CouplingConfig& cfg) {
    cfg.validate();
    if (l < 0 || n_plus < 0 || n_minus < 0)
        throw std::invalid_argument("eigen_energy: occupations must be >= 0");
    return cfg.omega * double(l + n_plus + n_minus) +
           cfg.total_norm() * double(n_plus - n_minus);
}

}  // namespace superrad
