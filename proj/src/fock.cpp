#include "superrad/fock.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace superrad {

FockSpace::FockSpace(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.empty())
        throw std::invalid_argument("FockSpace: need at least one mode");
    for (int c : cutoffs_)
        if (c < 0) throw std::invalid_argument("FockSpace: cutoff must be >= 0");
    strides_.assign(cutoffs_.size(), 1);
    dim_ = 1;
    for (int j = static_cast<int>(cutoffs_.size()) - 1; j >= 0; --j) {
        strides_[static_cast<std::size_t>(j)] = dim_;
        dim_ *= cutoffs_[static_cast<std::size_t>(j)] + 1;
        if (dim_ > (Eigen::Index(1) << 30))
            throw std::length_error("FockSpace: dimension too large");
    }
}

FockSpace FockSpace::box(int n_modes, int max_occupation) {
    if (n_modes < 1)
        throw std::invalid_argument("FockSpace::box: n_modes must be >= 1");
    return FockSpace(std::vector<int>(static_cast<std::size_t>(n_modes),
                                      max_occupation));
}

int FockSpace::cutoff(int mode) const {
    if (mode < 0 || mode >= n_modes())
        throw std::out_of_range("FockSpace: mode out of range");
    return cutoffs_[static_cast<std::size_t>(mode)];
}

Eigen::Index FockSpace::index(const std::vector<int>& occupations) const {
    if (occupations.size() != cutoffs_.size())
        throw std::invalid_argument("FockSpace::index: wrong mode count");
    Eigen::Index idx = 0;
    for (std::size_t j = 0; j < cutoffs_.size(); ++j) {
        if (occupations[j] < 0 || occupations[j] > cutoffs_[j])
            throw std::out_of_range("FockSpace::index: occupation out of range");
        idx += strides_[j] * occupations[j];
    }
    return idx;
}

std::vector<int> FockSpace::occupations(Eigen::Index idx) const {
    if (idx < 0 || idx >= dim_)
        throw std::out_of_range("FockSpace::occupations: index out of range");
    std::vector<int> occ(cutoffs_.size());
    for (std::size_t j = 0; j < cutoffs_.size(); ++j) {
        occ[j] = static_cast<int>(idx / strides_[j]);
        idx %= strides_[j];
    }
    return occ;
}

Eigen::VectorXcd FockSpace::annihilate(const Eigen::VectorXcd& v,
                                       int mode) const {
    if (v.size() != dim_)
        throw std::invalid_argument("FockSpace::annihilate: wrong vector size");
    const Eigen::Index stride = strides_[static_cast<std::size_t>(mode)];
    const int c = cutoff(mode);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
        const int n = static_cast<int>((i / stride) % (c + 1));
        if (n > 0) w[i - stride] += std::sqrt(double(n)) * v[i];
    }
    return w;
}

Eigen::VectorXcd FockSpace::create(const Eigen::VectorXcd& v, int mode,
                                   double* dropped) const {
    if (v.size() != dim_)
        throw std::invalid_argument("FockSpace::create: wrong vector size");
    const Eigen::Index stride = strides_[static_cast<std::size_t>(mode)];
    const int c = cutoff(mode);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim_);
    double lost = 0.0;
    for (Eigen::Index i = 0; i < dim_; ++i) {
        const int n = static_cast<int>((i / stride) % (c + 1));
        if (n < c)
            w[i + stride] += std::sqrt(double(n) + 1.0) * v[i];
        else
            lost += (double(n) + 1.0) * std::norm(v[i]);
    }
    if (dropped) *dropped = lost;
    return w;
}

Eigen::SparseMatrix<Complex> FockSpace::annihilation_matrix(int mode) const {
    const Eigen::Index stride = strides_[static_cast<std::size_t>(mode)];
    const int c = cutoff(mode);
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(dim_));
    for (Eigen::Index i = 0; i < dim_; ++i) {
        const int n = static_cast<int>((i / stride) % (c + 1));
        if (n > 0) trips.emplace_back(i - stride, i, std::sqrt(double(n)));
    }
    Eigen::SparseMatrix<Complex> m(dim_, dim_);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

Eigen::SparseMatrix<Complex> FockSpace::number_matrix(int mode) const {
    const Eigen::Index stride = strides_[static_cast<std::size_t>(mode)];
    const int c = cutoff(mode);
    std::vector<Eigen::Triplet<Complex>> trips;
    for (Eigen::Index i = 0; i < dim_; ++i) {
        const int n = static_cast<int>((i / stride) % (c + 1));
        if (n > 0) trips.emplace_back(i, i, double(n));
    }
    Eigen::SparseMatrix<Complex> m(dim_, dim_);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

Eigen::SparseMatrix<Complex> FockSpace::weighted_annihilation(
    const Eigen::VectorXd& weights) const {
    if (weights.size() != n_modes())
        throw std::invalid_argument(
            "FockSpace::weighted_annihilation: wrong weight count");
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int j = 0; j < n_modes(); ++j) {
        if (weights[j] == 0.0) continue;
        const Eigen::Index stride = strides_[static_cast<std::size_t>(j)];
        const int c = cutoff(j);
        for (Eigen::Index i = 0; i < dim_; ++i) {
            const int n = static_cast<int>((i / stride) % (c + 1));
            if (n > 0)
                trips.emplace_back(i - stride, i,
                                   weights[j] * std::sqrt(double(n)));
        }
    }
    Eigen::SparseMatrix<Complex> m(dim_, dim_);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

std::vector<std::vector<Eigen::Index>> FockSpace::number_blocks(
    int max_total) const {
    std::vector<std::vector<Eigen::Index>> blocks(
        static_cast<std::size_t>(max_total) + 2);
    for (Eigen::Index i = 0; i < dim_; ++i) {
        int total = 0;
        for (int n : occupations(i)) total += n;
        blocks[static_cast<std::size_t>(std::min(total, max_total + 1))]
            .push_back(i);
    }
    return blocks;
}

ModeMoments moments_of_vector(const FockSpace& space,
                              const Eigen::VectorXcd& v) {
    const int n = space.n_modes();
    std::vector<Eigen::VectorXcd> lowered;
    lowered.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) lowered.push_back(space.annihilate(v, j));
    ModeMoments m;
    m.means.resize(n);
    m.second.resize(n, n);
    for (int j = 0; j < n; ++j) m.means[j] = v.dot(lowered[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.second(i, j) = lowered[static_cast<std::size_t>(i)].dot(
                lowered[static_cast<std::size_t>(j)]);
    return m;
}

ModeMoments moments_of_density(const FockSpace& space,
                               const Eigen::MatrixXcd& rho) {
    const int n = space.n_modes();
    ModeMoments m;
    m.means.resize(n);
    m.second.resize(n, n);
    std::vector<Eigen::SparseMatrix<Complex>> b;
    b.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) b.push_back(space.annihilation_matrix(j));
    std::vector<Eigen::MatrixXcd> brho;
    brho.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        brho.emplace_back(b[static_cast<std::size_t>(j)] * rho);
        m.means[j] = brho.back().trace();
    }
    // tr(b_i^dag (b_j rho)) as a Frobenius product over the sparse b_i.
    for (int i = 0; i < n; ++i) {
        const auto& bi = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (int outer = 0; outer < bi.outerSize(); ++outer)
                for (Eigen::SparseMatrix<Complex>::InnerIterator it(bi, outer);
                     it; ++it)
                    acc += std::conj(it.value()) *
                           brho[static_cast<std::size_t>(j)](it.row(),
                                                             it.col());
            m.second(i, j) = acc;
        }
    }
    return m;
}

Eigen::VectorXcd dicke_fock_vector(const BasisIndex& idx,
                                   const CouplingConfig& cfg,
                                   const FockSpace& space) {
    idx.validate();
    cfg.validate();
    if (idx.n_modes() != cfg.n_modes)
        throw std::invalid_argument("dicke_fock_vector: mode count mismatch");
    if (space.n_modes() != cfg.n_modes)
        throw std::invalid_argument("dicke_fock_vector: space mismatch");
    const int total = idx.total_quanta();
    for (int j = 0; j < space.n_modes(); ++j)
        if (space.cutoff(j) < total)
            throw std::invalid_argument(
                "dicke_fock_vector: cutoff below total quanta");

    const Eigen::MatrixXd u = collective_transform(cfg);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    v[0] = 1.0;  // vacuum

    // Apply (sum_j u(mode,j) b_j^dag) repeatedly; divide by sqrt(count!)
    // step by step to keep amplitudes O(1).
    auto raise_collective = [&](int mode, int count) {
        for (int step = 1; step <= count; ++step) {
            Eigen::VectorXcd next = Eigen::VectorXcd::Zero(space.dim());
            for (int j = 0; j < space.n_modes(); ++j) {
                if (u(mode, j) == 0.0) continue;
                double dropped = 0.0;
                next += u(mode, j) * space.create(v, j, &dropped);
                assert(dropped == 0.0);
            }
            v = next / std::sqrt(double(step));
        }
    };

    for (int k = 0; k + 1 < cfg.n_modes; ++k)
        raise_collective(k, idx.degeneracy[static_cast<std::size_t>(k)]);
    raise_collective(cfg.n_modes - 1, idx.rung);
    return v;
}

}  // namespace superrad
