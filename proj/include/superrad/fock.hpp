#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <vector>

#include "superrad/basis.hpp"
#include "superrad/coupling.hpp"

namespace superrad {

using Complex = std::complex<double>;

/// Truncated multimode Fock space with independent per-mode cutoffs
/// (occupations 0..cutoff_j).  States are dense vectors indexed row-major
/// with mode 0 slowest.  Creation above a cutoff drops the amplitude; the
/// caller is responsible for sizing cutoffs so that drop never matters (the
/// builders below assert it).
class FockSpace {
public:
    FockSpace() = default;
    explicit FockSpace(std::vector<int> cutoffs);
    static FockSpace box(int n_modes, int max_occupation);

    int n_modes() const { return static_cast<int>(cutoffs_.size()); }
    int cutoff(int mode) const;
    Eigen::Index dim() const { return dim_; }

    Eigen::Index index(const std::vector<int>& occupations) const;
    std::vector<int> occupations(Eigen::Index idx) const;

    /// w = b_mode v  /  w = b_mode^dag v.  Creation amplitude above the
    /// cutoff is dropped and its squared norm returned (0 when safe).
    Eigen::VectorXcd annihilate(const Eigen::VectorXcd& v, int mode) const;
    Eigen::VectorXcd create(const Eigen::VectorXcd& v, int mode,
                            double* dropped = nullptr) const;

    /// Sparse operator matrices; adjoint of annihilation_matrix is the
    /// (cutoff-truncated) creation operator.
    Eigen::SparseMatrix<Complex> annihilation_matrix(int mode) const;
    Eigen::SparseMatrix<Complex> number_matrix(int mode) const;
    /// sum_j weights[j] b_j (weights.size() == n_modes()).
    Eigen::SparseMatrix<Complex> weighted_annihilation(
        const Eigen::VectorXd& weights) const;

    /// Indices grouped by total occupation 0..max_total; trailing group holds
    /// everything above max_total.  Exposes the graded structure for tests.
    std::vector<std::vector<Eigen::Index>> number_blocks(int max_total) const;

    bool operator==(const FockSpace& other) const {
        return cutoffs_ == other.cutoffs_;
    }

private:
    std::vector<int> cutoffs_;
    std::vector<Eigen::Index> strides_;
    Eigen::Index dim_ = 0;
};

/// First and second moments of the mode operators:
///   means(j)    = <b_j>
///   second(i,j) = <b_i^dag b_j>   (Hermitian, positive semidefinite)
struct ModeMoments {
    Eigen::VectorXcd means;
    Eigen::MatrixXcd second;

    int n_modes() const { return static_cast<int>(means.size()); }
};

/// Moments of a pure state vector in `space`.
ModeMoments moments_of_vector(const FockSpace& space,
                              const Eigen::VectorXcd& v);

/// Moments of a density operator in `space`.
ModeMoments moments_of_density(const FockSpace& space,
                               const Eigen::MatrixXcd& rho);

/// Normalized Fock-space vector of the collective number state |idx> for the
/// couplings in cfg, built by applying the collective creation operators
/// (with the real-positive phase convention) to the vacuum.  Requires
/// idx.n_modes() == cfg.n_modes and every cutoff >= idx.total_quanta(), so no
/// truncation loss can occur (asserted).
Eigen::VectorXcd dicke_fock_vector(const BasisIndex& idx,
                                   const CouplingConfig& cfg,
                                   const FockSpace& space);

}  // namespace superrad
