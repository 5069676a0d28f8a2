#include "superrad/states.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "superrad/errors.hpp"

namespace superrad {

namespace {

BasisIndex all_dark_zero(int n_modes) {
    return BasisIndex{std::vector<int>(static_cast<std::size_t>(n_modes - 1), 0),
                      0};
}

// Tensor product with mode 0 slowest, matching FockSpace strides.
Eigen::VectorXcd kron_all(const std::vector<Eigen::VectorXcd>& factors) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (auto& f : factors) {
        Eigen::VectorXcd next(v.size() * f.size());
        for (Eigen::Index i = 0; i < v.size(); ++i)
            next.segment(i * f.size(), f.size()) = v[i] * f;
        v = next;
    }
    return v;
}

Eigen::MatrixXcd kron_all(const std::vector<Eigen::MatrixXcd>& factors) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
    for (auto& f : factors) {
        Eigen::MatrixXcd next(m.rows() * f.rows(), m.cols() * f.cols());
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) =
                    m(i, j) * f;
        m = next;
    }
    return m;
}

}  // namespace

StateSpec vacuum_state(int n_modes) {
    if (n_modes < 1)
        throw std::invalid_argument("vacuum_state: n_modes must be >= 1");
    return StateSpec(
        DickeSuperposition{{{Complex(1.0, 0.0), all_dark_zero(n_modes)}}});
}

int spec_mode_count(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DickeSuperposition>)
                return s.terms.empty() ? 0 : s.terms.front().index.n_modes();
            else if constexpr (std::is_same_v<T, MultimodeFock>)
                return static_cast<int>(s.occupations.size());
            else if constexpr (std::is_same_v<T, IncoherentMixture>)
                return static_cast<int>(s.distributions.size());
            else if constexpr (std::is_same_v<T, ThermalState>)
                return static_cast<int>(s.nbar.size());
            else if constexpr (std::is_same_v<T, ProductSqueezedCoherent>)
                return static_cast<int>(s.alpha.size());
            else if constexpr (std::is_same_v<T, CollectiveDisplaced>)
                return s.base ? spec_mode_count(*s.base) : 0;
            else
                return 0;  // CollectiveSqueezedVacuum fits any ensemble
        },
        spec.value);
}

bool is_pure(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IncoherentMixture> ||
                          std::is_same_v<T, ThermalState>)
                return false;
            else if constexpr (std::is_same_v<T, CollectiveDisplaced>)
                return s.base ? is_pure(*s.base) : true;
            else
                return true;
        },
        spec.value);
}

void validate_state(const StateSpec& spec, const CouplingConfig& cfg) {
    cfg.validate();
    const int want = spec_mode_count(spec);
    if (want != 0 && want != cfg.n_modes)
        throw std::invalid_argument("validate_state: mode count mismatch");
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DickeSuperposition>) {
                if (s.terms.empty())
                    throw std::invalid_argument(
                        "DickeSuperposition: no terms");
                double norm2 = 0.0;
                for (auto& t : s.terms) {
                    t.index.validate();
                    if (t.index.n_modes() != cfg.n_modes)
                        throw std::invalid_argument(
                            "DickeSuperposition: mixed mode counts");
                    norm2 += std::norm(t.amplitude);
                }
                for (std::size_t i = 0; i < s.terms.size(); ++i)
                    for (std::size_t j = i + 1; j < s.terms.size(); ++j)
                        if (s.terms[i].index == s.terms[j].index)
                            throw std::invalid_argument(
                                "DickeSuperposition: duplicate index");
                if (std::abs(norm2 - 1.0) > 1e-9)
                    throw std::invalid_argument(
                        "DickeSuperposition: amplitudes not normalized");
            } else if constexpr (std::is_same_v<T, MultimodeFock>) {
                for (int n : s.occupations)
                    if (n < 0)
                        throw std::invalid_argument(
                            "MultimodeFock: negative occupation");
            } else if constexpr (std::is_same_v<T, IncoherentMixture>) {
                for (auto& dist : s.distributions) {
                    if (dist.empty())
                        throw std::invalid_argument(
                            "IncoherentMixture: empty distribution");
                    double sum = 0.0;
                    for (double p : dist) {
                        if (p < 0.0)
                            throw std::invalid_argument(
                                "IncoherentMixture: negative probability");
                        sum += p;
                    }
                    if (std::abs(sum - 1.0) > 1e-12)
                        throw std::invalid_argument(
                            "IncoherentMixture: probabilities must sum to 1");
                }
            } else if constexpr (std::is_same_v<T, ThermalState>) {
                for (double n : s.nbar)
                    if (!(n >= 0.0))
                        throw std::invalid_argument(
                            "ThermalState: nbar must be >= 0");
            } else if constexpr (std::is_same_v<T, ProductSqueezedCoherent>) {
                if (s.alpha.size() != s.xi.size())
                    throw std::invalid_argument(
                        "ProductSqueezedCoherent: alpha/xi size mismatch");
            } else if constexpr (std::is_same_v<T, CollectiveDisplaced>) {
                if (!s.base)
                    throw std::invalid_argument(
                        "CollectiveDisplaced: missing base state");
                if (s.mode < 0 || s.mode >= cfg.n_modes)
                    throw std::invalid_argument(
                        "CollectiveDisplaced: mode out of range");
                if (!std::isfinite(s.amplitude.real()) ||
                    !std::isfinite(s.amplitude.imag()))
                    throw std::invalid_argument(
                        "CollectiveDisplaced: non-finite amplitude");
                validate_state(*s.base, cfg);
            } else {  // CollectiveSqueezedVacuum
                if (!std::isfinite(s.xi.real()) || !std::isfinite(s.xi.imag()))
                    throw std::invalid_argument(
                        "CollectiveSqueezedVacuum: non-finite xi");
            }
        },
        spec.value);
}

namespace {

ModeMoments dicke_moments(const DickeSuperposition& s,
                          const CouplingConfig& cfg) {
    const int n = cfg.n_modes;
    std::map<BasisIndex, Complex> amp;
    for (auto& t : s.terms) amp[t.index] = t.amplitude;

    Eigen::VectorXcd means_c = Eigen::VectorXcd::Zero(n);
    Eigen::MatrixXcd second_c = Eigen::MatrixXcd::Zero(n, n);
    for (auto& t : s.terms) {
        for (int l = 0; l < n; ++l) {
            auto low = apply_collective_ladder(t.index, l, false);
            if (!low.result) continue;
            if (auto it = amp.find(*low.result); it != amp.end())
                means_c[l] +=
                    std::conj(it->second) * low.coefficient * t.amplitude;
            for (int k = 0; k < n; ++k) {
                auto up = apply_collective_ladder(*low.result, k, true);
                if (auto it = amp.find(*up.result); it != amp.end())
                    second_c(k, l) += std::conj(it->second) * low.coefficient *
                                      up.coefficient * t.amplitude;
            }
        }
    }
    Eigen::MatrixXd u = collective_transform(cfg);
    ModeMoments m;
    m.means = u.transpose() * means_c;
    m.second = u.transpose() * second_c * u;
    return m;
}

}  // namespace

ModeMoments state_moments(const StateSpec& spec, const CouplingConfig& cfg) {
    validate_state(spec, cfg);
    const int n = cfg.n_modes;
    return std::visit(
        [&](const auto& s) -> ModeMoments {
            using T = std::decay_t<decltype(s)>;
            ModeMoments m;
            m.means = Eigen::VectorXcd::Zero(n);
            m.second = Eigen::MatrixXcd::Zero(n, n);
            if constexpr (std::is_same_v<T, DickeSuperposition>) {
                return dicke_moments(s, cfg);
            } else if constexpr (std::is_same_v<T, MultimodeFock>) {
                for (int j = 0; j < n; ++j)
                    m.second(j, j) = double(s.occupations[std::size_t(j)]);
            } else if constexpr (std::is_same_v<T, IncoherentMixture>) {
                for (int j = 0; j < n; ++j) {
                    double mean = 0.0;
                    auto& dist = s.distributions[std::size_t(j)];
                    for (std::size_t k = 0; k < dist.size(); ++k)
                        mean += double(k) * dist[k];
                    m.second(j, j) = mean;
                }
            } else if constexpr (std::is_same_v<T, ThermalState>) {
                for (int j = 0; j < n; ++j)
                    m.second(j, j) = s.nbar[std::size_t(j)];
            } else if constexpr (std::is_same_v<T, ProductSqueezedCoherent>) {
                for (int j = 0; j < n; ++j) m.means[j] = s.alpha[std::size_t(j)];
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        m.second(i, j) = std::conj(s.alpha[std::size_t(i)]) *
                                         s.alpha[std::size_t(j)];
                for (int j = 0; j < n; ++j) {
                    double r = std::abs(s.xi[std::size_t(j)]);
                    m.second(j, j) += std::sinh(r) * std::sinh(r);
                }
            } else if constexpr (std::is_same_v<T, CollectiveDisplaced>) {
                m = state_moments(*s.base, cfg);
                Eigen::MatrixXd u = collective_transform(cfg);
                Eigen::VectorXcd c = s.amplitude * u.row(s.mode).transpose();
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        m.second(i, j) += std::conj(c[i]) * m.means[j] +
                                          std::conj(m.means[i]) * c[j] +
                                          std::conj(c[i]) * c[j];
                m.means += c;
            } else {  // CollectiveSqueezedVacuum
                double r = std::abs(s.xi);
                double s2 = std::sinh(r) * std::sinh(r);
                double gn = cfg.total_norm();
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        m.second(i, j) = s2 * cfg.couplings[std::size_t(i)] *
                                         cfg.couplings[std::size_t(j)] /
                                         (gn * gn);
            }
            return m;
        },
        spec.value);
}

MRL mrl_expectations(const ModeMoments& m, const CouplingConfig& cfg) {
    if (m.n_modes() != cfg.n_modes)
        throw std::invalid_argument("mrl_expectations: mode count mismatch");
    Eigen::VectorXd g =
        Eigen::Map<const Eigen::VectorXd>(cfg.couplings.data(), cfg.n_modes);
    double gn = cfg.total_norm();
    MRL out;
    out.total = std::max(0.0, m.second.trace().real());
    out.bright =
        std::max(0.0, (g.transpose() * m.second * g)(0).real() / (gn * gn));
    out.bright = std::min(out.bright, out.total);
    out.dark = out.total - out.bright;
    return out;
}

MRL mrl_expectations(const StateSpec& spec, const CouplingConfig& cfg) {
    return mrl_expectations(state_moments(spec, cfg), cfg);
}

namespace {

void require_zero_slot(const std::vector<DickeTerm>& terms, int mode,
                       int bright_index) {
    for (auto& t : terms) {
        bool ok = (mode == bright_index)
                      ? t.index.rung == 0
                      : t.index.degeneracy[std::size_t(mode)] == 0;
        if (!ok)
            throw std::domain_error(
                "expansion_coefficients: no closed-form expansion (displaced "
                "collective mode already occupied)");
    }
}

}  // namespace

DickeExpansion expansion_coefficients(const StateSpec& spec,
                                      const CouplingConfig& cfg,
                                      int max_terms) {
    validate_state(spec, cfg);
    if (max_terms < 1)
        throw std::invalid_argument("expansion_coefficients: max_terms < 1");
    const int n = cfg.n_modes;
    DickeExpansion out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DickeSuperposition>) {
                out.terms = s.terms;
                out.tail_mass = 0.0;
            } else if constexpr (std::is_same_v<T, CollectiveSqueezedVacuum>) {
                // Even-rung series of the bright mode; amplitudes follow the
                // two-quanta recursion a_R = -e^{i arg(xi)} tanh(r)
                // sqrt((2R-1)/(2R)) a_{R-1}, a_0 = 1/sqrt(cosh r).
                const double r = std::abs(s.xi);
                const Complex step =
                    r == 0.0 ? Complex(0.0)
                             : -(s.xi / r) * std::tanh(r);
                Complex a = 1.0 / std::sqrt(std::cosh(r));
                double kept = 0.0;
                for (int k = 0; k < max_terms; ++k) {
                    if (k > 0) {
                        a *= step * std::sqrt((2.0 * k - 1.0) / (2.0 * k));
                        if (std::abs(a) == 0.0) break;
                    }
                    BasisIndex idx = all_dark_zero(n);
                    idx.rung = 2 * k;
                    out.terms.push_back({a, idx});
                    kept += std::norm(a);
                }
                out.tail_mass = std::max(0.0, 1.0 - kept);
            } else if constexpr (std::is_same_v<T, CollectiveDisplaced>) {
                DickeExpansion base =
                    expansion_coefficients(*s.base, cfg, max_terms);
                require_zero_slot(base.terms, s.mode, n - 1);
                const int per =
                    std::max(1, max_terms / std::max<int>(
                                    1, static_cast<int>(base.terms.size())));
                const double damp = std::exp(-0.5 * std::norm(s.amplitude));
                double kept = 0.0;
                for (auto& bt : base.terms) {
                    Complex a = bt.amplitude * damp;
                    for (int q = 0; q < per; ++q) {
                        if (q > 0) {
                            a *= s.amplitude / std::sqrt(double(q));
                            if (std::abs(a) == 0.0) break;
                        }
                        BasisIndex idx = bt.index;
                        if (s.mode == n - 1)
                            idx.rung = q;
                        else
                            idx.degeneracy[std::size_t(s.mode)] = q;
                        out.terms.push_back({a, idx});
                        kept += std::norm(a);
                    }
                }
                out.tail_mass = std::max(0.0, 1.0 - kept);
            } else {
                throw std::domain_error(
                    "expansion_coefficients: no closed-form expansion for "
                    "this family");
            }
        },
        spec.value);
    std::sort(out.terms.begin(), out.terms.end(),
              [](const DickeTerm& a, const DickeTerm& b) {
                  return a.index < b.index;
              });
    return out;
}

Eigen::MatrixXcd displacement_matrix(int dim, Complex alpha) {
    if (dim < 1)
        throw std::invalid_argument("displacement_matrix: dim must be >= 1");
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) {
        double s = std::sqrt(double(k));
        gen(k, k - 1) += alpha * s;             // alpha b^dag
        gen(k - 1, k) -= std::conj(alpha) * s;  // -alpha* b
    }
    return gen.exp();
}

Eigen::MatrixXcd squeeze_matrix(int dim, Complex xi) {
    if (dim < 1)
        throw std::invalid_argument("squeeze_matrix: dim must be >= 1");
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 2; k < dim; ++k) {
        double s = std::sqrt(double(k) * double(k - 1));
        gen(k, k - 2) -= 0.5 * xi * s;             // -(xi/2) b^dag^2
        gen(k - 2, k) += 0.5 * std::conj(xi) * s;  // (xi*/2) b^2
    }
    return gen.exp();
}

double edge_population(const FockSpace& space, const Eigen::VectorXcd& v,
                       int margin) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        if (std::norm(v[i]) == 0.0) continue;
        auto occ = space.occupations(i);
        for (int j = 0; j < space.n_modes(); ++j)
            if (occ[std::size_t(j)] > space.cutoff(j) - margin) {
                mass += std::norm(v[i]);
                break;
            }
    }
    return mass;
}

double edge_population(const FockSpace& space, const Eigen::MatrixXcd& rho,
                       int margin) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        double p = rho(i, i).real();
        if (p == 0.0) continue;
        auto occ = space.occupations(i);
        for (int j = 0; j < space.n_modes(); ++j)
            if (occ[std::size_t(j)] > space.cutoff(j) - margin) {
                mass += p;
                break;
            }
    }
    return mass;
}

Eigen::MatrixXcd FockRep::density_matrix() const {
    if (is_pure()) return pure * pure.adjoint();
    return density;
}

ModeMoments FockRep::moments() const {
    if (is_pure()) return moments_of_vector(space, pure);
    return moments_of_density(space, density);
}

namespace {

FockRep fock_rep_impl(const StateSpec& spec, const CouplingConfig& cfg,
                      const FockSpace& space, double tail_tol);

// Diagonal product-state density from per-mode occupation distributions.
FockRep diagonal_rep(const FockSpace& space,
                     const std::vector<std::vector<double>>& dists) {
    FockRep rep;
    rep.space = space;
    rep.density = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    double kept = 0.0;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        auto occ = space.occupations(i);
        double p = 1.0;
        for (std::size_t j = 0; j < dists.size(); ++j) {
            const auto& d = dists[j];
            std::size_t nj = std::size_t(occ[j]);
            p *= nj < d.size() ? d[nj] : 0.0;
        }
        rep.density(i, i) = p;
        kept += p;
    }
    rep.tail_mass = std::max(0.0, 1.0 - kept);
    return rep;
}

FockRep fock_rep_impl(const StateSpec& spec, const CouplingConfig& cfg,
                      const FockSpace& space, double tail_tol) {
    const int n = cfg.n_modes;
    FockRep rep;
    rep.space = space;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DickeSuperposition>) {
                int room = space.cutoff(0);
                for (int j = 1; j < n; ++j)
                    room = std::min(room, space.cutoff(j));
                rep.pure = Eigen::VectorXcd::Zero(space.dim());
                double dropped = 0.0;
                for (auto& t : s.terms) {
                    if (t.index.total_quanta() > room) {
                        dropped += std::norm(t.amplitude);
                        continue;
                    }
                    rep.pure +=
                        t.amplitude * dicke_fock_vector(t.index, cfg, space);
                }
                rep.tail_mass = dropped;
            } else if constexpr (std::is_same_v<T, MultimodeFock>) {
                for (int j = 0; j < n; ++j)
                    if (s.occupations[std::size_t(j)] > space.cutoff(j))
                        throw TruncationError(
                            "fock_representation: Fock occupation exceeds "
                            "cutoff",
                            1.0);
                rep.pure = Eigen::VectorXcd::Zero(space.dim());
                rep.pure[space.index(s.occupations)] = 1.0;
            } else if constexpr (std::is_same_v<T, IncoherentMixture>) {
                rep = diagonal_rep(space, s.distributions);
            } else if constexpr (std::is_same_v<T, ThermalState>) {
                std::vector<std::vector<double>> dists;
                for (int j = 0; j < n; ++j) {
                    double nb = s.nbar[std::size_t(j)];
                    double x = nb / (1.0 + nb);
                    std::vector<double> d(std::size_t(space.cutoff(j)) + 1);
                    double p = 1.0 / (1.0 + nb);
                    for (std::size_t k = 0; k < d.size(); ++k, p *= x)
                        d[k] = p;
                    dists.push_back(std::move(d));
                }
                rep = diagonal_rep(space, dists);
            } else if constexpr (std::is_same_v<T, ProductSqueezedCoherent>) {
                std::vector<Eigen::VectorXcd> factors;
                for (int j = 0; j < n; ++j) {
                    int dim = space.cutoff(j) + 1;
                    Eigen::MatrixXcd op =
                        displacement_matrix(dim, s.alpha[std::size_t(j)]) *
                        squeeze_matrix(dim, s.xi[std::size_t(j)]);
                    factors.push_back(op.col(0));
                }
                rep.pure = kron_all(factors);
                rep.tail_mass = edge_population(space, rep.pure);
            } else if constexpr (std::is_same_v<T, CollectiveDisplaced>) {
                FockRep base = fock_rep_impl(*s.base, cfg, space, tail_tol);
                Eigen::MatrixXd u = collective_transform(cfg);
                std::vector<Eigen::MatrixXcd> factors;
                for (int j = 0; j < n; ++j)
                    factors.push_back(displacement_matrix(
                        space.cutoff(j) + 1, s.amplitude * u(s.mode, j)));
                Eigen::MatrixXcd w = kron_all(factors);
                if (base.is_pure()) {
                    rep.pure = w * base.pure;
                    rep.tail_mass =
                        base.tail_mass + edge_population(space, rep.pure);
                } else {
                    rep.density = w * base.density * w.adjoint();
                    rep.tail_mass =
                        base.tail_mass + edge_population(space, rep.density);
                }
            } else {  // CollectiveSqueezedVacuum
                int room = space.cutoff(0);
                for (int j = 1; j < n; ++j)
                    room = std::min(room, space.cutoff(j));
                DickeExpansion series =
                    expansion_coefficients(spec, cfg, 4 * (room + 2));
                rep.pure = Eigen::VectorXcd::Zero(space.dim());
                double kept = 0.0;
                for (auto& t : series.terms) {
                    if (t.index.total_quanta() > room) continue;
                    rep.pure +=
                        t.amplitude * dicke_fock_vector(t.index, cfg, space);
                    kept += std::norm(t.amplitude);
                }
                rep.tail_mass = std::max(0.0, 1.0 - kept);
            }
        },
        spec.value);
    return rep;
}

}  // namespace

FockRep fock_representation(const StateSpec& spec, const CouplingConfig& cfg,
                            int max_quanta, double tail_tol) {
    validate_state(spec, cfg);
    if (max_quanta < 0)
        throw std::invalid_argument(
            "fock_representation: max_quanta must be >= 0");
    FockSpace space = FockSpace::box(cfg.n_modes, max_quanta);
    FockRep rep = fock_rep_impl(spec, cfg, space, tail_tol);
    if (rep.tail_mass > tail_tol)
        throw TruncationError(
            "fock_representation: truncation leaves " +
                std::to_string(rep.tail_mass) + " probability outside cutoff",
            rep.tail_mass);
    return rep;
}

StateSpec moon_state(int m, int n, const CouplingConfig& cfg) {
    cfg.validate();
    if (cfg.n_modes != 2)
        throw std::invalid_argument("moon_state: needs a two-mode ensemble");
    if (m < 1 || n < 1)
        throw std::invalid_argument("moon_state: occupations must be >= 1");
    const int top = std::max(m, n);
    FockSpace space = FockSpace::box(2, top);
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(space.dim());
    target[space.index({m, 0})] = 1.0 / std::sqrt(2.0);
    target[space.index({0, n})] = 1.0 / std::sqrt(2.0);
    DickeSuperposition out;
    for (auto& idx : enumerate_basis(2, top)) {
        Complex c = dicke_fock_vector(idx, cfg, space).dot(target);
        if (std::abs(c) > 1e-14) out.terms.push_back({c, idx});
    }
    return StateSpec(std::move(out));
}

}  // namespace superrad
