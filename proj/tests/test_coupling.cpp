#include "doctest.h"

#include <Eigen/Dense>
#include <stdexcept>

#include "superrad/coupling.hpp"

using namespace superrad;

TEST_CASE("uniform factory and derived rates") {
    auto cfg = CouplingConfig::uniform(4, 0.5, 2.0, 1.5);
    CHECK(cfg.n_modes == 4);
    CHECK(cfg.couplings == std::vector<double>{0.5, 0.5, 0.5, 0.5});
    CHECK(cfg.total_norm() == doctest::Approx(1.0));
    // Gamma = 4 G^2 / (N kappa) = 4 / (4*2) = 0.5
    CHECK(cfg.decay_rate() == doctest::Approx(0.5));
    CHECK(cfg.omega == 1.5);
}

TEST_CASE("cumulative norms") {
    CouplingConfig cfg{2, {3.0, 4.0}, 1.0, 0.0};
    auto norms = cfg.cumulative_norms();
    REQUIRE(norms.size() == 2);
    CHECK(norms[0] == doctest::Approx(3.0));
    CHECK(norms[1] == doctest::Approx(5.0));
    CHECK(cfg.total_norm() == doctest::Approx(5.0));
}

TEST_CASE("validation rejects bad input") {
    CHECK_THROWS_AS(CouplingConfig{}.validate(), std::invalid_argument);
    CHECK_THROWS_AS((CouplingConfig{2, {1.0}, 1.0, 0.0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((CouplingConfig{2, {1.0, -1.0}, 1.0, 0.0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((CouplingConfig{2, {1.0, 0.0}, 1.0, 0.0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((CouplingConfig{2, {1.0, 1.0}, 0.0, 0.0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((CouplingConfig{2, {1.0, 1.0}, 1.0, -1.0}).validate(),
                    std::invalid_argument);
    CHECK_NOTHROW((CouplingConfig{1, {0.3}, 1.0, 0.0}).validate());
}

TEST_CASE("collective transform is orthogonal with bright last row") {
    for (auto& g : {std::vector<double>{1.0},
                    std::vector<double>{0.6, 0.8},
                    std::vector<double>{1.0, 2.0, 2.0},
                    std::vector<double>{0.3, 1.7, 0.9, 2.2, 0.4}}) {
        CouplingConfig cfg{static_cast<int>(g.size()), g, 1.0, 0.0};
        Eigen::MatrixXd u = collective_transform(cfg);
        const int n = cfg.n_modes;
        REQUIRE(u.rows() == n);
        REQUIRE(u.cols() == n);
        CHECK((u * u.transpose() - Eigen::MatrixXd::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
        // Bright row is g / G_N.
        double gn = cfg.total_norm();
        for (int j = 0; j < n; ++j)
            CHECK(u(n - 1, j) == doctest::Approx(g[j] / gn).epsilon(1e-14));
        // Dark rows are orthogonal to the coupling vector and triangular:
        // row k touches modes 0..k+1 only.
        Eigen::VectorXd gv = Eigen::Map<const Eigen::VectorXd>(g.data(), n);
        for (int k = 0; k + 1 < n; ++k) {
            CHECK(std::abs(u.row(k).dot(gv)) < 1e-14 * gn);
            for (int j = k + 2; j < n; ++j) CHECK(u(k, j) == 0.0);
        }
    }
}

TEST_CASE("two-mode dark row") {
    CouplingConfig cfg{2, {0.6, 0.8}, 1.0, 0.0};
    Eigen::MatrixXd u = collective_transform(cfg);
    CHECK(u(0, 0) == doctest::Approx(0.8));
    CHECK(u(0, 1) == doctest::Approx(-0.6));
    CHECK(u(1, 0) == doctest::Approx(0.6));
    CHECK(u(1, 1) == doctest::Approx(0.8));
}

TEST_CASE("single-mode transform is identity") {
    auto cfg = CouplingConfig::uniform(1, 0.7, 1.0);
    Eigen::MatrixXd u = collective_transform(cfg);
    REQUIRE(u.rows() == 1);
    CHECK(u(0, 0) == doctest::Approx(1.0));
}
