#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "superrad/dynamics.hpp"
#include "superrad/numeric.hpp"

using namespace superrad;

namespace {

const CouplingConfig kTwoUniform = CouplingConfig::uniform(2, 1.0, 1.0);
const CouplingConfig kFiveUniform = CouplingConfig::uniform(5, 0.4, 2.0);

StateSpec coherent_product(std::vector<Complex> alpha) {
    std::vector<Complex> xi(alpha.size(), Complex(0.0));
    return StateSpec(ProductSqueezedCoherent{std::move(alpha), std::move(xi)});
}

}  // namespace

TEST_CASE("classification of the standard families") {
    SUBCASE("vacuum") {
        auto c = classify(vacuum_state(2), kTwoUniform);
        CHECK(c.tag == Radiance::Vacuum);
        CHECK(!c.fractions.fraction_dark.has_value());
    }
    SUBCASE("rung states are superradiant") {
        for (int r : {1, 2, 5}) {
            auto c = classify(
                StateSpec(DickeSuperposition{{{1.0, BasisIndex{{0}, r}}}}),
                kTwoUniform);
            CHECK(c.tag == Radiance::Superradiant);
            CHECK(*c.fractions.fraction_dark == doctest::Approx(0.0));
            CHECK(*c.fractions.reference == doctest::Approx(0.5));
        }
    }
    SUBCASE("dark states") {
        auto c = classify(
            StateSpec(DickeSuperposition{{{1.0, BasisIndex{{2}, 0}}}}),
            kTwoUniform);
        CHECK(c.tag == Radiance::Dark);
        CHECK(*c.fractions.fraction_dark == doctest::Approx(1.0));
    }
    SUBCASE("bare Fock and thermal states sit exactly at the reference") {
        CHECK(classify(StateSpec(MultimodeFock{{1, 0}}), kTwoUniform).tag ==
              Radiance::Normal);
        CHECK(classify(StateSpec(MultimodeFock{{3, 2}}),
                       CouplingConfig{2, {0.3, 1.4}, 1.0, 0.0})
                  .tag == Radiance::Normal);
        CHECK(classify(StateSpec(ThermalState{{0.5, 1.5}}), kTwoUniform).tag ==
              Radiance::Normal);
        CHECK(classify(StateSpec(IncoherentMixture{{{0.2, 0.8}, {1.0}}}),
                       kTwoUniform)
                  .tag == Radiance::Normal);
    }
    SUBCASE("dicke boundary L = R (N-1) is normal") {
        auto cfg3 = CouplingConfig::uniform(3, 1.0, 1.0);
        auto c = classify(
            StateSpec(DickeSuperposition{{{1.0, BasisIndex{{1, 1}, 1}}}}),
            cfg3);
        CHECK(c.tag == Radiance::Normal);
        CHECK(*c.fractions.fraction_dark == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("coherent states split by phase alignment") {
        CHECK(classify(coherent_product({{1.0, 0.0}, {1.0, 0.0}}),
                       kTwoUniform)
                  .tag == Radiance::Superradiant);
        CHECK(classify(coherent_product({{1.0, 0.0}, {-0.5, 0.0}}),
                       kTwoUniform)
                  .tag == Radiance::Subradiant);
        // Antisymmetric coherent state feeds only the dark mode.
        CHECK(classify(coherent_product({{1.0, 0.0}, {-1.0, 0.0}}),
                       kTwoUniform)
                  .tag == Radiance::Dark);
        // A single occupied mode is indistinguishable from independents.
        CHECK(classify(coherent_product({{0.8, 0.0}, {0.0, 0.0}}),
                       kTwoUniform)
                  .tag == Radiance::Normal);
    }
    SUBCASE("collective squeezed vacuum is maximally superradiant") {
        auto c = classify(StateSpec(CollectiveSqueezedVacuum{{0.5, 0.2}}),
                          kFiveUniform);
        CHECK(c.tag == Radiance::Superradiant);
        CHECK(*c.fractions.fraction_dark == doctest::Approx(0.0));
        double s2 = std::pow(std::sinh(std::abs(Complex(0.5, 0.2))), 2);
        CHECK(c.quanta.total == doctest::Approx(s2));
        CHECK(c.quanta.bright == doctest::Approx(s2));
    }
    SUBCASE("moon state is normal") {
        CHECK(classify(moon_state(3, 2, kTwoUniform), kTwoUniform).tag ==
              Radiance::Normal);
    }
}

TEST_CASE("moment propagation semigroup and invariants") {
    CouplingConfig cfg{3, {0.5, 1.1, 0.8}, 1.0, 0.0};
    auto spec = StateSpec(ProductSqueezedCoherent{
        {{0.4, 0.2}, {-0.3, 0.5}, {0.2, 0.0}},
        {{0.2, 0.1}, {0.0, 0.0}, {0.15, -0.05}}});
    ModeMoments m0 = state_moments(spec, cfg);
    MRL q0 = mrl_expectations(m0, cfg);

    for (double tau : {0.1, 0.7, 2.0}) {
        ModeMoments mt = propagate_moments(m0, cfg, tau);
        MRL qt = mrl_expectations(mt, cfg);
        CHECK(qt.bright ==
              doctest::Approx(q0.bright * std::exp(-3.0 * tau)).epsilon(1e-12));
        CHECK(qt.dark == doctest::Approx(q0.dark).epsilon(1e-12));
    }
    // Semigroup: stepping 0.3 then 0.5 equals stepping 0.8.
    ModeMoments a = propagate_moments(propagate_moments(m0, cfg, 0.3), cfg, 0.5);
    ModeMoments b = propagate_moments(m0, cfg, 0.8);
    CHECK((a.means - b.means).norm() < 1e-14);
    CHECK((a.second - b.second).norm() < 1e-14);
}

TEST_CASE("closed-form decay curves") {
    // Five quanta on the bright rung: initial intensity N*R = 25 Gamma.
    auto cfg = kFiveUniform;
    StateSpec rung5(DickeSuperposition{
        {{1.0, BasisIndex{{0, 0, 0, 0}, 5}}}});
    std::vector<double> taus{0.0, 0.1, 0.4, 1.0};
    TimeSeries ts = closed_form_evolution(rung5, cfg, taus);
    CHECK(ts.find("intensity").values[0].real() == doctest::Approx(25.0));
    CHECK(ts.find("total").values[0].real() == doctest::Approx(5.0));
    for (std::size_t k = 0; k < taus.size(); ++k) {
        double want = 5.0 * std::exp(-5.0 * taus[k]);
        CHECK(ts.find("bright").values[k].real() ==
              doctest::Approx(want).epsilon(1e-12));
        CHECK(ts.find("dark").values[k].real() == doctest::Approx(0.0));
        CHECK(ts.find("intensity").values[k].real() ==
              doctest::Approx(5.0 * want).epsilon(1e-12));
    }
    // Same quanta spread over bare modes radiates at 5 Gamma only.
    TimeSeries fock = closed_form_evolution(
        StateSpec(MultimodeFock{{1, 1, 1, 1, 1}}), cfg, {0.0});
    CHECK(fock.find("intensity").values[0].real() == doctest::Approx(5.0));

    CHECK(intensity_series(rung5, cfg, taus).find("intensity").values[1] ==
          ts.find("intensity").values[1]);
}

TEST_CASE("intensity split into uncorrelated and coherent parts") {
    const int n = 4;
    auto cfg = CouplingConfig::uniform(n, 0.7, 1.3);
    const double alpha = 0.8, r = 0.5;
    StateSpec spec(ProductSqueezedCoherent{
        std::vector<Complex>(n, Complex(alpha, 0.0)),
        std::vector<Complex>(n, Complex(r, 0.0))});

    auto [iu0, ic0] = split_intensity(spec, cfg, 0.0);
    double s2 = std::sinh(r) * std::sinh(r);
    CHECK(iu0 == doctest::Approx(n * (alpha * alpha + s2)).epsilon(1e-12));
    CHECK(ic0 ==
          doctest::Approx(n * (n - 1.0) * alpha * alpha).epsilon(1e-12));

    // The parts always sum to the decaying total.
    MRL q0 = mrl_expectations(spec, cfg);
    for (double tau : {0.0, 0.2, 0.9}) {
        auto [iu, ic] = split_intensity(spec, cfg, tau);
        CHECK(iu + ic ==
              doctest::Approx(n * q0.bright * std::exp(-n * tau))
                  .epsilon(1e-12));
    }

    // Uncorrelated benchmark: the dark fraction matches
    // 1 - (|a|^2 + s2/N) / (|a|^2 + s2).
    auto f = dark_fraction(spec, cfg);
    double want = 1.0 - (alpha * alpha + s2 / n) / (alpha * alpha + s2);
    CHECK(*f.fraction_dark == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("ladder populations") {
    auto cfg = kTwoUniform;
    SUBCASE("single rung cascades binomially") {
        const int k = 3;
        DickeSuperposition s{{{1.0, BasisIndex{{0}, k}}}};
        std::vector<double> taus{0.0, 0.05, 0.3, 1.2};
        TimeSeries ts = ladder_populations(s, cfg, taus);
        REQUIRE(ts.channels.size() == std::size_t(k) + 1);
        for (std::size_t ti = 0; ti < taus.size(); ++ti) {
            double drop = -std::expm1(-2.0 * taus[ti]);
            double sum = 0.0, mean_rung = 0.0;
            for (int r = 0; r <= k; ++r) {
                double want = binomial(k, r) *
                              std::exp(-2.0 * r * taus[ti]) *
                              std::pow(drop, k - r);
                double got =
                    ts.find("P_d0_R" + std::to_string(r)).values[ti].real();
                CHECK(got == doctest::Approx(want).epsilon(1e-12));
                sum += got;
                mean_rung += r * got;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            // Mean rung reproduces the moment solution independently.
            CHECK(mean_rung ==
                  doctest::Approx(k * std::exp(-2.0 * taus[ti]))
                      .epsilon(1e-12));
        }
        CHECK(ts.find("P_d0_R3").values[0].real() == doctest::Approx(1.0));
    }
    SUBCASE("ladders evolve independently") {
        DickeSuperposition s{{{std::sqrt(0.7), BasisIndex{{0}, 2}},
                              {std::sqrt(0.3), BasisIndex{{1}, 1}}}};
        TimeSeries ts = ladder_populations(s, cfg, {0.0, 0.4});
        double lad0 = 0.0, lad1 = 0.0;
        for (auto& ch : ts.channels) {
            if (ch.label.rfind("P_d0_", 0) == 0) lad0 += ch.values[1].real();
            if (ch.label.rfind("P_d1_", 0) == 0) lad1 += ch.values[1].real();
        }
        CHECK(lad0 == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(lad1 == doctest::Approx(0.3).epsilon(1e-12));
    }
    SUBCASE("deep rungs stay normalized through the log-domain path") {
        const int k = 60;
        DickeSuperposition s{{{1.0, BasisIndex{{0}, k}}}};
        TimeSeries ts = ladder_populations(s, cfg, {0.3});
        double sum = 0.0;
        for (auto& ch : ts.channels) sum += ch.values[0].real();
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("single-mode labels omit the ladder stem") {
        auto cfg1 = CouplingConfig::uniform(1, 1.0, 1.0);
        DickeSuperposition s{{{1.0, BasisIndex{{}, 2}}}};
        TimeSeries ts = ladder_populations(s, cfg1, {0.0});
        CHECK_NOTHROW(ts.find("P_R0"));
        CHECK_NOTHROW(ts.find("P_R2"));
    }
}

TEST_CASE("cascade similarity residual") {
    for (int dim : {1, 2, 3, 8, 16, 25})
        CHECK(pascal_solution_check(dim) < 1e-12);
}

TEST_CASE("two-time correlations, closed-form special cases") {
    CouplingConfig cfg{2, {0.6, 0.8}, 1.0, 0.0};
    const double gn = 1.0;
    std::vector<double> taus{0.0, 0.2, 0.8, 2.5};

    SUBCASE("bare Fock") {
        StateSpec spec(MultimodeFock{{2, 1}});
        std::vector<int> occ{2, 1};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                TimeSeries ts = two_time_correlation(spec, cfg, i, j, taus);
                for (std::size_t k = 0; k < taus.size(); ++k) {
                    double e = std::exp(-taus[k]);  // N tau / 2 with N = 2
                    Complex want =
                        (i == j ? double(occ[std::size_t(j)]) : 0.0) -
                        cfg.couplings[std::size_t(i)] *
                            cfg.couplings[std::size_t(j)] / (gn * gn) *
                            (1.0 - e) * double(occ[std::size_t(j)]);
                    CHECK(std::abs(ts.find("corr").values[k] - want) < 1e-12);
                }
            }
    }
    SUBCASE("rung state") {
        const int r = 2;
        StateSpec spec(DickeSuperposition{{{1.0, BasisIndex{{0}, r}}}});
        TimeSeries ts = two_time_correlation(spec, cfg, 0, 1, taus);
        for (std::size_t k = 0; k < taus.size(); ++k) {
            double want = r * 0.6 * 0.8 * std::exp(-taus[k]);
            CHECK(std::abs(ts.find("corr").values[k] - want) < 1e-12);
        }
    }
    SUBCASE("coherent states carry no fluctuations") {
        StateSpec spec(ProductSqueezedCoherent{{{0.7, 0.3}, {-0.2, 0.5}},
                                               {{0.0, 0.0}, {0.0, 0.0}}});
        TimeSeries ts = two_time_correlation(spec, cfg, 1, 0, taus);
        for (auto& v : ts.find("corr").values) CHECK(std::abs(v) < 1e-14);
    }
    SUBCASE("collective squeezed vacuum") {
        const double r = 0.6;
        StateSpec spec(CollectiveSqueezedVacuum{{r, 0.0}});
        double s2 = std::sinh(r) * std::sinh(r);
        TimeSeries ts = two_time_correlation(spec, cfg, 0, 0, taus);
        for (std::size_t k = 0; k < taus.size(); ++k) {
            double want = 0.36 * s2 * std::exp(-taus[k]);
            CHECK(std::abs(ts.find("corr").values[k] - want) < 1e-12);
        }
    }
}
