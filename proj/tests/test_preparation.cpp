#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "superrad/dynamics.hpp"
#include "superrad/errors.hpp"
#include "superrad/fock.hpp"
#include "superrad/preparation.hpp"

using namespace superrad;

namespace {

constexpr double kPi = std::numbers::pi;

QubitModeState random_qubit_state(std::mt19937& rng, int max_level) {
    std::normal_distribution<double> gauss;
    QubitModeState s;
    s.ground = Eigen::VectorXcd::Zero(max_level + 1);
    s.excited = Eigen::VectorXcd::Zero(max_level + 1);
    for (int n = 0; n <= max_level; ++n) {
        s.ground[n] = Complex(gauss(rng), gauss(rng));
        s.excited[n] = Complex(gauss(rng), gauss(rng));
    }
    const double nrm = s.norm();
    s.ground /= nrm;
    s.excited /= nrm;
    return s;
}

Eigen::VectorXcd random_target(std::mt19937& rng, int top_level) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd c(top_level + 1);
    for (int n = 0; n <= top_level; ++n)
        c[n] = Complex(gauss(rng), gauss(rng));
    c /= c.norm();
    return c;
}

}  // namespace

TEST_CASE("pulse sequence text round trip and validation") {
    PulseSequence seq;
    seq.steps.push_back(PulseStep::rotation({0.5, -0.25}));
    seq.steps.push_back(PulseStep::pause(kPi));
    seq.steps.push_back(PulseStep::jaynes_cummings(0.1234567890123456789));
    seq.steps.push_back(PulseStep::rotation({-1.0 / 3.0, 1e-7}));
    CHECK(seq.count(PulseStep::Kind::Rotation) == 2);
    CHECK(seq.count(PulseStep::Kind::JaynesCummings) == 1);
    CHECK(seq.count(PulseStep::Kind::PhasePause) == 1);

    const std::string text = seq.to_text();
    CHECK(text.substr(0, 14) == "ROT 0.5 -0.25\n");

    // %.17g keeps doubles exact through the text form.
    PulseSequence back = PulseSequence::from_text(text);
    REQUIRE(back.steps.size() == seq.steps.size());
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        CHECK(back.steps[i].kind == seq.steps[i].kind);
        CHECK(back.steps[i].area == seq.steps[i].area);
        CHECK(back.steps[i].duration == seq.steps[i].duration);
        CHECK(back.steps[i].phase == seq.steps[i].phase);
    }

    CHECK(PulseSequence::from_text("\n  \nJC 0.25\n").steps.size() == 1);
    CHECK_THROWS_AS(PulseSequence::from_text("SPIN 1 2\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(PulseSequence::from_text("ROT 0.5\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(PulseSequence::from_text("JC -0.5\n"),
                    std::invalid_argument);

    PulseSequence bad;
    bad.steps.push_back(PulseStep::jaynes_cummings(-1.0));
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("qubit-mode pulses are unitary and invert as expected") {
    std::mt19937 rng(911);
    for (int trial = 0; trial < 20; ++trial) {
        CAPTURE(trial);
        QubitModeState s = random_qubit_state(rng, 5);
        const QubitModeState orig = s;

        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        const Complex area(uni(rng), uni(rng));
        const double phi = uni(rng);
        const double gt = std::abs(uni(rng));

        apply_rotation(s, area);
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
        apply_phase(s, phi);
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
        // Top excited level is occupied, so shift it away before exchanging.
        QubitModeState t = s;
        t.excited[5] = 0.0;
        const double tnorm = t.norm();
        t.ground /= tnorm;
        t.excited /= tnorm;
        const QubitModeState before_jc = t;
        apply_jc(t, gt);
        CHECK(std::abs(t.norm() - 1.0) < 1e-12);

        // JC(gt)^-1 = P(pi) JC(gt) P(pi).
        apply_phase(t, kPi);
        apply_jc(t, gt);
        apply_phase(t, kPi);
        CHECK((t.ground - before_jc.ground).norm() < 1e-12);
        CHECK((t.excited - before_jc.excited).norm() < 1e-12);

        // Rotations invert by negating the area.
        apply_phase(s, -phi);
        apply_rotation(s, -area);
        CHECK((s.ground - orig.ground).norm() < 1e-12);
        CHECK((s.excited - orig.excited).norm() < 1e-12);
    }

    // An exchange pulse with amplitude on |e, max> would need |g, max+1>.
    QubitModeState top = QubitModeState::vacuum(0);
    apply_rotation(top, Complex(0.5 * kPi, 0.0));
    CHECK_THROWS_AS(apply_jc(top, 0.3), TruncationError);
}

TEST_CASE("synthesis anchors: vacuum target and one-quantum target") {
    Eigen::VectorXd g(2);
    g << 1.0, 1.0;

    Eigen::VectorXcd vac(1);
    vac << 1.0;
    PulseSequence empty = law_eberly_synthesize(vac, g);
    CHECK(empty.steps.empty());
    QubitModeState s0 = law_eberly_simulate(empty, g, 2);
    CHECK(preparation_fidelity(s0, vac) == doctest::Approx(1.0));

    Eigen::VectorXcd one(2);
    one << 0.0, 1.0;
    PulseSequence seq = law_eberly_synthesize(one, g);
    REQUIRE(seq.steps.size() == 3);
    CHECK(seq.steps[0].kind == PulseStep::Kind::Rotation);
    CHECK(std::abs(seq.steps[0].area - Complex(-0.5 * kPi, 0.0)) < 1e-14);
    CHECK(seq.steps[1].kind == PulseStep::Kind::PhasePause);
    CHECK(seq.steps[1].phase == doctest::Approx(kPi));
    CHECK(seq.steps[2].kind == PulseStep::Kind::JaynesCummings);
    CHECK(seq.steps[2].duration == doctest::Approx(0.5 * kPi));

    QubitModeState s1 = law_eberly_simulate(seq, g, 1);
    CHECK(preparation_fidelity(s1, one) > 1.0 - 1e-12);
    // Global phase comes out as -|g,1>.
    CHECK(std::abs(s1.ground[1] - Complex(-1.0, 0.0)) < 1e-12);
    CHECK(s1.excited.norm() < 1e-12);
}

TEST_CASE("random targets round trip with high fidelity") {
    std::mt19937 rng(20240817);
    Eigen::VectorXd g(2);
    g << 0.7, 1.3;
    std::uniform_int_distribution<int> pick_top(1, 4);

    for (int trial = 0; trial < 50; ++trial) {
        CAPTURE(trial);
        const int top = pick_top(rng);
        const Eigen::VectorXcd target = random_target(rng, top);

        PulseSequence seq = law_eberly_synthesize(target, g);
        CHECK(seq.count(PulseStep::Kind::JaynesCummings) <= top);
        CHECK(seq.count(PulseStep::Kind::Rotation) <= top + 1);
        CHECK(static_cast<int>(seq.steps.size()) <= 3 * (top + 1));
        for (const auto& step : seq.steps)
            if (step.kind == PulseStep::Kind::JaynesCummings)
                CHECK(step.duration >= 0.0);

        QubitModeState prepared = law_eberly_simulate(seq, g, top);
        CHECK(std::abs(prepared.norm() - 1.0) < 1e-12);
        CHECK(prepared.excited.norm() < 1e-10);  // qubit disentangles
        CHECK(preparation_fidelity(prepared, target) > 1.0 - 1e-10);

        // The schedule survives serialization.
        PulseSequence back = PulseSequence::from_text(seq.to_text());
        QubitModeState again = law_eberly_simulate(back, g, top);
        CHECK(preparation_fidelity(again, target) > 1.0 - 1e-10);
    }
}

TEST_CASE("synthesis input validation") {
    Eigen::VectorXd g(2);
    g << 1.0, 2.0;
    Eigen::VectorXcd ok(2);
    ok << 0.6, 0.8;
    CHECK_THROWS_AS(law_eberly_synthesize(Eigen::VectorXcd(), g),
                    std::invalid_argument);
    CHECK_THROWS_AS(law_eberly_synthesize(2.0 * ok, g),
                    std::invalid_argument);
    CHECK_THROWS_AS(law_eberly_synthesize(ok, Eigen::VectorXd::Zero(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(law_eberly_simulate(PulseSequence{},
                                        Eigen::VectorXd::Zero(2), 1),
                    std::invalid_argument);
}

TEST_CASE("multimode expansion matches the collective ladder") {
    // Two quanta split over two equal modes: (1/2, 1/sqrt 2, 1/2).
    Eigen::VectorXcd two(3);
    two << 0.0, 0.0, 1.0;
    Eigen::VectorXd equal(2);
    equal << 1.0, 1.0;
    auto terms = multimode_expansion(two, equal);
    REQUIRE(terms.size() == 3);
    auto amp_at = [&](std::vector<int> occ) {
        for (const auto& t : terms)
            if (t.occupations == occ) return t.amplitude;
        REQUIRE(false);
        return Complex(0.0);
    };
    CHECK(std::abs(amp_at({2, 0}) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(amp_at({1, 1}) - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(amp_at({0, 2}) - Complex(0.5)) < 1e-15);

    // One mode: trivial expansion.
    Eigen::VectorXd solo(1);
    solo << 2.0;
    auto direct = multimode_expansion(two, solo);
    REQUIRE(direct.size() == 1);
    CHECK(direct[0].occupations == std::vector<int>{2});
    CHECK(std::abs(direct[0].amplitude - Complex(1.0)) < 1e-15);

    // The expansion is unitary level by level, so it preserves the norm.
    std::mt19937 rng(4242);
    Eigen::VectorXcd coeffs = random_target(rng, 4);
    Eigen::VectorXd g(3);
    g << 0.5, 1.5, 2.0;
    double total = 0.0;
    for (const auto& t : multimode_expansion(coeffs, g))
        total += std::norm(t.amplitude);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Dual route: the pure bright rung written over bare Fock states.
    CouplingConfig cfg;
    cfg.n_modes = 3;
    cfg.couplings = {1.0, 2.0, 2.0};
    cfg.kappa = 1.0;
    Eigen::VectorXd w(3);
    w << 1.0, 2.0, 2.0;
    FockSpace space = FockSpace::box(3, 2);
    Eigen::VectorXcd rung =
        dicke_fock_vector(BasisIndex{{0, 0}, 2}, cfg, space);
    for (const auto& t : multimode_expansion(two, w)) {
        CAPTURE(t.occupations[0]);
        CHECK(std::abs(rung[space.index(t.occupations)] - t.amplitude) <
              1e-13);
    }

    CHECK_THROWS_AS(multimode_expansion(two, Eigen::VectorXd::Zero(2)),
                    std::invalid_argument);
}

TEST_CASE("waveguide propagator is unitary and starts at the identity") {
    WaveguidePropagator start = waveguide_propagator(4, 1.7, 2.5, 0.0);
    CHECK((start.matrix - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs()
              .maxCoeff() < 1e-14);

    std::mt19937 rng(7117);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        CAPTURE(trial);
        const int n = 1 + static_cast<int>(rng() % 6);
        const double coupling = 0.1 + 1.9 * uni(rng);
        const double t = 10.0 * uni(rng) / coupling;
        const double omega = 5.0 * uni(rng);
        WaveguidePropagator wp =
            waveguide_propagator(n, coupling, omega, t);
        CHECK(wp.unitarity_defect() < 1e-12);
    }

    CHECK_THROWS_AS(waveguide_propagator(0, 1.0, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(waveguide_propagator(2, 1.0, 0.0, -1.0),
                    std::invalid_argument);
}

TEST_CASE("three-guide amplitudes match the closed form") {
    const double coupling = 0.8, omega = 1.3;
    for (double t : {0.0, 0.3, 0.9, 1.7, 2.6, 4.1}) {
        CAPTURE(t);
        WaveguidePropagator wp =
            waveguide_propagator(3, coupling, omega, t);
        const double s = std::sqrt(2.0) * coupling * t;
        const Complex x =
            0.25 * std::exp(Complex(0.0, -(omega * t + s)));
        const Complex z = std::exp(Complex(0.0, s));
        CHECK(std::abs(wp.matrix(0, 0) - x * (z + 1.0) * (z + 1.0)) < 1e-13);
        CHECK(std::abs(wp.matrix(1, 0) +
                       std::sqrt(2.0) * x * (z * z - 1.0)) < 1e-13);
        CHECK(std::abs(wp.matrix(2, 0) - x * (z - 1.0) * (z - 1.0)) < 1e-13);
    }
}

TEST_CASE("uniform three-guide dark fraction follows the lattice beat") {
    const double coupling = 0.9;
    CouplingConfig cfg = CouplingConfig::uniform(3, 1.0, 2.0);
    for (int k = 0; k <= 15; ++k) {
        const double t = 0.2 * k;
        CAPTURE(t);
        const double beat = std::cos(2.0 * std::sqrt(2.0) * coupling * t);
        CHECK(waveguide_dark_fraction(1, coupling, t, cfg) ==
              doctest::Approx(0.75 - beat / 12.0).epsilon(1e-10));
        CHECK(waveguide_dark_fraction(2, coupling, t, cfg) ==
              doctest::Approx(0.5 + beat / 6.0).epsilon(1e-10));
    }
    // At t = 0 every guide feeds one bare mode: F = 1 - 1/3 either way.
    CHECK(waveguide_dark_fraction(1, coupling, 0.0, cfg) ==
          doctest::Approx(2.0 / 3.0));
    // Half a beat later guide 1 peaks at 5/6 and guide 2 dips to 1/3.
    const double t_star = 0.5 * kPi / (std::sqrt(2.0) * coupling);
    CHECK(waveguide_dark_fraction(1, coupling, t_star, cfg) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-10));
    CHECK(waveguide_dark_fraction(2, coupling, t_star, cfg) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    // Still photons: the fraction is a probability.
    for (int guide = 1; guide <= 3; ++guide) {
        const double f = waveguide_dark_fraction(guide, coupling, 1.23, cfg);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
    CHECK_THROWS_AS(waveguide_dark_fraction(0, coupling, 1.0, cfg),
                    std::out_of_range);
    CHECK_THROWS_AS(waveguide_dark_fraction(4, coupling, 1.0, cfg),
                    std::out_of_range);
}

TEST_CASE("nonuniform couplings pin the instant injection fraction") {
    CouplingConfig cfg;
    cfg.n_modes = 3;
    cfg.couplings = {1.0, 2.0, 2.0};
    cfg.kappa = 1.5;
    // At t = 0 a photon in guide j is the bare mode j: F = 1 - g_j^2/G^2.
    CHECK(waveguide_dark_fraction(1, 0.7, 0.0, cfg) ==
          doctest::Approx(8.0 / 9.0));
    CHECK(waveguide_dark_fraction(2, 0.7, 0.0, cfg) ==
          doctest::Approx(5.0 / 9.0));
    // Zero hopping keeps the lattice frozen up to a global phase.
    CHECK(waveguide_dark_fraction(1, 0.0, 3.7, cfg) ==
          doctest::Approx(8.0 / 9.0));
}

TEST_CASE("a synthesized bright rung is superradiant") {
    Eigen::VectorXd g(3);
    g << 1.0, 2.0, 2.0;
    Eigen::VectorXcd two(3);
    two << 0.0, 0.0, 1.0;

    PulseSequence seq = law_eberly_synthesize(two, g);
    QubitModeState prepared = law_eberly_simulate(seq, g, 2);
    CHECK(preparation_fidelity(prepared, two) > 1.0 - 1e-10);

    // The mode the schedule fills is the bright one, so the prepared state
    // is the pure rung |R=2> and must classify as superradiant.
    CouplingConfig cfg;
    cfg.n_modes = 3;
    cfg.couplings = {1.0, 2.0, 2.0};
    cfg.kappa = 1.0;
    DickeSuperposition rung;
    rung.terms.push_back({1.0, BasisIndex{{0, 0}, 2}});
    auto cls = classify(StateSpec(rung), cfg);
    CHECK(cls.tag == Radiance::Superradiant);
    CHECK(cls.quanta.total == 2);
    CHECK(*cls.fractions.fraction_dark == doctest::Approx(0.0));
}
