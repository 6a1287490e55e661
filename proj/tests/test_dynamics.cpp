#include <doctest.h>

#include <numbers>
#include <random>

#include "qgt/dynamics.hpp"

using namespace qgt;

namespace {
constexpr double kPi = std::numbers::pi;
const auto kSphere = HamiltonianFamily::bloch_sphere();
} // namespace

TEST_CASE("schedule evaluation") {
    const Schedule ramp{LinearRamp{{0.0, 0.0}, {1.0, 2.0}, 4.0}};
    CHECK(ramp.duration() == 4.0);
    CHECK(ramp.at(0.0).lambda1 == 0.0);
    CHECK(ramp.at(2.0).lambda1 == doctest::Approx(0.5));
    CHECK(ramp.at(4.0).lambda2 == doctest::Approx(2.0));

    const Schedule mod{CosineModulation{{1.0, 0.0}, 1.0, -1.0, 0.2, 3.0, 10.0}};
    CHECK(mod.at(0.0).lambda1 == doctest::Approx(1.2));
    CHECK(mod.at(0.0).lambda2 == doctest::Approx(-0.2));

    const Schedule comp = Schedule::composite(
        {Schedule{ConstantSchedule{{0.5, 0.5}, 1.0}},
         Schedule{LinearRamp{{0.5, 0.5}, {1.5, 0.5}, 2.0}}});
    CHECK(comp.duration() == doctest::Approx(3.0));
    CHECK(comp.at(0.5).lambda1 == doctest::Approx(0.5));
    CHECK(comp.at(2.0).lambda1 == doctest::Approx(1.0));
    CHECK(comp.at(3.0).lambda1 == doctest::Approx(1.5));
    // continuity at the joint
    CHECK(comp.at(1.0 - 1e-12).lambda1 == doctest::Approx(comp.at(1.0 + 1e-12).lambda1));
}

TEST_CASE("stationary eigenstate only picks up a phase") {
    const StateVector psi0 = eigensystem(kSphere, {0.0, 0.0}).state_minus;
    const Schedule hold{ConstantSchedule{{0.0, 0.0}, 20.0}};
    const StateVector psi = evolve_final(kSphere, hold, psi0, 0.01);
    CHECK(std::abs(std::abs(psi0.dot(psi)) - 1.0) < 1e-12);
    CHECK(transition_probability(psi, kSphere, {0.0, 0.0}) < 1e-12);
}

TEST_CASE("rabi oscillation at the equator") {
    // H = sigma_x/2 acting on (1,0): population of |1> is sin^2(t/2)
    const StateVector psi0(1.0, 0.0);
    for (double t : {0.7, 2.0, 5.3}) {
        const Schedule hold{ConstantSchedule{{kPi / 2.0, 0.0}, t}};
        const StateVector psi = evolve_final(kSphere, hold, psi0, 1e-3);
        const double p1 = std::norm(psi(1));
        CHECK(p1 == doctest::Approx(std::pow(std::sin(t / 2.0), 2)).epsilon(1e-9));
    }
}

TEST_CASE("near-adiabatic ramp keeps ground-state overlap") {
    const StateVector psi0 = eigensystem(kSphere, {0.0, 0.0}).state_minus;
    const Schedule ramp{LinearRamp{{0.0, 0.0}, {kPi / 2.0, 0.0}, 1000.0}};
    const StateVector psi = evolve_final(kSphere, ramp, psi0, 0.005);
    const StateVector target = eigensystem(kSphere, {kPi / 2.0, 0.0}).state_minus;
    const double overlap = std::abs(target.dot(psi));
    CHECK(overlap > 0.999);
    // dense-step reference agrees
    const StateVector ref = evolve_final(kSphere, ramp, psi0, 0.001);
    CHECK(std::abs(std::abs(target.dot(ref)) - overlap) < 1e-6);
}

TEST_CASE("expectation values of pauli operators") {
    const Eigen::Matrix2cd sx = pauli_combination({2.0, 0.0, 0.0});
    const Eigen::Matrix2cd sy = pauli_combination({0.0, 2.0, 0.0});
    const Eigen::Matrix2cd sz = pauli_combination({0.0, 0.0, 2.0});
    const std::complex<double> i(0.0, 1.0);
    CHECK(expectation(StateVector(1.0, 0.0), sz) == doctest::Approx(1.0));
    CHECK(expectation(StateVector(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)), sx) ==
          doctest::Approx(1.0));
    CHECK(expectation(StateVector(1.0 / std::sqrt(2.0), i / std::sqrt(2.0)), sy) ==
          doctest::Approx(1.0));
}

TEST_CASE("transition probability against the reference band") {
    const EigenSystem es = eigensystem(kSphere, {1.1, 0.7});
    CHECK(transition_probability(es.state_minus, kSphere, {1.1, 0.7}) < 1e-14);
    CHECK(transition_probability(es.state_plus, kSphere, {1.1, 0.7}) ==
          doctest::Approx(1.0));

    // closed-form overlap of two ground states delta apart in theta
    const double delta = kPi / 16.0;
    const StateVector displaced = eigensystem(kSphere, {kPi / 2.0 + delta, 0.0}).state_minus;
    const double p = transition_probability(displaced, kSphere, {kPi / 2.0, 0.0});
    CHECK(p == doctest::Approx(std::pow(std::sin(delta / 2.0), 2)).epsilon(1e-10));
    CHECK(p == doctest::Approx(0.00960736).epsilon(1e-5));
}

TEST_CASE("transition probability is gauge independent") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    const EigenSystem es = eigensystem(kSphere, {0.9, 0.2});
    for (int i = 0; i < 20; ++i) {
        const double a = u(rng);
        const std::complex<double> phase(std::cos(a), std::sin(a));
        const StateVector rotated = phase * es.state_plus;
        CHECK(transition_probability(rotated, kSphere, {0.9, 0.2}) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("norm is preserved over many steps") {
    const StateVector psi0 = eigensystem(kSphere, {0.4, 0.0}).state_minus;
    const Schedule mod{CosineModulation{{0.4, 0.0}, 1.0, 0.0, 0.2, 1.3, 100.0}};
    const Trajectory traj = evolve(kSphere, mod, psi0, 1e-3, 1000);
    for (const auto& s : traj.states) CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    CHECK(traj.times.size() == traj.states.size());
}

TEST_CASE("second-order convergence in the step size") {
    const StateVector psi0 = eigensystem(kSphere, {0.2, 0.0}).state_minus;
    const Schedule ramp{LinearRamp{{0.2, 0.0}, {2.2, 1.0}, 5.0}};
    const StateVector ref = evolve_final(kSphere, ramp, psi0, 1e-5);
    auto defect = [&](double dt) {
        return (evolve_final(kSphere, ramp, psi0, dt) - ref).norm();
    };
    const double e1 = defect(0.02);
    const double e2 = defect(0.01);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("invalid steps are rejected") {
    const StateVector psi0(1.0, 0.0);
    const Schedule hold{ConstantSchedule{{0.0, 0.0}, 1.0}};
    CHECK_THROWS_AS(evolve_final(kSphere, hold, psi0, 0.0), InvalidStepError);
    CHECK_THROWS_AS(evolve_final(kSphere, hold, psi0, -0.1), InvalidStepError);
    CHECK_THROWS_AS(evolve_final(kSphere, hold, psi0,
                                 std::numeric_limits<double>::quiet_NaN()),
                    InvalidStepError);
    CHECK_THROWS_AS(evolve_final(kSphere, hold, psi0, 2.0), InvalidStepError);
}

TEST_CASE("default time step tracks the control magnitude") {
    const Schedule hold{ConstantSchedule{{kPi / 2.0, 0.0}, 50.0}};
    const double dt = default_time_step(kSphere, hold);
    CHECK(dt == doctest::Approx(0.005)); // |w| = 1 on the sphere
    const auto strong = HamiltonianFamily::custom(
        [](ParameterPoint) { return ControlVector{0.0, 0.0, 10.0}; });
    CHECK(default_time_step(strong, hold) == doctest::Approx(0.0005));
}
