#include <doctest.h>

#include "balise/sim/conservative.hpp"
#include "balise/sim/train.hpp"

using namespace balise::sim;

TEST_CASE("zero error gives zero command") {
  ConservativeController c(0.4, -1.0);
  c.step(0.4, false, 0.01);
  CHECK(c.mode() == ConservativeMode::Pid2);
  CHECK(c.step(0.4, false, 0.01) == 0.0);
}

TEST_CASE("marker forces maximum braking permanently") {
  ConservativeController c(0.4, -1.0);
  CHECK(c.step(3.0, true, 0.01) == -1.0);
  CHECK(c.mode() == ConservativeMode::MaxBrake);
  CHECK(c.step(0.1, false, 0.01) == -1.0);
}

TEST_CASE("modes only move forward") {
  ConservativeController c(0.4, -1.0);
  c.step(5.0, false, 0.01);
  CHECK(c.mode() == ConservativeMode::Pid1);
  c.step(0.3, false, 0.01);
  CHECK(c.mode() == ConservativeMode::Pid2);
  c.step(5.0, false, 0.01);
  CHECK(c.mode() == ConservativeMode::Pid2);
}

TEST_CASE("PID output is clamped and the integral frozen while saturated") {
  PidController pid({1.0, 1.0, 0.0}, -1.0, 0.0);
  CHECK(pid.update(10.0, 0.1) == -1.0);
  CHECK(pid.integral() == 0.0);
  CHECK(pid.update(0.2, 0.1) == doctest::Approx(-0.22));
  CHECK(pid.integral() == doctest::Approx(0.02));
  CHECK(pid.update(-1.0, 0.1) == 0.0);  // would accelerate: clamp to coasting
  pid.reset();
  CHECK(pid.integral() == 0.0);
}

TEST_CASE("derivative is zero on the first sample") {
  PidController pid({0.0, 0.0, 1.0}, -10.0, 0.0);
  CHECK(pid.update(0.5, 0.01) == 0.0);
  CHECK(pid.update(0.6, 0.01) == doctest::Approx(-10.0));
}

namespace {

double time_to_vcon(PidGains first, double v_con) {
  TrainParams p;
  BrakePlant plant(p);
  ConservativeController c(v_con, p.alpha_max, first, kPid2Gains);
  for (int k = 0; k < 20000; ++k) {
    if (plant.state().v <= v_con) return k * p.dt;
    plant.step(c.step(plant.state().v, false, p.dt));
  }
  return 1e9;
}

}  // namespace

TEST_CASE("PID1 reaches the creep speed faster than PID2 alone") {
  const double with_pid1 = time_to_vcon(kPid1Gains, 0.4);
  const double pid2_only = time_to_vcon(kPid2Gains, 0.4);
  CHECK(with_pid1 < pid2_only);
}
