#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "balise/errors.hpp"
#include "balise/io.hpp"
#include "balise/sim/scenario.hpp"

using namespace balise;
using namespace balise::sim;

namespace {

bool has_event(const SimResult& r, const std::string& needle) {
  for (const auto& row : r.trajectory) {
    if (row.event.find(needle) != std::string::npos) return true;
  }
  return false;
}

ScenarioConfig tamper_b1(ControllerKind controller, AuthMode mode) {
  ScenarioConfig c;
  c.controller = controller;
  c.auth_mode = mode;
  c.attacks = {TamperAttack{0, -1.0}};
  return c;
}

}  // namespace

TEST_CASE("no attack stops within the allowable error") {
  const auto r = run_scenario(ScenarioConfig{});
  CHECK(std::abs(r.stop_error) <= 0.3);
  CHECK(r.mode_switches == 0);
  CHECK(r.auth_failures == 0);
  CHECK(r.eta_history.size() == 5);
  CHECK(has_event(r, "B6:marker"));
}

TEST_CASE("trajectory rows start at t=0 and end at rest") {
  const auto r = run_scenario(ScenarioConfig{});
  REQUIRE(!r.trajectory.empty());
  CHECK(r.trajectory.front().t == 0.0);
  CHECK(r.trajectory.front().v == 10.0);
  CHECK(r.trajectory.back().v == 0.0);
  CHECK(r.trajectory.back().t == doctest::Approx(r.stop_time));
  const double expected_rows = r.stop_time / 0.01 + 1;
  CHECK(std::abs(static_cast<double>(r.trajectory.size()) - expected_rows) <= 1.0);
}

TEST_CASE("identical configs give identical trajectories") {
  ScenarioConfig c = tamper_b1(ControllerKind::Resilient, AuthMode::Authenticated);
  c.p_est0 = -120;
  c.delta0 = 25;
  const auto a = run_scenario(c);
  const auto b = run_scenario(c);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(a.trajectory[i].p == b.trajectory[i].p);
    CHECK(a.trajectory[i].event == b.trajectory[i].event);
  }
}

TEST_CASE("tampering with authentication is reported as an auth failure") {
  const auto r = run_scenario(tamper_b1(ControllerKind::Hoa, AuthMode::Authenticated));
  CHECK(r.auth_failures == 1);
  CHECK(has_event(r, "B1:auth-fail"));
  CHECK(r.stop_error > 0.0);  // overshoot past the marker
}

TEST_CASE("legacy tampering is accepted at face value") {
  const auto r = run_scenario(tamper_b1(ControllerKind::Hoa, AuthMode::Legacy));
  CHECK(has_event(r, "B1:read:-1"));
  CHECK(r.stop_error < -40.0);
}

TEST_CASE("resilient controller: p_est0=-120 stays in default mode") {
  auto c = tamper_b1(ControllerKind::Resilient, AuthMode::Authenticated);
  c.p_est0 = -120;
  c.delta0 = 25;
  const auto r = run_scenario(c);
  CHECK(r.mode_switches == 0);
  CHECK(has_event(r, "B1:recovered:-100"));
  CHECK(std::abs(r.stop_error) <= 0.3);
}

TEST_CASE("resilient controller: p_est0=-80 switches to conservative") {
  auto c = tamper_b1(ControllerKind::Resilient, AuthMode::Authenticated);
  c.p_est0 = -80;
  c.delta0 = 15;
  const auto r = run_scenario(c);
  CHECK(r.mode_switches == 1);
  CHECK(r.balise_missing_events == 1);
  CHECK(has_event(r, "missing:B1:clause1"));
  CHECK(r.trajectory.back().mode == "max_brake");
  CHECK(std::abs(r.stop_error) <= 0.3);
}

TEST_CASE("unavailable balise is skipped by the reader") {
  ScenarioConfig c;
  c.attacks = {UnavailableAttack{0}};
  const auto r = run_scenario(c);
  CHECK(has_event(r, "B1:no-signal"));
  CHECK(r.auth_failures == 0);
}

TEST_CASE("short telegrams work end to end") {
  ScenarioConfig c;
  c.format = FormatKind::Short;
  c.auth_mode = AuthMode::Authenticated;
  CHECK(std::abs(run_scenario(c).stop_error) <= 0.3);
}

TEST_CASE("a run that cannot stop in time raises TimeoutError") {
  ScenarioConfig c;
  c.max_time_s = 5.0;
  CHECK_THROWS_AS(run_scenario(c), TimeoutError);
}

TEST_CASE("invalid configurations are rejected") {
  ScenarioConfig c;
  c.balises = {{1, -10, BaliseKind::Fixed}, {2, -20, BaliseKind::Fixed},
               {3, 0, BaliseKind::Controlled}};
  CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
  c = {};
  c.attacks = {CloneAttack{0, 9}};
  CHECK_THROWS_AS(run_scenario(c), std::out_of_range);
  c = {};
  c.train.dt = -1;
  CHECK_THROWS(run_scenario(c));
}

TEST_CASE("CSV output has the documented header and one line per row") {
  const auto r = run_scenario(ScenarioConfig{});
  std::ostringstream os;
  io::write_trajectory_csv(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,p,v,alpha_cmd,alpha_actual,mode,event");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == r.trajectory.size());
  const auto s = io::summary_json(r);
  CHECK(s["stop_error_m"].get<double>() == r.stop_error);
  CHECK(s.contains("stop_time_s"));
  CHECK(s.contains("mode_switches"));
  CHECK(s.contains("auth_failures"));
}
