#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balise/auth.hpp"
#include "balise/sim/deployment.hpp"
#include "balise/sim/hoa.hpp"
#include "balise/sim/train.hpp"

namespace balise::sim {

enum class ControllerKind { Hoa, Resilient };

struct ScenarioConfig {
  std::string name = "scenario";
  TrainParams train;
  std::vector<BaliseSpec> balises = default_track_map();
  std::vector<AttackSpec> attacks;
  ControllerKind controller = ControllerKind::Hoa;
  DbzStrategy dbz = DbzStrategy::FullBrake;
  std::optional<double> p_est0;  // defaults to train.p0
  double delta0 = 15.0;
  double growth_k = 0.02;
  double eta0 = 0.85;
  double v_con = 0.35;
  AuthMode auth_mode = AuthMode::Legacy;
  FormatKind format = FormatKind::Long;
  std::uint64_t seed = 1;
  double max_time_s = 300.0;
  std::optional<MasterKey> master_key;  // derived from seed when absent
  std::uint16_t key_version = 0;

  /// Balises at -100, -64, -36, -16, -4 plus the stop marker at 0.
  static std::vector<BaliseSpec> default_track_map();
};

enum class ControlMode { Default, Conservative };

struct TrajectoryRow {
  double t = 0.0;
  double p = 0.0;
  double v = 0.0;
  double alpha_cmd = 0.0;
  double alpha_actual = 0.0;
  std::string mode;   // default | pid1 | pid2 | max_brake
  std::string event;  // ';'-joined, empty when nothing happened
};

struct SimResult {
  double stop_error = 0.0;  // final position relative to the stop point
  double stop_time = 0.0;
  std::vector<TrajectoryRow> trajectory;
  int auth_failures = 0;
  int balise_missing_events = 0;
  int mode_switches = 0;
  std::vector<double> eta_history;
};

/// Deterministic 256-bit master key for a seed (test and batch use only).
MasterKey master_key_from_seed(std::uint64_t seed);

/// Integrates until the train is at rest. Throws TimeoutError if that does
/// not happen within config.max_time_s, std::invalid_argument on a bad
/// configuration.
SimResult run_scenario(const ScenarioConfig& config);

}  // namespace balise::sim
