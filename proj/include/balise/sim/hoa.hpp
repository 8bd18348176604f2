#pragma once

#include <optional>

namespace balise::sim {

enum class DbzStrategy { FullBrake, Ignore };

/// v^2 / (2 loc'). Throws DegenerateReference when loc' == 0.
double expected_decel(double v, double loc_reported);

/// (v_next^2 - v_i^2) / 2D with D = |loc_i| - |loc_next|; nullopt when D == 0.
std::optional<double> realized_decel(double v_i, double v_next, double loc_i, double loc_next);

/// Learning-gain update: x0.95 when |alpha_r - alpha_c| > 0.05, else x1.05.
double next_learning_gain(double eta, double alpha_r, double alpha_c) noexcept;

struct HoaState {
  double eta = 1.0;
  double alpha_c = 0.0;       // last saturated command
  double alpha_e = 0.0;       // last expected deceleration
  double alpha_r = 0.0;       // last realized deceleration
  double demand = 0.0;        // raw brake demand handed to the plant
  double prev_v = 0.0;        // speed at the reference balise
  double prev_loc_reported = 0.0;
  bool has_reference = false;
  bool emergency = false;     // latched full braking after a division by zero
  DbzStrategy dbz_strategy = DbzStrategy::FullBrake;
};

enum class HoaOutcome { Commanded, DivisionByZero };

/// Heuristic online learning brake controller. The command is recomputed
/// once per balise and held in between.
class HoaController {
 public:
  HoaController(double alpha_max, DbzStrategy strategy, double eta0);

  HoaOutcome on_balise(double v, double loc_reported);

  /// Demand handed to the plant (alpha_max once an emergency is latched).
  double demand() const noexcept;
  /// Saturated command in [alpha_max, 0].
  double command() const noexcept;
  const HoaState& state() const noexcept { return state_; }

 private:
  double saturate(double a) const noexcept;

  double alpha_max_;
  HoaState state_;
};

}  // namespace balise::sim
