#include "balise/sim/hoa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "balise/errors.hpp"

namespace balise::sim {

double expected_decel(double v, double loc_reported) {
  if (loc_reported == 0.0) {
    throw DegenerateReference("expected deceleration undefined at the stop point");
  }
  return v * v / (2.0 * loc_reported);
}

std::optional<double> realized_decel(double v_i, double v_next, double loc_i, double loc_next) {
  const double distance = std::abs(loc_i) - std::abs(loc_next);
  if (distance == 0.0) return std::nullopt;
  return (v_next * v_next - v_i * v_i) / (2.0 * distance);
}

double next_learning_gain(double eta, double alpha_r, double alpha_c) noexcept {
  return std::abs(alpha_r - alpha_c) > 0.05 ? eta * 0.95 : eta * 1.05;
}

HoaController::HoaController(double alpha_max, DbzStrategy strategy, double eta0)
    : alpha_max_(alpha_max) {
  if (!(eta0 > 0.0)) throw std::invalid_argument("eta0 must be positive");
  state_.eta = eta0;
  state_.dbz_strategy = strategy;
}

double HoaController::saturate(double a) const noexcept { return std::clamp(a, alpha_max_, 0.0); }

HoaOutcome HoaController::on_balise(double v, double loc_reported) {
  auto& s = state_;
  const double alpha_e = expected_decel(v, loc_reported);

  if (!s.has_reference) {
    s.alpha_e = alpha_e;
    s.demand = alpha_e;
    s.alpha_c = saturate(alpha_e);
    s.prev_v = v;
    s.prev_loc_reported = loc_reported;
    s.has_reference = true;
    return HoaOutcome::Commanded;
  }

  const auto alpha_r = realized_decel(s.prev_v, v, s.prev_loc_reported, loc_reported);
  if (!alpha_r) {
    if (s.dbz_strategy == DbzStrategy::FullBrake) {
      s.emergency = true;
    } else {
      // Keep decelerating at the current command; the repeated report
      // becomes the reference for the next segment.
      s.prev_v = v;
      s.prev_loc_reported = loc_reported;
    }
    return HoaOutcome::DivisionByZero;
  }

  const double eta_next = next_learning_gain(s.eta, *alpha_r, s.alpha_c);
  const double demand = alpha_e - s.eta * (*alpha_r - s.alpha_c);
  s.alpha_r = *alpha_r;
  s.alpha_e = alpha_e;
  s.demand = demand;
  s.alpha_c = saturate(demand);
  s.eta = eta_next;
  s.prev_v = v;
  s.prev_loc_reported = loc_reported;
  return HoaOutcome::Commanded;
}

double HoaController::demand() const noexcept {
  return state_.emergency ? alpha_max_ : std::min(state_.demand, 0.0);
}

double HoaController::command() const noexcept {
  return state_.emergency ? alpha_max_ : state_.alpha_c;
}

}  // namespace balise::sim
