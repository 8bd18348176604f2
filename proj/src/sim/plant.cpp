#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "balise/sim/train.hpp"

namespace balise::sim {

void TrainParams::validate() const {
  if (!(alpha_max < 0.0)) throw std::invalid_argument("alpha_max must be negative");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (Td < 0.0 || Tp < 0.0) throw std::invalid_argument("Td and Tp must be non-negative");
  if (v0 < 0.0) throw std::invalid_argument("v0 must be non-negative");
  if (Tp > 0.0 && dt >= 2.0 * Tp) {
    throw std::invalid_argument("dt must be below 2*Tp for a stable lag update");
  }
}

double TrainParams::saturate(double alpha) const noexcept {
  return std::clamp(alpha, alpha_max, 0.0);
}

BrakePlant::BrakePlant(const TrainParams& params)
    : params_(params),
      delay_line_(static_cast<std::size_t>(std::lround(params.Td / params.dt)), 0.0) {
  state_.v = params.v0;
  state_.p = params.p0;
}

const PlantState& BrakePlant::step(double demand) {
  demand = std::min(demand, 0.0);
  double delayed = demand;
  if (!delay_line_.empty()) {
    delay_line_.push_back(demand);
    delayed = delay_line_.front();
    delay_line_.pop_front();
  }
  if (params_.Tp > 0.0) {
    lag_state_ += params_.dt * (delayed - lag_state_) / params_.Tp;
  } else {
    lag_state_ = delayed;
  }
  state_.alpha_actual = params_.saturate(lag_state_);
  state_.v = std::max(0.0, state_.v + state_.alpha_actual * params_.dt);
  state_.p += state_.v * params_.dt;
  return state_;
}

}  // namespace balise::sim
