#pragma once

#include <cstddef>
#include <deque>

namespace balise::sim {

/// Scenario-wide kinematic and brake parameters. Positions are metres
/// relative to the stop point (negative before it).
struct TrainParams {
  double p0 = -100.0;
  double v0 = 10.0;
  double alpha_max = -1.0;  // m/s^2, strongest deceleration
  double gamma = 0.3;       // allowable stop error, m
  double Td = 0.6;          // dead time, s
  double Tp = 0.4;          // first-order lag constant, s
  double dt = 0.01;         // integration step, s

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
  double saturate(double alpha) const noexcept;
};

struct PlantState {
  double alpha_actual = 0.0;
  double v = 0.0;
  double p = 0.0;
};

/// Brake plant alpha = alpha0 * e^{-Td s} / (Tp s + 1), integrated with a
/// fixed step.
///
/// The dead time is a FIFO of round(Td/dt) past demands. The lag state
/// follows the raw (non-positive) brake demand; the deceleration actually
/// delivered to the train is that state clipped to [alpha_max, 0]. A demand
/// far beyond alpha_max therefore reaches full braking almost immediately
/// after the dead time.
class BrakePlant {
 public:
  explicit BrakePlant(const TrainParams& params);

  /// Advances one step: pop delayed demand, update lag, then v and p.
  const PlantState& step(double demand);

  const PlantState& state() const noexcept { return state_; }
  std::size_t delay_steps() const noexcept { return delay_line_.size(); }

 private:
  TrainParams params_;
  std::deque<double> delay_line_;
  double lag_state_ = 0.0;
  PlantState state_;
};

}  // namespace balise::sim
