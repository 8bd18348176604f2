#include "balise/sim/conservative.hpp"

#include <algorithm>
#include <stdexcept>

namespace balise::sim {

PidController::PidController(PidGains gains, double lo, double hi)
    : gains_(gains), lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw std::invalid_argument("PID output range is empty");
}

double PidController::update(double error, double dt) {
  const double derivative = prev_error_ ? (error - *prev_error_) / dt : 0.0;
  prev_error_ = error;
  const double integral = integral_ + error * dt;
  const double raw = -(gains_.kp * error + gains_.ki * integral + gains_.kd * derivative);
  const double out = std::clamp(raw, lo_, hi_);
  if (out == raw) integral_ = integral;
  return out;
}

void PidController::reset() {
  integral_ = 0.0;
  prev_error_.reset();
}

ConservativeController::ConservativeController(double v_con, double alpha_max, PidGains pid1,
                                               PidGains pid2)
    : v_con_(v_con),
      alpha_max_(alpha_max),
      pid1_(pid1, alpha_max, 0.0),
      pid2_(pid2, alpha_max, 0.0) {
  if (!(v_con > 0.0)) throw std::invalid_argument("v_con must be positive");
}

double ConservativeController::step(double v, bool marker_seen, double dt) {
  if (marker_seen) mode_ = ConservativeMode::MaxBrake;
  if (mode_ == ConservativeMode::Pid1 && v <= v_con_) mode_ = ConservativeMode::Pid2;

  const double error = v - v_con_;
  switch (mode_) {
    case ConservativeMode::Pid1:
      return pid1_.update(error, dt);
    case ConservativeMode::Pid2:
      return pid2_.update(error, dt);
    case ConservativeMode::MaxBrake:
      break;
  }
  return alpha_max_;
}

}  // namespace balise::sim
