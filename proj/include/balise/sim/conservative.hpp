#pragma once

#include <optional>

namespace balise::sim {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

/// Aggressive stage: brings the train down to the creep speed quickly.
inline constexpr PidGains kPid1Gains{0.8423, 0.0648, 0.4082};
/// Holding stage: keeps the creep speed until the stop marker.
inline constexpr PidGains kPid2Gains{0.0377, 0.0002, 0.2205};

/// Positional PID on a speed error, output -(Kp e + Ki sum(e dt) + Kd de/dt)
/// clamped to [lo, hi]. Rectangular integration, backward-difference
/// derivative (zero on the first sample), and the integral is frozen while
/// the output saturates.
class PidController {
 public:
  PidController(PidGains gains, double lo, double hi);

  double update(double error, double dt);
  void reset();

  double integral() const noexcept { return integral_; }
  const PidGains& gains() const noexcept { return gains_; }

 private:
  PidGains gains_;
  double lo_;
  double hi_;
  double integral_ = 0.0;
  std::optional<double> prev_error_;
};

enum class ConservativeMode { Pid1, Pid2, MaxBrake };

/// Two PIDs behind a multiplexer: PID1 until the speed first drops to
/// v_con, PID2 afterwards, alpha_max from the stop marker on. Transitions
/// only move forward.
class ConservativeController {
 public:
  ConservativeController(double v_con, double alpha_max, PidGains pid1 = kPid1Gains,
                         PidGains pid2 = kPid2Gains);

  double step(double v, bool marker_seen, double dt);

  ConservativeMode mode() const noexcept { return mode_; }
  double v_con() const noexcept { return v_con_; }

 private:
  double v_con_;
  double alpha_max_;
  PidController pid1_;
  PidController pid2_;
  ConservativeMode mode_ = ConservativeMode::Pid1;
};

}  // namespace balise::sim
