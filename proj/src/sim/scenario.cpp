#include "balise/sim/scenario.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "balise/errors.hpp"
#include "balise/sim/anomaly.hpp"
#include "balise/sim/conservative.hpp"

namespace balise::sim {

std::vector<BaliseSpec> ScenarioConfig::default_track_map() {
  return {{1, -100.0, BaliseKind::Fixed}, {2, -64.0, BaliseKind::Fixed},
          {3, -36.0, BaliseKind::Fixed},  {4, -16.0, BaliseKind::Fixed},
          {5, -4.0, BaliseKind::Fixed},   {6, 0.0, BaliseKind::Controlled}};
}

MasterKey master_key_from_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MasterKey mk;
  for (std::size_t i = 0; i < mk.bytes.size(); i += 8) {
    const std::uint64_t word = rng();
    for (std::size_t j = 0; j < 8; ++j) {
      mk.bytes[i + j] = static_cast<std::uint8_t>(word >> (56 - 8 * j));
    }
  }
  return mk;
}

namespace {

constexpr double kCrossingSlack = 1e-9;

std::string balise_label(std::size_t index) { return "B" + std::to_string(index + 1); }

std::string mode_name(ControlMode mode, const ConservativeController& cons) {
  if (mode == ControlMode::Default) return "default";
  switch (cons.mode()) {
    case ConservativeMode::Pid1:
      return "pid1";
    case ConservativeMode::Pid2:
      return "pid2";
    case ConservativeMode::MaxBrake:
      break;
  }
  return "max_brake";
}

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg)
      : cfg_(cfg),
        mk_(cfg.master_key.value_or(master_key_from_seed(cfg.seed))),
        rng_(cfg.seed),
        deployment_(build_deployment(cfg.balises, cfg.format, cfg.auth_mode, mk_,
                                     cfg.key_version, rng_)),
        reader_(cfg.auth_mode, cfg.format, mk_, cfg.key_version, cfg.balises, rng_()),
        plant_(cfg.train),
        hoa_(cfg.train.alpha_max, cfg.dbz, cfg.eta0),
        cons_(cfg.v_con, cfg.train.alpha_max),
        detector_(fixed_locations(cfg.balises)) {
    for (const auto& attack : cfg.attacks) apply_attack(deployment_, attack);
    est_.p_est = cfg.p_est0.value_or(cfg.train.p0);
    est_.delta0 = cfg.delta0;
    est_.growth_k = cfg.growth_k;
  }

  SimResult run() {
    const double dt = cfg_.train.dt;
    const auto max_steps = static_cast<std::size_t>(std::ceil(cfg_.max_time_s / dt));
    for (std::size_t k = 0;; ++k) {
      const double t = static_cast<double>(k) * dt;
      events_.clear();
      const PlantState before = plant_.state();

      while (next_ < deployment_.balises.size() &&
             before.p >= deployment_.balises[next_].loc - kCrossingSlack) {
        encounter(next_++, before.v);
      }
      if (cfg_.controller == ControllerKind::Resilient && mode_ == ControlMode::Default) {
        if (auto missing = detector_.balise_missing(est_)) {
          ++result_.balise_missing_events;
          ++result_.mode_switches;
          mode_ = ControlMode::Conservative;
          events_.push_back("missing:" + balise_label(missing->index) + ":clause" +
                            std::to_string(missing->clause));
          events_.push_back("switch:conservative");
        }
      }

      double demand;
      if (mode_ == ControlMode::Conservative) {
        demand = cons_.step(before.v, marker_seen_, dt);
      } else if (marker_seen_) {
        demand = cfg_.train.alpha_max;
      } else {
        demand = hoa_.demand();
      }

      result_.trajectory.push_back(TrajectoryRow{t, before.p, before.v,
                                                 cfg_.train.saturate(demand),
                                                 before.alpha_actual, mode_name(mode_, cons_),
                                                 join_events()});
      if (before.v <= 0.0) {
        result_.stop_time = t;
        result_.stop_error = before.p;
        return std::move(result_);
      }
      if (k >= max_steps) {
        std::ostringstream os;
        os << "train still moving at t=" << t << " s (v=" << before.v << " m/s)";
        throw TimeoutError(os.str());
      }
      const PlantState& after = plant_.step(demand);
      est_.advance(after.p - before.p);
    }
  }

 private:
  static std::vector<double> fixed_locations(const std::vector<BaliseSpec>& specs) {
    std::vector<double> locs;
    for (const auto& s : specs) {
      if (s.kind == BaliseKind::Fixed) locs.push_back(s.loc);
    }
    return locs;
  }

  void encounter(std::size_t index, double v) {
    const Balise& balise = deployment_.balises[index];
    const std::string label = balise_label(index);
    const ReadResult read = reader_.read(balise);

    if (read.status == ReadStatus::NotReceived) {
      events_.push_back(label + ":no-signal");
      return;
    }
    if (read.status == ReadStatus::AuthFailed) {
      ++result_.auth_failures;
      events_.push_back(label + ":auth-fail");
    } else if (read.status == ReadStatus::DecodeFailed) {
      events_.push_back(label + ":decode-fail");
    }

    if (balise.kind == BaliseKind::Controlled) {
      if (read.status == ReadStatus::Ok) {
        marker_seen_ = true;
        events_.push_back(label + ":marker");
      }
      return;
    }

    std::optional<double> reported;
    if (read.status == ReadStatus::Ok) {
      reported = read.user->reported_location_m();
      std::ostringstream os;
      os << label << ":read:" << *reported;
      events_.push_back(os.str());
    }

    if (cfg_.controller == ControllerKind::Hoa) {
      if (reported) feed_hoa(v, *reported);
      return;
    }

    const AuthOutcome outcome = reported ? AuthOutcome::Pass : AuthOutcome::Fail;
    const TrustUpdate update = detector_.derive_trustworthy_info(outcome, reported, est_);
    events_.push_back(label + ":" + update.note);
    if (update.hoa_input && mode_ == ControlMode::Default) feed_hoa(v, *update.hoa_input);
  }

  void feed_hoa(double v, double loc_reported) {
    try {
      if (hoa_.on_balise(v, loc_reported) == HoaOutcome::DivisionByZero) {
        events_.push_back(cfg_.dbz == DbzStrategy::FullBrake ? "dbz:full-brake" : "dbz:ignore");
        return;
      }
      result_.eta_history.push_back(hoa_.state().eta);
    } catch (const DegenerateReference&) {
      events_.push_back("degenerate-reference");
    }
  }

  std::string join_events() const {
    std::string out;
    for (const auto& e : events_) {
      if (!out.empty()) out += ';';
      out += e;
    }
    return out;
  }

  const ScenarioConfig& cfg_;
  MasterKey mk_;
  std::mt19937_64 rng_;
  Deployment deployment_;
  OnboardReader reader_;
  BrakePlant plant_;
  HoaController hoa_;
  ConservativeController cons_;
  AnomalyDetector detector_;
  PositionEstimate est_;
  ControlMode mode_ = ControlMode::Default;
  bool marker_seen_ = false;
  std::size_t next_ = 0;
  std::vector<std::string> events_;
  SimResult result_;
};

}  // namespace

SimResult run_scenario(const ScenarioConfig& config) {
  config.train.validate();
  if (!(config.max_time_s > 0.0)) throw std::invalid_argument("max_time_s must be positive");
  if (!(config.delta0 >= 0.0) || !(config.growth_k >= 0.0)) {
    throw std::invalid_argument("delta0 and growth_k must be non-negative");
  }
  return Simulation(config).run();
}

}  // namespace balise::sim
