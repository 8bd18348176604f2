#include "balise/sim/anomaly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace balise::sim {

namespace {

constexpr double kLocationMatchTolerance = 1e-6;

std::string format_loc(double loc) {
  std::ostringstream os;
  os << loc;
  return os.str();
}

}  // namespace

AnomalyDetector::AnomalyDetector(std::vector<double> known_locs)
    : known_(std::move(known_locs)), received_(known_.size(), false) {
  for (std::size_t i = 1; i < known_.size(); ++i) {
    if (!(known_[i - 1] < known_[i])) {
      throw std::invalid_argument("known balise locations must be strictly increasing");
    }
  }
}

std::optional<MissingBalise> AnomalyDetector::balise_missing(const PositionEstimate& est) const {
  const double p = std::abs(est.p_est);
  const double delta = est.delta();
  for (std::size_t i = 0; i < known_.size(); ++i) {
    if (received_[i]) continue;
    if (p < std::abs(known_[i]) - delta) return MissingBalise{i, 1};
    if (i + 1 < known_.size() && p < std::abs(known_[i + 1]) + delta) {
      return MissingBalise{i, 2};
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> AnomalyDetector::index_of(double loc) const {
  for (std::size_t i = 0; i < known_.size(); ++i) {
    if (std::abs(known_[i] - loc) < kLocationMatchTolerance) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> AnomalyDetector::next_expected() const {
  std::size_t start = 0;
  for (std::size_t i = 0; i < known_.size(); ++i) {
    if (received_[i]) start = i + 1;
  }
  if (start < known_.size()) return start;
  return std::nullopt;
}

TrustUpdate AnomalyDetector::accept(std::size_t index, PositionEstimate& est, std::string note) {
  received_[index] = true;
  est.reset_to(known_[index]);
  records_.clear();
  return TrustUpdate{known_[index], true, std::move(note)};
}

std::optional<double> AnomalyDetector::disambiguate(double growth_k) const {
  if (records_.size() < 2) return std::nullopt;
  const auto& latest = records_.back();
  for (std::size_t i = 0; i + 1 < records_.size(); ++i) {
    const auto& earlier = records_[i];
    const double d = latest.local - earlier.local;
    const double tolerance = growth_k * std::abs(d) + kLocationMatchTolerance;
    std::optional<double> match;
    int matches = 0;
    for (double a : earlier.candidates) {
      for (double b : latest.candidates) {
        if (std::abs((b - a) - d) <= tolerance) {
          ++matches;
          match = b;
        }
      }
    }
    if (matches == 1) return match;
  }
  return std::nullopt;
}

TrustUpdate AnomalyDetector::derive_trustworthy_info(AuthOutcome auth,
                                                     std::optional<double> loc_reported,
                                                     PositionEstimate& est) {
  const double delta = est.delta();

  if (auth == AuthOutcome::Pass) {
    if (!loc_reported) throw std::invalid_argument("authenticated report without a location");
    if (std::abs(est.p_est - *loc_reported) < delta) {
      if (auto idx = index_of(*loc_reported)) {
        return accept(*idx, est, "trusted:" + format_loc(*loc_reported));
      }
      est.reset_to(*loc_reported);
      return TrustUpdate{*loc_reported, true, "trusted:" + format_loc(*loc_reported)};
    }
    // Authentic but implausible here (replayed telegram): fall back on the
    // track map ordering, keep the estimate.
    if (auto idx = next_expected()) {
      received_[*idx] = true;
      return TrustUpdate{known_[*idx], false,
                         "implausible:" + format_loc(*loc_reported) + "->map:" +
                             format_loc(known_[*idx])};
    }
    return TrustUpdate{std::nullopt, false, "implausible:" + format_loc(*loc_reported)};
  }

  std::vector<double> candidates;
  std::vector<std::size_t> candidate_idx;
  for (std::size_t i = 0; i < known_.size(); ++i) {
    if (std::abs(est.p_est - known_[i]) < delta) {
      candidates.push_back(known_[i]);
      candidate_idx.push_back(i);
    }
  }
  if (candidates.size() == 1) {
    return accept(candidate_idx.front(), est, "recovered:" + format_loc(candidates.front()));
  }
  if (candidates.empty()) return TrustUpdate{std::nullopt, false, "unresolved:no-candidate"};

  records_.push_back(UnverifiedRecord{est.p_est, candidates});
  if (auto loc = disambiguate(est.growth_k)) {
    return accept(*index_of(*loc), est, "disambiguated:" + format_loc(*loc));
  }
  return TrustUpdate{std::nullopt, false,
                     "unresolved:" + std::to_string(candidates.size()) + "-candidates"};
}

}  // namespace balise::sim
