#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace balise::sim {

/// Onboard odometry estimate with an error bound that grows with the
/// distance travelled since the last trusted position reference.
struct PositionEstimate {
  double p_est = 0.0;
  double delta0 = 0.0;
  double growth_k = 0.02;
  double dist_since_ref = 0.0;
  bool trusted_ref = false;

  /// (0 after a trusted reference, else delta0) + growth_k * distance.
  double delta() const noexcept {
    return (trusted_ref ? 0.0 : delta0) + growth_k * dist_since_ref;
  }

  void advance(double ds) noexcept {
    p_est += ds;
    dist_since_ref += ds < 0 ? -ds : ds;
  }

  void reset_to(double loc) noexcept {
    p_est = loc;
    dist_since_ref = 0.0;
    trusted_ref = true;
  }
};

struct UnverifiedRecord {
  double local = 0.0;
  std::vector<double> candidates;
};

enum class AuthOutcome { Pass, Fail };

struct MissingBalise {
  std::size_t index = 0;
  // 1: |p_est| < |loc_i| - delta;  2: |p_est| < |loc_{i+1}| + delta.
  int clause = 0;
};

struct TrustUpdate {
  /// Location the braking controller should consume, if any.
  std::optional<double> hoa_input;
  bool estimate_reset = false;
  std::string note;
};

/// Cross-checks balise reports against the static track map and the onboard
/// estimate.
class AnomalyDetector {
 public:
  /// Known fixed-balise locations, strictly increasing.
  explicit AnomalyDetector(std::vector<double> known_locs);

  /// The missing-balise test, evaluated as printed: some unreceived balise i
  /// with |p_est| < |loc_i| - delta, or |p_est| < |loc_{i+1}| + delta.
  std::optional<MissingBalise> balise_missing(const PositionEstimate& est) const;

  TrustUpdate derive_trustworthy_info(AuthOutcome auth, std::optional<double> loc_reported,
                                      PositionEstimate& est);

  std::span<const double> known_locs() const noexcept { return known_; }
  const std::vector<UnverifiedRecord>& records() const noexcept { return records_; }
  bool received(std::size_t index) const { return received_.at(index); }
  void mark_received(std::size_t index) { received_.at(index) = true; }

 private:
  std::optional<std::size_t> index_of(double loc) const;
  std::optional<std::size_t> next_expected() const;
  TrustUpdate accept(std::size_t index, PositionEstimate& est, std::string note);
  std::optional<double> disambiguate(double growth_k) const;

  std::vector<double> known_;
  std::vector<bool> received_;
  std::vector<UnverifiedRecord> records_;
};

}  // namespace balise::sim
