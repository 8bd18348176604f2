#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "balise/auth.hpp"
#include "balise/codec.hpp"

namespace balise::sim {

enum class BaliseKind { Fixed, Controlled };
enum class AttackState { None, Tampered, Cloned, Unavailable };
enum class AuthMode { Legacy, Authenticated };

/// Track-map entry: what the train knows about a balise before the run.
struct BaliseSpec {
  std::uint16_t id = 0;
  double loc = 0.0;
  BaliseKind kind = BaliseKind::Fixed;
};

struct Balise {
  std::uint16_t id = 0;
  double loc = 0.0;           // physical position
  double loc_reported = 0.0;  // position carried in the telegram
  BaliseKind kind = BaliseKind::Fixed;
  UserData user;
  Telegram telegram;
  AttackState attack = AttackState::None;
};

struct Deployment {
  FormatKind format = FormatKind::Long;
  AuthMode mode = AuthMode::Legacy;
  std::vector<Balise> balises;
};

// Attack indices are 0-based here; configuration files use 1-based B_i.
struct TamperAttack {
  std::size_t index = 0;
  double new_loc = 0.0;
};
struct CloneAttack {
  std::size_t src = 0;
  std::size_t dst = 0;
};
struct UnavailableAttack {
  std::size_t index = 0;
};
using AttackSpec = std::variant<TamperAttack, CloneAttack, UnavailableAttack>;

/// Checks ordering (strictly increasing, last balise is the only controlled
/// one and sits at 0) and id uniqueness. Throws std::invalid_argument.
void validate_track_map(const std::vector<BaliseSpec>& specs);

/// Programs every balise honestly. Legacy telegrams use a scrambling-bit
/// value drawn from `rng`; authenticated ones carry the tag.
Deployment build_deployment(const std::vector<BaliseSpec>& specs, FormatKind format, AuthMode mode,
                            const MasterKey& mk, std::uint16_t ver, std::mt19937_64& rng);

/// The attacker holds no keys: tampering rewrites the user data and
/// re-encodes with the legacy key schedule, keeping the old sb.
void apply_attack(Deployment& deployment, const AttackSpec& attack);

enum class ReadStatus { Ok, AuthFailed, DecodeFailed, NotReceived };

struct ReadResult {
  ReadStatus status = ReadStatus::NotReceived;
  std::optional<UserData> user;
};

/// Train-side reader. The antenna picks up three copies of the cyclic
/// telegram starting at a random phase. In authenticated mode the telegram
/// is accepted if it verifies under the keys of any balise in the track map.
class OnboardReader {
 public:
  OnboardReader(AuthMode mode, FormatKind format, const MasterKey& mk, std::uint16_t ver,
                const std::vector<BaliseSpec>& track_map, std::uint64_t seed);

  ReadResult read(const Balise& balise);

 private:
  AuthMode mode_;
  FormatKind format_;
  std::vector<BaliseKeyPair> keys_;
  std::mt19937_64 rng_;
};

}  // namespace balise::sim
