#include "balise/sim/deployment.hpp"

#include <set>
#include <stdexcept>
#include <string>

#include "balise/errors.hpp"

namespace balise::sim {

void validate_track_map(const std::vector<BaliseSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("track map is empty");
  std::set<std::uint16_t> ids;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    if (s.id > kMaxBaliseGroupId) {
      throw std::invalid_argument("balise id " + std::to_string(s.id) + " exceeds 14 bits");
    }
    if (!ids.insert(s.id).second) {
      throw std::invalid_argument("duplicate balise id " + std::to_string(s.id));
    }
    if (i > 0 && !(specs[i - 1].loc < s.loc)) {
      throw std::invalid_argument("balise locations must be strictly increasing");
    }
    const bool last = i + 1 == specs.size();
    if (last != (s.kind == BaliseKind::Controlled)) {
      throw std::invalid_argument("exactly one controlled balise is allowed, and it must be last");
    }
  }
  if (specs.back().loc != 0.0) throw std::invalid_argument("the stop marker must sit at 0");
}

Deployment build_deployment(const std::vector<BaliseSpec>& specs, FormatKind format, AuthMode mode,
                            const MasterKey& mk, std::uint16_t ver, std::mt19937_64& rng) {
  validate_track_map(specs);
  Deployment d;
  d.format = format;
  d.mode = mode;
  std::uniform_int_distribution<std::uint16_t> sb_dist(0, 0x0FFF);
  for (const auto& s : specs) {
    UserData user = UserData::build(format, s.id, metres_to_mm(s.loc));
    Telegram telegram = mode == AuthMode::Authenticated
                            ? encode_authenticated(user, derive_keys(mk, s.id, ver))
                            : encode_legacy(user, sb_dist(rng));
    d.balises.push_back(Balise{s.id, s.loc, s.loc, s.kind, std::move(user), std::move(telegram),
                               AttackState::None});
  }
  return d;
}

namespace {

Balise& balise_at(Deployment& d, std::size_t index) {
  if (index >= d.balises.size()) {
    throw std::out_of_range("attack targets balise index " + std::to_string(index + 1) +
                            " but only " + std::to_string(d.balises.size()) + " exist");
  }
  return d.balises[index];
}

}  // namespace

void apply_attack(Deployment& deployment, const AttackSpec& attack) {
  if (const auto* t = std::get_if<TamperAttack>(&attack)) {
    Balise& b = balise_at(deployment, t->index);
    const std::uint16_t sb = b.telegram.scrambling_bits();
    b.user = b.user.with_reported_location(metres_to_mm(t->new_loc));
    b.telegram = encode_legacy(b.user, sb);
    b.loc_reported = t->new_loc;
    b.attack = AttackState::Tampered;
  } else if (const auto* c = std::get_if<CloneAttack>(&attack)) {
    const Balise src = balise_at(deployment, c->src);
    Balise& dst = balise_at(deployment, c->dst);
    dst.user = src.user;
    dst.telegram = src.telegram;
    dst.loc_reported = src.loc_reported;
    dst.attack = AttackState::Cloned;
  } else {
    balise_at(deployment, std::get<UnavailableAttack>(attack).index).attack =
        AttackState::Unavailable;
  }
}

OnboardReader::OnboardReader(AuthMode mode, FormatKind format, const MasterKey& mk,
                             std::uint16_t ver, const std::vector<BaliseSpec>& track_map,
                             std::uint64_t seed)
    : mode_(mode), format_(format), rng_(seed) {
  if (mode == AuthMode::Authenticated) {
    for (const auto& s : track_map) keys_.push_back(derive_keys(mk, s.id, ver));
  }
}

ReadResult OnboardReader::read(const Balise& balise) {
  if (balise.attack == AttackState::Unavailable) return {};
  const auto& fmt = format_of(format_);
  std::uniform_int_distribution<std::size_t> offset_dist(0, fmt.n - 1);
  const BitString stream = passage_stream(balise.telegram, offset_dist(rng_));

  try {
    if (mode_ == AuthMode::Legacy) {
      return {ReadStatus::Ok, decode_stream_legacy(stream, fmt).user};
    }
    for (const auto& keys : keys_) {
      try {
        return {ReadStatus::Ok, verify_and_decode(stream, keys, fmt)};
      } catch (const AuthFailure&) {
      }
    }
    return {ReadStatus::AuthFailed, std::nullopt};
  } catch (const Error&) {
    return {ReadStatus::DecodeFailed, std::nullopt};
  }
}

}  // namespace balise::sim
