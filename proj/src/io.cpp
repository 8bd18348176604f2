#include "balise/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "balise/errors.hpp"

namespace balise::io {

namespace {

std::string hex_of(std::uint64_t value, int digits) {
  std::ostringstream os;
  os << std::hex << std::setw(digits) << std::setfill('0') << value;
  return os.str();
}

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& what) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ParseError(what + ": unknown field '" + key + "'");
  }
}

template <typename T>
T field(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ParseError(what + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(what + ": field '" + key + "': " + e.what());
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, const std::string& what) {
  return j.contains(key) ? field<T>(j, key, what) : fallback;
}

FormatKind format_field(const json& j, const char* key, FormatKind fallback,
                        const std::string& what) {
  if (!j.contains(key)) return fallback;
  try {
    return parse_format_kind(field<std::string>(j, key, what));
  } catch (const FormatError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

sim::BaliseKind parse_kind(const std::string& s, const std::string& what) {
  if (s == "fixed") return sim::BaliseKind::Fixed;
  if (s == "controlled") return sim::BaliseKind::Controlled;
  throw ParseError(what + ": kind must be 'fixed' or 'controlled', got '" + s + "'");
}

std::size_t balise_index(const json& j, const char* key, const std::string& what) {
  const auto one_based = field<long long>(j, key, what);
  if (one_based < 1) throw ParseError(what + ": balise numbers start at 1");
  return static_cast<std::size_t>(one_based - 1);
}

sim::AttackSpec parse_attack(const json& j, const std::string& what) {
  require_object(j, what);
  const auto type = field<std::string>(j, "type", what);
  if (type == "tamper") {
    reject_unknown_keys(j, {"type", "balise", "new_loc"}, what);
    return sim::TamperAttack{balise_index(j, "balise", what), field<double>(j, "new_loc", what)};
  }
  if (type == "clone") {
    reject_unknown_keys(j, {"type", "src", "dst"}, what);
    return sim::CloneAttack{balise_index(j, "src", what), balise_index(j, "dst", what)};
  }
  if (type == "unavailable") {
    reject_unknown_keys(j, {"type", "balise"}, what);
    return sim::UnavailableAttack{balise_index(j, "balise", what)};
  }
  throw ParseError(what + ": unknown attack type '" + type + "'");
}

sim::TrainParams parse_train(const json& j, const std::string& what) {
  require_object(j, what);
  reject_unknown_keys(j, {"p0", "v0", "alpha_max", "gamma", "Td", "Tp", "dt"}, what);
  sim::TrainParams t;
  t.p0 = field_or(j, "p0", t.p0, what);
  t.v0 = field_or(j, "v0", t.v0, what);
  t.alpha_max = field_or(j, "alpha_max", t.alpha_max, what);
  t.gamma = field_or(j, "gamma", t.gamma, what);
  t.Td = field_or(j, "Td", t.Td, what);
  t.Tp = field_or(j, "Tp", t.Tp, what);
  t.dt = field_or(j, "dt", t.dt, what);
  return t;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

json telegram_to_json(const Telegram& telegram) {
  return json{{"format", std::string(telegram.format().name())},
              {"bits", telegram.bits().to_string()}};
}

Telegram telegram_from_json(const json& j) {
  const std::string what = "telegram";
  require_object(j, what);
  reject_unknown_keys(j, {"format", "bits"}, what);
  if (!j.contains("format")) throw ParseError(what + ": missing field 'format'");
  const FormatKind kind = format_field(j, "format", FormatKind::Long, what);
  const auto bits = BitString::from_string(field<std::string>(j, "bits", what));
  try {
    return Telegram(kind, bits);
  } catch (const FormatError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

Telegram load_telegram(const fs::path& path) { return telegram_from_json(read_json(path)); }

void save_telegram(const fs::path& path, const Telegram& telegram) {
  write_text(path, telegram_to_json(telegram).dump(2) + "\n");
}

SubstitutionTable load_substitution_table(const fs::path& path) {
  const json j = read_json(path);
  try {
    const auto words = j.get<std::vector<std::uint16_t>>();
    return SubstitutionTable::from_words(words);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

GeneratorPolynomial load_polynomial(const fs::path& path) {
  const json j = read_json(path);
  try {
    return GeneratorPolynomial::from_exponents(j.get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json keystore_to_json(const Keystore& ks) {
  return json{{"mk_hex", ks.mk.to_hex()}, {"ver", ks.ver}};
}

Keystore keystore_from_json(const json& j) {
  const std::string what = "keystore";
  require_object(j, what);
  reject_unknown_keys(j, {"mk_hex", "ver"}, what);
  Keystore ks;
  ks.mk = MasterKey::from_hex(field<std::string>(j, "mk_hex", what));
  const auto ver = field_or<long long>(j, "ver", 0, what);
  if (ver < 0 || ver > 0xFFFF) throw ParseError(what + ": ver must fit 16 bits");
  ks.ver = static_cast<std::uint16_t>(ver);
  return ks;
}

Keystore load_keystore(const fs::path& path) { return keystore_from_json(read_json(path)); }

void save_keystore(const fs::path& path, const Keystore& ks) {
  write_text(path, keystore_to_json(ks).dump(2) + "\n");
}

std::vector<sim::BaliseSpec> track_map_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("track map: expected a JSON array");
  std::vector<sim::BaliseSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string what = "track map entry " + std::to_string(i + 1);
    const json& e = j[i];
    require_object(e, what);
    reject_unknown_keys(e, {"id", "loc", "kind"}, what);
    const auto id = field<long long>(e, "id", what);
    if (id < 0 || id > kMaxBaliseGroupId) throw ParseError(what + ": id must fit 14 bits");
    out.push_back(sim::BaliseSpec{static_cast<std::uint16_t>(id), field<double>(e, "loc", what),
                                  parse_kind(field_or<std::string>(e, "kind", "fixed", what),
                                             what)});
  }
  try {
    sim::validate_track_map(out);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("track map: ") + e.what());
  }
  return out;
}

std::vector<sim::BaliseSpec> load_track_map(const fs::path& path) {
  return track_map_from_json(read_json(path));
}

sim::ScenarioConfig scenario_from_json(const json& j, const fs::path& base_dir) {
  const std::string what = "scenario";
  require_object(j, what);
  reject_unknown_keys(j,
                      {"name", "train", "balises", "track_map", "attacks", "controller",
                       "dbz_strategy", "p_est0", "delta0", "growth_k", "eta0", "v_con",
                       "auth_mode", "format", "seed", "max_time_s", "keystore"},
                      what);
  sim::ScenarioConfig c;
  c.name = field_or<std::string>(j, "name", c.name, what);
  if (j.contains("train")) c.train = parse_train(j["train"], what + ".train");

  if (j.contains("balises") && j.contains("track_map")) {
    throw ParseError(what + ": give either 'balises' or 'track_map', not both");
  }
  if (j.contains("balises")) c.balises = track_map_from_json(j["balises"]);
  if (j.contains("track_map")) {
    c.balises = load_track_map(resolve(base_dir, field<std::string>(j, "track_map", what)));
  }

  if (j.contains("attacks")) {
    if (!j["attacks"].is_array()) throw ParseError(what + ": 'attacks' must be an array");
    for (std::size_t i = 0; i < j["attacks"].size(); ++i) {
      c.attacks.push_back(parse_attack(j["attacks"][i], what + ".attacks[" + std::to_string(i) + "]"));
    }
  }

  const auto controller = field_or<std::string>(j, "controller", "hoa", what);
  if (controller == "hoa") {
    c.controller = sim::ControllerKind::Hoa;
  } else if (controller == "resilient") {
    c.controller = sim::ControllerKind::Resilient;
  } else {
    throw ParseError(what + ": controller must be 'hoa' or 'resilient'");
  }

  const auto dbz = field_or<std::string>(j, "dbz_strategy", "full_brake", what);
  if (dbz == "full_brake") {
    c.dbz = sim::DbzStrategy::FullBrake;
  } else if (dbz == "ignore") {
    c.dbz = sim::DbzStrategy::Ignore;
  } else {
    throw ParseError(what + ": dbz_strategy must be 'full_brake' or 'ignore'");
  }

  const auto auth = field_or<std::string>(j, "auth_mode", "legacy", what);
  if (auth == "legacy") {
    c.auth_mode = sim::AuthMode::Legacy;
  } else if (auth == "authenticated") {
    c.auth_mode = sim::AuthMode::Authenticated;
  } else {
    throw ParseError(what + ": auth_mode must be 'legacy' or 'authenticated'");
  }

  if (j.contains("p_est0")) c.p_est0 = field<double>(j, "p_est0", what);
  c.delta0 = field_or(j, "delta0", c.delta0, what);
  c.growth_k = field_or(j, "growth_k", c.growth_k, what);
  c.eta0 = field_or(j, "eta0", c.eta0, what);
  c.v_con = field_or(j, "v_con", c.v_con, what);
  c.format = format_field(j, "format", c.format, what);
  c.seed = field_or<std::uint64_t>(j, "seed", c.seed, what);
  c.max_time_s = field_or(j, "max_time_s", c.max_time_s, what);
  if (j.contains("keystore")) {
    const Keystore ks = load_keystore(resolve(base_dir, field<std::string>(j, "keystore", what)));
    c.master_key = ks.mk;
    c.key_version = ks.ver;
  }
  return c;
}

sim::ScenarioConfig load_scenario(const fs::path& path) {
  return scenario_from_json(read_json(path), path.parent_path());
}

void write_trajectory_csv(std::ostream& out, const sim::SimResult& result) {
  out << kTrajectoryHeader << '\n';
  char buf[160];
  for (const auto& r : result.trajectory) {
    std::snprintf(buf, sizeof buf, "%.4f,%.6f,%.6f,%.6f,%.6f,", r.t, r.p, r.v, r.alpha_cmd,
                  r.alpha_actual);
    out << buf << r.mode << ',' << r.event << '\n';
  }
}

void save_trajectory_csv(const fs::path& path, const sim::SimResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trajectory_csv(out, result);
}

json summary_json(const sim::SimResult& result) {
  return json{{"stop_error_m", result.stop_error},
              {"stop_time_s", result.stop_time},
              {"mode_switches", result.mode_switches},
              {"auth_failures", result.auth_failures}};
}

json tag_vector(const UserData& user, const BaliseKeyPair& keys) {
  const AuthTag tag = generate_tag(user, keys);
  return json{{"id", keys.id},
              {"ver", keys.ver},
              {"user_bits", user.bits().to_string()},
              {"sb_hex", hex_of(tag.sb, 3)},
              {"S_hex", hex_of(tag.key.value, 8)}};
}

}  // namespace balise::io
