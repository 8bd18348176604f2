#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "balise/auth.hpp"
#include "balise/codec.hpp"
#include "balise/polynomial.hpp"
#include "balise/sim/scenario.hpp"
#include "balise/substitution.hpp"

// JSON file formats shared by the CLI, the Python module and the tests.
// Every loader throws balise::ParseError with the offending path/field.
namespace balise::io {

using nlohmann::json;
namespace fs = std::filesystem;

json read_json(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

// {"format": "long"|"short", "bits": "<n chars of 0/1>"}
json telegram_to_json(const Telegram& telegram);
Telegram telegram_from_json(const json& j);
Telegram load_telegram(const fs::path& path);
void save_telegram(const fs::path& path, const Telegram& telegram);

// JSON array of 1024 integers.
SubstitutionTable load_substitution_table(const fs::path& path);
// JSON array of exponents with nonzero coefficients.
GeneratorPolynomial load_polynomial(const fs::path& path);

// {"mk_hex": "<64 hex chars>", "ver": <int>}
struct Keystore {
  MasterKey mk;
  std::uint16_t ver = 0;
};
json keystore_to_json(const Keystore& ks);
Keystore keystore_from_json(const json& j);
Keystore load_keystore(const fs::path& path);
void save_keystore(const fs::path& path, const Keystore& ks);

// Track map: JSON array of {"id": int, "loc": metres, "kind": "fixed"|"controlled"}.
std::vector<sim::BaliseSpec> track_map_from_json(const json& j);
std::vector<sim::BaliseSpec> load_track_map(const fs::path& path);

// Scenario config; relative "track_map"/"keystore" paths resolve against base_dir.
sim::ScenarioConfig scenario_from_json(const json& j, const fs::path& base_dir = {});
sim::ScenarioConfig load_scenario(const fs::path& path);

inline constexpr const char* kTrajectoryHeader = "t,p,v,alpha_cmd,alpha_actual,mode,event";
void write_trajectory_csv(std::ostream& out, const sim::SimResult& result);
void save_trajectory_csv(const fs::path& path, const sim::SimResult& result);

// {stop_error_m, stop_time_s, mode_switches, auth_failures}
json summary_json(const sim::SimResult& result);

// One conformance vector: {id, ver, user_bits, sb_hex, S_hex}.
json tag_vector(const UserData& user, const BaliseKeyPair& keys);

}  // namespace balise::io
