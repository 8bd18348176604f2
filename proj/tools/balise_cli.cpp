// balise: key generation, balise programming/verification and stop-control
// scenario runs.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 timeout.

#include <openssl/rand.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "balise/auth.hpp"
#include "balise/errors.hpp"
#include "balise/io.hpp"
#include "balise/sim/scenario.hpp"

namespace {

using namespace balise;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitTimeout = 3;

struct KeygenArgs {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::uint16_t ver = 0;
};

struct ProgramArgs {
  std::string keystore;
  std::uint16_t id = 0;
  double location_m = 0.0;
  std::string format = "long";
  std::string mode = "authenticated";
  std::uint16_t sb = 0;
  std::string out;
};

struct VerifyArgs {
  std::string keystore;
  std::string telegram;
  std::uint16_t id = 0;
};

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string csv;
  std::string summary;
  std::string batch;
};

int run_keygen(const KeygenArgs& a) {
  io::Keystore ks;
  ks.ver = a.ver;
  if (a.seed) {
    ks.mk = sim::master_key_from_seed(*a.seed);
  } else if (RAND_bytes(ks.mk.bytes.data(), static_cast<int>(ks.mk.bytes.size())) != 1) {
    std::cerr << "error: system random generator unavailable\n";
    return kExitInput;
  }
  io::save_keystore(a.out, ks);
  std::cout << a.out << '\n';
  return kExitOk;
}

int run_program(const ProgramArgs& a) {
  const FormatKind kind = parse_format_kind(a.format);
  const UserData user = UserData::build(kind, a.id, metres_to_mm(a.location_m));
  std::optional<Telegram> telegram;
  if (a.mode == "authenticated") {
    if (a.keystore.empty()) throw ParseError("--keystore is required in authenticated mode");
    const io::Keystore ks = io::load_keystore(a.keystore);
    telegram = encode_authenticated(user, derive_keys(ks.mk, a.id, ks.ver));
  } else if (a.mode == "legacy") {
    if (a.sb > 0x0FFF) throw FormatError("--sb must fit 12 bits");
    telegram = encode_legacy(user, a.sb);
  } else {
    throw ParseError("--mode must be 'authenticated' or 'legacy'");
  }
  io::save_telegram(a.out, *telegram);
  std::cout << a.out << '\n';
  return kExitOk;
}

io::json user_fields(const UserData& user) {
  return {{"id", user.balise_group_id()},
          {"location_mm", user.reported_location_mm()},
          {"location_m", user.reported_location_m()}};
}

int run_verify(const VerifyArgs& a) {
  const Telegram telegram = io::load_telegram(a.telegram);
  const auto& fmt = telegram.format();
  const BitString stream = passage_stream(telegram, 0);
  io::json report{{"format", std::string(fmt.name())}, {"decode", "fail"}, {"auth", "fail"}};
  int code = kExitVerifyFail;

  if (a.keystore.empty()) {
    report["auth"] = "skipped";
    try {
      const DecodeResult r = decode_stream_legacy(stream, fmt);
      report["decode"] = "ok";
      report["fields"] = user_fields(r.user);
      code = kExitOk;
    } catch (const Error& e) {
      report["error"] = e.what();
    }
  } else {
    const io::Keystore ks = io::load_keystore(a.keystore);
    try {
      const UserData user = verify_and_decode(stream, derive_keys(ks.mk, a.id, ks.ver), fmt);
      report["decode"] = "ok";
      report["auth"] = "pass";
      report["fields"] = user_fields(user);
      code = kExitOk;
    } catch (const AuthFailure& e) {
      report["decode"] = "ok";
      report["error"] = e.what();
    } catch (const Error& e) {
      report["error"] = e.what();
    }
  }
  std::cout << report.dump() << '\n';
  return code;
}

struct ScenarioOutput {
  fs::path csv;
  fs::path summary;
};

sim::SimResult simulate_one(const fs::path& config, const ScenarioOutput& out) {
  const sim::ScenarioConfig cfg = io::load_scenario(config);
  sim::SimResult result = sim::run_scenario(cfg);
  if (!out.csv.empty()) io::save_trajectory_csv(out.csv, result);
  if (!out.summary.empty()) io::write_text(out.summary, io::summary_json(result).dump(2) + "\n");
  return result;
}

ScenarioOutput outputs_for(const SimulateArgs& a, const fs::path& dir) {
  ScenarioOutput o;
  if (!dir.empty()) {
    fs::create_directories(dir);
    o.csv = dir / "trajectory.csv";
    o.summary = dir / "summary.json";
  }
  if (!a.csv.empty()) o.csv = a.csv;
  if (!a.summary.empty()) o.summary = a.summary;
  return o;
}

int run_simulate(const SimulateArgs& a) {
  if (a.batch.empty()) {
    if (a.config.empty()) throw ParseError("a scenario config (or --batch DIR) is required");
    const auto result = simulate_one(a.config, outputs_for(a, a.out));
    std::printf("stop_error_m=%.4f\n", result.stop_error);
    return kExitOk;
  }

  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(a.batch)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      configs.push_back(entry.path());
    }
  }
  std::sort(configs.begin(), configs.end());
  const fs::path root = a.out.empty() ? fs::path("results") : fs::path(a.out);

  std::vector<std::future<sim::SimResult>> jobs;
  for (const auto& cfg : configs) {
    ScenarioOutput o;
    const fs::path dir = root / cfg.stem();
    fs::create_directories(dir);
    o.csv = dir / "trajectory.csv";
    o.summary = dir / "summary.json";
    jobs.push_back(std::async(std::launch::async, simulate_one, cfg, o));
  }
  int code = kExitOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      const auto result = jobs[i].get();
      std::printf("%s stop_error_m=%.4f\n", configs[i].stem().c_str(), result.stop_error);
    } catch (const TimeoutError& e) {
      std::fprintf(stderr, "%s: timeout: %s\n", configs[i].stem().c_str(), e.what());
      code = std::max(code, kExitTimeout);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s: error: %s\n", configs[i].stem().c_str(), e.what());
      code = std::max(code, kExitInput);
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balise telegram authentication and train stop-control simulation"};
  app.require_subcommand(1);

  KeygenArgs keygen;
  auto* kg = app.add_subcommand("keygen", "Generate a master-key keystore");
  kg->add_option("--out", keygen.out, "Keystore path")->required();
  kg->add_option("--seed", keygen.seed, "Deterministic seed (testing only)");
  kg->add_option("--ver", keygen.ver, "Key version")->default_val(0);

  ProgramArgs program;
  auto* pg = app.add_subcommand("program", "Encode a balise telegram");
  pg->add_option("--keystore", program.keystore, "Keystore (authenticated mode)");
  pg->add_option("--id", program.id, "14-bit balise group id")->required();
  pg->add_option("--location-m", program.location_m, "Reported location in metres")->required();
  pg->add_option("--format", program.format, "long | short")->default_val("long");
  pg->add_option("--mode", program.mode, "authenticated | legacy")->default_val("authenticated");
  pg->add_option("--sb", program.sb, "Scrambling bits for legacy mode")->default_val(0);
  pg->add_option("--out", program.out, "Telegram output path")->required();

  VerifyArgs verify;
  auto* vf = app.add_subcommand("verify", "Decode and authenticate a telegram file");
  vf->add_option("--keystore", verify.keystore, "Keystore; omit for a plain legacy decode");
  vf->add_option("--telegram", verify.telegram, "Telegram file")->required();
  vf->add_option("--id", verify.id, "Expected balise group id")->default_val(0);

  SimulateArgs simulate;
  auto* sm = app.add_subcommand("simulate", "Run a stop-control scenario");
  sm->add_option("config", simulate.config, "Scenario config JSON");
  sm->add_option("--out", simulate.out, "Output directory");
  sm->add_option("--csv", simulate.csv, "Trajectory CSV path");
  sm->add_option("--summary", simulate.summary, "Summary JSON path");
  sm->add_option("--batch", simulate.batch, "Run every *.json in this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*kg) return run_keygen(keygen);
    if (*pg) return run_program(program);
    if (*vf) return run_verify(verify);
    return run_simulate(simulate);
  } catch (const TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << '\n';
    return kExitTimeout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
