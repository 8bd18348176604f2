#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "balise/auth.hpp"
#include "balise/codec.hpp"
#include "balise/errors.hpp"
#include "balise/io.hpp"
#include "balise/sim/scenario.hpp"

namespace py = pybind11;
using namespace balise;

namespace {

MasterKey key_from(const std::string& mk_hex) { return MasterKey::from_hex(mk_hex); }

UserData user_from(const std::string& format, std::uint16_t id, double location_m) {
  return UserData::build(parse_format_kind(format), id, metres_to_mm(location_m));
}

py::dict decoded(const UserData& user, std::uint16_t sb) {
  py::dict d;
  d["id"] = user.balise_group_id();
  d["location_m"] = user.reported_location_m();
  d["sb"] = sb;
  d["user_bits"] = user.bits().to_string();
  return d;
}

py::bytes as_bytes(const Key128& k) {
  return py::bytes(reinterpret_cast<const char*>(k.data()), k.size());
}

py::dict result_dict(const sim::SimResult& r, bool with_trajectory) {
  py::dict d;
  d["stop_error_m"] = r.stop_error;
  d["stop_time_s"] = r.stop_time;
  d["mode_switches"] = r.mode_switches;
  d["auth_failures"] = r.auth_failures;
  d["balise_missing_events"] = r.balise_missing_events;
  d["eta_history"] = r.eta_history;
  if (with_trajectory) {
    py::list rows;
    for (const auto& row : r.trajectory) {
      rows.append(py::make_tuple(row.t, row.p, row.v, row.alpha_cmd, row.alpha_actual, row.mode,
                                 row.event));
    }
    d["trajectory"] = rows;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Balise telegram codec, authentication and stop-control simulation";

  auto base = py::register_exception<Error>(m, "BaliseError");
  py::register_exception<AuthFailure>(m, "AuthFailure", base);
  py::register_exception<NoTelegramFound>(m, "NoTelegramFound", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<TimeoutError>(m, "SimulationTimeout", base);

  m.def(
      "encode_legacy",
      [](const std::string& format, std::uint16_t id, double location_m, std::uint16_t sb) {
        return encode_legacy(user_from(format, id, location_m), sb).bits().to_string();
      },
      py::arg("format"), py::arg("id"), py::arg("location_m"), py::arg("sb"),
      "Legacy telegram as a '0'/'1' string.");

  m.def(
      "encode_authenticated",
      [](const std::string& format, std::uint16_t id, double location_m,
         const std::string& mk_hex, std::uint16_t ver) {
        const auto keys = derive_keys(key_from(mk_hex), id, ver);
        return encode_authenticated(user_from(format, id, location_m), keys).bits().to_string();
      },
      py::arg("format"), py::arg("id"), py::arg("location_m"), py::arg("mk_hex"),
      py::arg("ver") = 0);

  m.def(
      "decode",
      [](const std::string& bits, const std::string& format, std::size_t offset) {
        const Telegram t(parse_format_kind(format), BitString::from_string(bits));
        const auto r = decode_stream_legacy(passage_stream(t, offset), t.format());
        py::dict d = decoded(r.user, r.sb);
        d["shift"] = r.shift;
        d["inverted"] = r.inverted;
        return d;
      },
      py::arg("bits"), py::arg("format"), py::arg("offset") = 0,
      "Decode three rotated copies of a legacy telegram.");

  m.def(
      "verify",
      [](const std::string& bits, const std::string& format, const std::string& mk_hex,
         std::uint16_t id, std::uint16_t ver, std::size_t offset) {
        const Telegram t(parse_format_kind(format), BitString::from_string(bits));
        const auto keys = derive_keys(key_from(mk_hex), id, ver);
        const UserData user = verify_and_decode(passage_stream(t, offset), keys, t.format());
        return decoded(user, t.scrambling_bits());
      },
      py::arg("bits"), py::arg("format"), py::arg("mk_hex"), py::arg("id"), py::arg("ver") = 0,
      py::arg("offset") = 0, "Raises AuthFailure if the tag does not match.");

  m.def(
      "derive_keys",
      [](const std::string& mk_hex, std::uint16_t id, std::uint16_t ver) {
        const auto k = derive_keys(key_from(mk_hex), id, ver);
        return py::make_tuple(as_bytes(k.k0), as_bytes(k.k1));
      },
      py::arg("mk_hex"), py::arg("id"), py::arg("ver") = 0);

  m.def(
      "generate_tag",
      [](const std::string& user_bits, const std::string& format, const std::string& mk_hex,
         std::uint16_t id, std::uint16_t ver) {
        const UserData user(parse_format_kind(format), BitString::from_string(user_bits));
        const AuthTag tag = generate_tag(user, derive_keys(key_from(mk_hex), id, ver));
        return py::make_tuple(tag.sb, tag.key.value);
      },
      py::arg("user_bits"), py::arg("format"), py::arg("mk_hex"), py::arg("id"),
      py::arg("ver") = 0, "Returns (sb, S).");

  m.def(
      "compute_check_bits",
      [](const std::string& prefix) {
        return compute_check_bits(BitString::from_string(prefix), GeneratorPolynomial::surrogate())
            .to_string();
      },
      py::arg("prefix"));

  m.def(
      "run_scenario",
      [](const std::string& config_json, bool trajectory) {
        io::json j;
        try {
          j = io::json::parse(config_json);
        } catch (const io::json::parse_error& e) {
          throw ParseError(e.what());
        }
        const auto cfg = io::scenario_from_json(j);
        sim::SimResult r;
        {
          py::gil_scoped_release release;
          r = sim::run_scenario(cfg);
        }
        return result_dict(r, trajectory);
      },
      py::arg("config_json"), py::arg("trajectory") = false,
      "Run a scenario given as a JSON string.");

  m.def(
      "run_scenario_file",
      [](const std::string& path, bool trajectory) {
        const auto cfg = io::load_scenario(path);
        sim::SimResult r;
        {
          py::gil_scoped_release release;
          r = sim::run_scenario(cfg);
        }
        return result_dict(r, trajectory);
      },
      py::arg("path"), py::arg("trajectory") = false);
}
