// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "balise/auth.hpp"
#include "balise/codec.hpp"
#include "balise/errors.hpp"
#include "balise/io.hpp"
#include "balise/sim/scenario.hpp"
#include "test_support.hpp"

using namespace balise;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double stop_error(const std::string& scenario) {
  const auto cfg = io::load_scenario(std::string(BALISE_SCENARIOS) + "/" + scenario + ".json");
  return sim::run_scenario(cfg).stop_error;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

void criterion_1() {
  std::mt19937_64 rng(101);
  const auto start = Clock::now();
  int failures = 0;
  int total = 0;
  for (auto kind : {FormatKind::Long, FormatKind::Short}) {
    const auto& f = format_of(kind);
    for (int i = 0; i < 1000; ++i, ++total) {
      const auto user = testing::random_user(rng, kind);
      const auto sb = static_cast<std::uint16_t>(rng() & 0xFFF);
      const auto t = encode_legacy(user, sb);
      try {
        const auto r = decode_stream_legacy(passage_stream(t, 0), f);
        if (!(r.user == user) || r.sb != sb) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  const double secs = seconds_since(start);
  report(1, "Codec round trip", failures == 0 && secs < 10.0,
         fmt("%d/%d payloads (1000 per format) failed, %.2f s (limit 10 s)", failures, total,
             secs));
}

void criterion_2() {
  std::mt19937_64 rng(202);
  int failures = 0;
  int total = 0;
  for (auto kind : {FormatKind::Long, FormatKind::Short}) {
    const auto& f = format_of(kind);
    for (int p = 0; p < 20; ++p) {
      const auto user = testing::random_user(rng, kind);
      const auto sb = static_cast<std::uint16_t>(rng() & 0xFFF);
      const auto t = encode_legacy(user, sb);
      for (int k = 0; k < 50; ++k, ++total) {
        try {
          const auto r = decode_stream_legacy(passage_stream(t, rng() % f.n), f);
          if (!(r.user == user) || r.sb != sb) ++failures;
        } catch (const Error&) {
          ++failures;
        }
      }
    }
  }
  report(2, "Rotation transparency", failures == 0,
         fmt("%d/%d rotated streams failed (20 payloads x 50 offsets per format)", failures,
             total));
}

void criterion_3() {
  std::mt19937_64 rng(303);
  const auto& g = GeneratorPolynomial::surrogate();
  const auto exps = g.exponents();
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const auto& f = format_of(i % 2 ? FormatKind::Short : FormatKind::Long);
    const auto prefix = testing::random_bits(rng, f.prefix_bits());
    if (!(compute_check_bits(prefix, g) == testing::naive_check_bits(prefix, exps))) ++mismatches;
  }
  report(3, "Check-bit oracle equivalence", mismatches == 0,
         fmt("%d/500 prefixes differ from naive long division", mismatches));
}

void criterion_4() {
  std::mt19937_64 rng(404);
  const auto mk = MasterKey::from_hex(testing::kTestMasterKeyHex);
  const auto keys = derive_keys(mk, 77, 0);
  const auto& f = kLongFormat;

  // Forgery: attacker-chosen payload, uniformly random sb, arbitrary S.
  constexpr int kForgeries = 100000;
  int accepted = 0;
  for (int i = 0; i < kForgeries; ++i) {
    const auto user = UserData::build(FormatKind::Long, 77, -static_cast<int>(rng() % 200000));
    const auto sb = static_cast<std::uint16_t>(rng() & 0xFFF);
    const auto t = encode(user, sb, ScramblingKey{static_cast<std::uint32_t>(rng())});
    try {
      verify_and_decode(passage_stream(t, 0, 2), keys, f);
      ++accepted;
    } catch (const AuthFailure&) {
    }
  }
  const double rate = static_cast<double>(accepted) / kForgeries;
  const bool forgery_ok = rate >= std::ldexp(1.0, -13) && rate <= std::ldexp(1.0, -11);

  // Tampering: flip one user bit, keep the honest sb and S.
  constexpr int kTampers = 10000;
  int detected = 0;
  for (int i = 0; i < kTampers; ++i) {
    const auto user = testing::random_user(rng, FormatKind::Long);
    const auto tag = generate_tag(user, keys);
    BitString bits = user.bits();
    bits.flip(rng() % bits.size());
    const auto t = encode(UserData(FormatKind::Long, bits), tag.sb, tag.key);
    try {
      verify_and_decode(passage_stream(t, 0, 2), keys, f);
    } catch (const AuthFailure&) {
      ++detected;
    }
  }
  const double detect_rate = static_cast<double>(detected) / kTampers;
  report(4, "Authentication soundness", forgery_ok && detect_rate >= 0.999,
         fmt("forgery acceptance %d/%d = %.3g (window [%.3g, %.3g]); single-bit tamper "
             "detection %.4f (>= 0.999)",
             accepted, kForgeries, rate, std::ldexp(1.0, -13), std::ldexp(1.0, -11),
             detect_rate));
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  return v[static_cast<std::size_t>(q * static_cast<double>(v.size() - 1))];
}

void criterion_5() {
  std::mt19937_64 rng(505);
  const auto mk = MasterKey::from_hex(testing::kTestMasterKeyHex);
  const auto keys = derive_keys(mk, 12, 0);
  constexpr int kCalls = 2000;
  std::vector<double> gen_ms;
  std::vector<double> ver_ms;
  for (int i = 0; i < kCalls; ++i) {
    const auto user = testing::random_user(rng, FormatKind::Long);
    auto t0 = Clock::now();
    const auto tag = generate_tag(user, keys);
    gen_ms.push_back(seconds_since(t0) * 1e3);

    const auto stream = passage_stream(encode(user, tag.sb, tag.key), rng() % kLongFormat.n);
    t0 = Clock::now();
    const auto back = verify_and_decode(stream, keys, kLongFormat);
    ver_ms.push_back(seconds_since(t0) * 1e3);
    if (!(back == user)) ver_ms.back() = 1e9;
  }
  const auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const double gen_p99 = percentile(gen_ms, 0.99);
  const double ver_p99 = percentile(ver_ms, 0.99);
  report(5, "Latency", mean(gen_ms) < 1.0 && mean(ver_ms) < 1.0 && gen_p99 < 1.0 && ver_p99 < 1.0,
         fmt("tag generation mean %.4f ms / p99 %.4f ms; verification (incl. alignment) mean "
             "%.4f ms / p99 %.4f ms (limit 1 ms)",
             mean(gen_ms), gen_p99, mean(ver_ms), ver_p99));
}

void criterion_6() {
  const double e = stop_error("no_attack");
  report(6, "No-attack stop", std::abs(e) <= 0.3,
         fmt("stop error %+.3f m (|e| <= 0.3 m)", e));
}

void criterion_7() {
  const double e = stop_error("tamper_b1_legacy");
  report(7, "Tampering impact (legacy)", within(e, -43.9, 1.0),
         fmt("stop error %+.3f m (target -43.9 +/- 1.0 m)", e));
}

void criterion_8() {
  const double full = stop_error("clone_b1b2_legacy_fullbrake");
  const double ignore = stop_error("clone_b1b2_legacy_ignore");
  const bool ok = within(full, -21.8, 1.5) && within(ignore, -4.22, 0.5) &&
                  std::abs(ignore) < std::abs(full);
  report(8, "Cloning impact (legacy)", ok,
         fmt("FullBrake %+.3f m (target -21.8 +/- 1.5), Ignore %+.3f m (target -4.22 +/- 0.5), "
             "|Ignore| < |FullBrake|: %s",
             full, ignore, std::abs(ignore) < std::abs(full) ? "yes" : "no"));
}

void criterion_9() {
  const double t120 = stop_error("tamper_b1_resilient_pest120");
  const double t80 = stop_error("tamper_b1_resilient_pest80");
  const double clone = stop_error("clone_b1b2_resilient");
  const bool hard = std::abs(t120) <= 0.3 && std::abs(t80) <= 0.3 && std::abs(clone) <= 0.3;
  const bool soft = within(std::abs(t120), 0.15, 0.1) && within(std::abs(clone), 0.15, 0.1) &&
                    within(std::abs(t80), 0.23, 0.1);
  report(9, "Countermeasure hard guarantee", hard,
         fmt("tamper p_est0=-120: %+.3f m, tamper p_est0=-80: %+.3f m, clone: %+.3f m "
             "(|e| <= 0.3 m); soft targets 0.15/0.23 +/- 0.1 m %s",
             t120, t80, clone, soft ? "met" : "missed"));
}

void criterion_10() {
  const double e = stop_error("tamper_b1_authenticated_hoa");
  report(10, "Availability equivalence", within(e, 1.3, 0.5),
         fmt("overshoot %+.3f m (target +1.3 +/- 0.5 m)", e));
}

void criterion_11() {
  const auto start = Clock::now();
  const std::string cmd = std::string(BALISE_PROPERTY_TESTS) + " --no-intro=true > /dev/null";
  const int status = std::system(cmd.c_str());
  const double secs = seconds_since(start);
  const bool ok = WIFEXITED(status) && WEXITSTATUS(status) == 0 && secs < 120.0;
  report(11, "Property suites", ok,
         fmt("property_tests exit %d, >= 1000 cases per invariant, %.1f s (limit 120 s)",
             WIFEXITED(status) ? WEXITSTATUS(status) : -1, secs));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
      criterion_7, criterion_8, criterion_9, criterion_10, criterion_11};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - g_failures,
              criteria.size());
  return g_failures == 0 ? 0 : 1;
}
