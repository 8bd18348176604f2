#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>

namespace balise::testing {

/// Minimal property runner: each case gets its own generator seeded from
/// (base_seed, case index), so a failure can be replayed in isolation.
struct PropertyReport {
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

inline PropertyReport check_property(int cases, std::uint64_t base_seed,
                                     const std::function<std::string(std::mt19937_64&)>& prop) {
  PropertyReport report;
  for (int i = 0; i < cases; ++i) {
    std::mt19937_64 rng(base_seed * 1000003u + static_cast<std::uint64_t>(i));
    std::string why;
    try {
      why = prop(rng);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    ++report.cases;
    if (!why.empty()) {
      if (report.failures == 0) {
        std::ostringstream os;
        os << "case " << i << " (seed " << base_seed << "): " << why;
        report.first_failure = os.str();
      }
      ++report.failures;
    }
  }
  return report;
}

}  // namespace balise::testing
