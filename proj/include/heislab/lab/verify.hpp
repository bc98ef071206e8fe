#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heislab::lab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // failure description, empty on success
};

struct VerifyResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const noexcept {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// core, spectral, reduction, incidence, complex
const std::vector<std::string>& verify_suite_names();

/// Runs the oracle equivalences of one suite. Failures are data; only an
/// unknown suite name throws (InvalidSpec).
VerifyResult verify_suite(const std::string& name, std::uint64_t seed = 1);

}  // namespace heislab::lab
