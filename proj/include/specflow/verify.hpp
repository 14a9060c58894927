#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace specflow {
namespace verify {

struct CheckResult {
  std::string group;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyConfig {
  std::string group;  // empty = all groups
  std::uint64_t seed = 1;
  int corpus = 25;  // seeds per randomized check
  bool inject_hermiticity_violation = false;  // negative control fixture
};

/// Runs the invariant suite; groups: hermitian, resolvent, projection,
/// specflow, crossing, gallery.
std::vector<CheckResult> run(const VerifyConfig& cfg);

}  // namespace verify
}  // namespace specflow
