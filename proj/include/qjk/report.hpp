#pragma once

#include <string>
#include <vector>

namespace qjk {

// Outcome of one verification: the largest deviation seen against the
// threshold produced by the tolerance policy.
struct CheckReport {
  std::string name;
  int n = 0;
  double max_deviation = 0.0;
  double threshold = 0.0;
  double magnitude = 0.0;  // scale the threshold was computed against
  bool pass = false;
  std::string detail;
};

inline bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace qjk
