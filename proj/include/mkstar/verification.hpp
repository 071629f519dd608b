#pragma once

#include <string>
#include <vector>

namespace mkstar {

// One named pass/fail assertion with the measured quantity and the
// threshold it was compared against.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// Failures are recorded here rather than thrown.
struct VerificationRecord {
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool passed() const;
  const Check* first_failure() const;

  void add(std::string name, bool passed, double measured = 0.0, double threshold = 0.0,
           std::string detail = {});
  void warn(std::string message) { warnings.push_back(std::move(message)); }
  // Appends `other`, prefixing check names with `prefix` + "/".
  void merge(const VerificationRecord& other, const std::string& prefix);
};

}  // namespace mkstar
