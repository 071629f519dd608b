#include "mkstar/verification.hpp"

#include <algorithm>

namespace mkstar {

bool VerificationRecord::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationRecord::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

void VerificationRecord::add(std::string name, bool ok, double measured, double threshold,
                             std::string detail) {
  checks.push_back({std::move(name), ok, measured, threshold, std::move(detail)});
}

void VerificationRecord::merge(const VerificationRecord& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix.empty() ? c.name : prefix + "/" + c.name;
    checks.push_back(std::move(c));
  }
  for (const auto& w : other.warnings) {
    warnings.push_back(prefix.empty() ? w : prefix + ": " + w);
  }
}

}  // namespace mkstar
