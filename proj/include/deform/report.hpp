#ifndef DEFORM_REPORT_HPP
#define DEFORM_REPORT_HPP

#include <cmath>
#include <string>
#include <vector>

namespace deform {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

/// One named verification item: lhs compared against rhs at a tolerance.
struct Check {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;

  /// lhs <= rhs + tolerance
  static Check leq(std::string name, double lhs, double rhs, double tolerance = 0.0) {
    Check c{std::move(name), CheckStatus::fail, lhs, rhs, tolerance};
    if (lhs <= rhs + tolerance) c.status = CheckStatus::pass;
    return c;
  }

  /// lhs >= rhs - tolerance
  static Check geq(std::string name, double lhs, double rhs, double tolerance = 0.0) {
    Check c{std::move(name), CheckStatus::fail, lhs, rhs, tolerance};
    if (lhs >= rhs - tolerance) c.status = CheckStatus::pass;
    return c;
  }

  /// |lhs - rhs| <= tolerance
  static Check close(std::string name, double lhs, double rhs, double tolerance) {
    Check c{std::move(name), CheckStatus::fail, lhs, rhs, tolerance};
    if (std::abs(lhs - rhs) <= tolerance) c.status = CheckStatus::pass;
    return c;
  }

  static Check skipped_check(std::string name, double lhs = 0.0, double rhs = 0.0) {
    return Check{std::move(name), CheckStatus::skipped, lhs, rhs, 0.0};
  }

  bool failed() const { return status == CheckStatus::fail; }
};

inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.failed()) return false;
  return true;
}

inline int count_failures(const std::vector<Check>& checks) {
  int n = 0;
  for (const auto& c : checks) n += c.failed() ? 1 : 0;
  return n;
}

} // namespace deform

#endif // DEFORM_REPORT_HPP
