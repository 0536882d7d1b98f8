#pragma once

#include <map>
#include <string>
#include <vector>

namespace zpreal {

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Named residuals with their tolerances, plus free-form numbers such as
/// condition estimates.
struct Report {
  std::vector<Check> checks;
  std::map<std::string, double> values;
  std::map<std::string, std::string> notes;

  void add(const std::string& name, double residual, double tol);
  /// Pass iff every check passed (an empty report passes).
  bool passed() const;
  const Check* find(const std::string& name) const;
  /// Appends all checks from `other`, prefixing their names.
  void merge(const Report& other, const std::string& prefix = "");
  std::vector<std::string> failed() const;
};

/// Human-readable text, one check per line.
std::string format_text(const Report& r);

}  // namespace zpreal
