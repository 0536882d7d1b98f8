#include "zpreal/report.hpp"

#include <cmath>
#include <cstdio>

namespace zpreal {

void Report::add(const std::string& name, double residual, double tol) {
  checks.push_back({name, residual, tol, std::isfinite(residual) && residual <= tol});
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (const auto& [k, v] : other.values) values[prefix + k] = v;
  for (const auto& [k, v] : other.notes) notes[prefix + k] = v;
}

std::vector<std::string> Report::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

std::string format_text(const Report& r) {
  std::string out;
  char buf[256];
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, "%-4s %-40s %.3e (tol %.1e)\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                  c.residual, c.tol);
    out += buf;
  }
  for (const auto& [k, v] : r.values) {
    std::snprintf(buf, sizeof buf, "     %-40s %.6e\n", k.c_str(), v);
    out += buf;
  }
  for (const auto& [k, v] : r.notes) out += "     " + k + ": " + v + "\n";
  std::snprintf(buf, sizeof buf, "%s (%zu checks, %zu failed)\n", r.passed() ? "PASS" : "FAIL", r.checks.size(),
                r.failed().size());
  out += buf;
  return out;
}

}  // namespace zpreal
