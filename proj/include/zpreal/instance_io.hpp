#pragma once

#include <string>

#include "json.hpp"

#include "zpreal/report.hpp"
#include "zpreal/zero_pole.hpp"

namespace zpreal {

inline constexpr int kFormatVersion = 1;

struct InstanceFile {
  ZeroPoleData data;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Parses and validates an instance. An optional "R_inf" entry is factored
/// out (R = R_inf * R~) and kept under metadata["discarded_R_inf"].
/// Throws ParseError naming the offending field.
InstanceFile parse_instance(const std::string& text, double sep_min = default_tolerances().sep_min);
InstanceFile load_instance(const std::string& path, double sep_min = default_tolerances().sep_min);

/// Complex numbers as [re, im]; doubles in shortest round-trip form.
std::string write_instance(const InstanceFile& f);
void save_instance(const InstanceFile& f, const std::string& path);

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json report_to_json(const Report& r);

}  // namespace zpreal
