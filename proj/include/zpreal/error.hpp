#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace zpreal {

enum class ErrorKind {
  DimensionMismatch,
  Singular,
  Singular11,
  SingularSchur,
  Collision,
  PoleHit,
  DegenerateDerivative,
  NotRankOne,
  ZeroGaugeEntry,
  SpectraOverlap,
  InvalidData,
  InconsistentData,
  SingularCoupling,
  DomainViolation,
  GenerationFailed,
  ConfigError,
  OnContour,
  CardinalityMismatch,
  NoFactorization,
  VerificationFailed,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. `index` carries the offending pivot,
/// pole or column when the failing operation can name one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace zpreal
