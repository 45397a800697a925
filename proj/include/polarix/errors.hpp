#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polarix {

enum class ErrorKind {
  ParseError,
  Overflow,
  UnboundedPolytope,
  InvalidModel,
  UnknownModel,
  NotPrime,
  EmptyLinearSeries,
  NotBig,
  ToleranceNotReached,
  ImproperIntersection,
  InterpolationUnstable,
  NotProjectivelyNormal,
  ZeroElement,
  PointOnDivisor,
  InvalidPlace,
  NotFano,
  ConfigError,
};

std::string_view error_kind_name(ErrorKind kind);

/// All domain failures are reported through this type. The message is prefixed
/// with the owning module, e.g. "toric: UnknownModel: no catalog entry 'P5'".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string_view module, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polarix
