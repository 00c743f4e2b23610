#pragma once

#include <stdexcept>
#include <string>

namespace godbersen {

enum class ErrorKind {
  DegenerateInput,
  NumericalFailure,
  DimensionMismatch,
  ZeroScale,
  OriginNotInterior,
  Unbounded,
  EmptyIntersection,
  EmptySection,
  DegenerateSection,
  IllConditioned,
  BadSpec,
  BadInput,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::EmptySection: return "EmptySection";
    case ErrorKind::DegenerateSection: return "DegenerateSection";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Numerical trouble maps to exit code 3, everything else is bad input (2).
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::NumericalFailure || kind_ == ErrorKind::IllConditioned;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw GeometryError(kind, what);
}

}  // namespace godbersen
