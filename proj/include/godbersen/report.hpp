#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "godbersen/error.hpp"

namespace godbersen {

enum class StatementId {
  THM1,
  LEM2,
  COR3,
  COR4,
  RS_DIFF,
  RS_SECPROJ,
  GODBERSEN_J,
  ALEXANDROV_J,
  UNBALANCED,
  STRANGE,
  MILMAN_PAJOR,
  REMARK_EL,
};

inline constexpr std::array<StatementId, 12> all_statements{
    StatementId::THM1,        StatementId::LEM2,         StatementId::COR3,       StatementId::COR4,
    StatementId::RS_DIFF,     StatementId::RS_SECPROJ,   StatementId::GODBERSEN_J, StatementId::ALEXANDROV_J,
    StatementId::UNBALANCED,  StatementId::STRANGE,      StatementId::MILMAN_PAJOR, StatementId::REMARK_EL,
};

inline const char* to_string(StatementId s) {
  switch (s) {
    case StatementId::THM1: return "THM1";
    case StatementId::LEM2: return "LEM2";
    case StatementId::COR3: return "COR3";
    case StatementId::COR4: return "COR4";
    case StatementId::RS_DIFF: return "RS_DIFF";
    case StatementId::RS_SECPROJ: return "RS_SECPROJ";
    case StatementId::GODBERSEN_J: return "GODBERSEN_J";
    case StatementId::ALEXANDROV_J: return "ALEXANDROV_J";
    case StatementId::UNBALANCED: return "UNBALANCED";
    case StatementId::STRANGE: return "STRANGE";
    case StatementId::MILMAN_PAJOR: return "MILMAN_PAJOR";
    case StatementId::REMARK_EL: return "REMARK_EL";
  }
  return "?";
}

inline StatementId statement_from_string(const std::string& s) {
  for (StatementId id : all_statements)
    if (s == to_string(id)) return id;
  fail(ErrorKind::BadSpec, "unknown statement '" + s + "'");
}

/// Scale factor of the hybrid verification tolerance 1e-7 * max(1, rhs).
inline constexpr double tol_verify_rel = 1e-7;

inline double tol_verify(double rhs, double rel = tol_verify_rel) { return rel * std::max(1.0, rhs); }

/// One evaluated inequality, always oriented as lhs <= rhs.
struct InequalityReport {
  StatementId statement = StatementId::THM1;
  std::string body;  // label, "K|L" for pairs
  int n = 0;
  std::optional<int> j;
  std::optional<double> lambda;
  std::optional<int> k;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tol = 0.0;
  bool passed = false;
  bool asserted = true;  // false for open conjectures (explore mode)
  std::optional<double> alt;  // second computation path, when the statement has one
  std::string note;           // normalization applied, or consistency remarks
  std::string counterexample;  // body JSON when an explored inequality fails

  /// A failing report of a proven statement.
  bool violation() const { return asserted && !passed; }
};

inline InequalityReport make_report(StatementId id, std::string body, int n, double lhs, double rhs,
                                    double rel = tol_verify_rel) {
  InequalityReport r;
  r.statement = id;
  r.body = std::move(body);
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tol = tol_verify(rhs, rel);
  r.passed = r.margin >= -r.tol;
  return r;
}

}  // namespace godbersen
