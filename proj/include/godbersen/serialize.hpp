#pragma once

// JSON and CSV encodings. JSON floats use nlohmann's shortest round-trip
// output; CSV floats are fixed at 17 significant digits so that two runs can
// be compared byte for byte.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "godbersen/body_zoo.hpp"
#include "godbersen/mixed_volume.hpp"
#include "godbersen/polytope.hpp"
#include "godbersen/report.hpp"

namespace godbersen {

using json = nlohmann::json;

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Vector vector_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::BadSpec, "expected an array of numbers");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::BadSpec, "expected a nonempty array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != cols) fail(ErrorKind::BadSpec, "ragged matrix");
    m.row(static_cast<int>(i)) = vector_from_json(j[i]).transpose();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Bodies: {"dim": n, "vertices": [[x1..xn], ...], "label": "..."}

inline json body_to_json(const VPolytope& k, const std::string& label) {
  return json{{"dim", k.dim()}, {"vertices", matrix_to_json(k.vertices().transpose())}, {"label", label}};
}

struct LabeledBody {
  std::string label;
  VPolytope body;
};

inline LabeledBody body_from_json(const json& j) {
  try {
    const Matrix rows = matrix_from_json(j.at("vertices"));
    const int dim = j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(rows.cols());
    if (dim != rows.cols()) fail(ErrorKind::DimensionMismatch, "vertex length does not match dim");
    return {j.value("label", std::string("user")), VPolytope::hull_of(Matrix(rows.transpose()))};
  } catch (const json::exception& e) {
    fail(ErrorKind::BadSpec, std::string("malformed body JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Profiles: {"n", "vol", "V", "ratios", "cond"}

inline json profile_to_json(const MixedVolumeProfile& p) {
  return json{{"n", p.n},
              {"vol", p.vol_K},
              {"V", p.values},
              {"ratios", godbersen_ratios(p)},
              {"cond", p.condition_estimate}};
}

// ---------------------------------------------------------------------------
// Body specs

inline json spec_to_json(const BodySpec& s) {
  json j{{"generator", to_string(s.generator)}, {"dim", s.dim}};
  if (s.generator == Generator::RandomSphere || s.generator == Generator::RandomGaussHull) {
    j["vertex_count"] = s.vertex_count;
    j["seed"] = s.seed;
  }
  if (s.generator == Generator::ReuleauxPoly) j["reuleaux_k"] = s.reuleaux_k;
  if (s.transform)
    j["transform"] = json{{"matrix", matrix_to_json(s.transform->matrix)},
                          {"translation", vector_to_json(s.transform->translation)}};
  return j;
}

/// `default_seed` fills in the seed of random generators when the spec omits it.
inline BodySpec spec_from_json(const json& j, std::uint64_t default_seed = 0) {
  try {
    BodySpec s;
    s.generator = generator_from_string(j.at("generator").get<std::string>());
    s.dim = j.at("dim").get<int>();
    s.seed = j.value("seed", default_seed);
    s.vertex_count = j.value("vertex_count", s.dim <= 3 ? 12 : 2 * s.dim + 2);
    s.reuleaux_k = j.value("reuleaux_k", 3);
    if (j.contains("transform")) {
      const json& t = j.at("transform");
      s.transform = AffineTransform{matrix_from_json(t.at("matrix")), vector_from_json(t.at("translation"))};
    }
    return s;
  } catch (const json::exception& e) {
    fail(ErrorKind::BadSpec, std::string("malformed body spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline json report_to_json(const InequalityReport& r) {
  json j{{"statement_id", to_string(r.statement)},
         {"body", r.body},
         {"n", r.n},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"margin", r.margin},
         {"tol", r.tol},
         {"passed", r.passed},
         {"asserted", r.asserted}};
  if (r.j) j["j"] = *r.j;
  if (r.lambda) j["lambda"] = *r.lambda;
  if (r.k) j["k"] = *r.k;
  if (r.alt) j["alt"] = *r.alt;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.counterexample.empty()) j["counterexample"] = json::parse(r.counterexample);
  return j;
}

inline std::string reports_jsonl(const std::vector<InequalityReport>& reports) {
  std::string out;
  for (const InequalityReport& r : reports) {
    out += report_to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string reports_csv(const std::vector<InequalityReport>& reports) {
  std::string out = "statement_id,body,n,j,lambda,lhs,rhs,margin,passed\n";
  for (const InequalityReport& r : reports) {
    out += to_string(r.statement);
    out += ',' + csv_quote(r.body);
    out += ',' + std::to_string(r.n);
    out += ',' + (r.j ? std::to_string(*r.j) : std::string());
    out += ',' + (r.lambda ? format_g17(*r.lambda) : std::string());
    out += ',' + format_g17(r.lhs);
    out += ',' + format_g17(r.rhs);
    out += ',' + format_g17(r.margin);
    out += r.passed ? ",true\n" : ",false\n";
  }
  return out;
}

}  // namespace godbersen
