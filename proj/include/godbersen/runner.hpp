#pragma once

// Batch evaluation of statements over a population of bodies.
//
// Work is split into tasks that share only immutable inputs and are run on a
// small thread pool. Each task writes into its own slot, so the merged output
// is ordered by task index no matter how the threads interleave.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "godbersen/body_zoo.hpp"
#include "godbersen/certificate.hpp"
#include "godbersen/serialize.hpp"
#include "godbersen/verifiers.hpp"

namespace godbersen {

struct RunConfig {
  std::vector<BodySpec> bodies;
  std::vector<LabeledBody> explicit_bodies;
  std::vector<int> zoo_dims;  // each expands to default_zoo(n, seed)
  std::uint64_t seed = 1;
  std::vector<StatementId> statements{all_statements.begin(), all_statements.end()};
  std::vector<double> lambda_grid = uniform_grid(default_grid_points);
  double tol_rel = tol_verify_rel;
  std::vector<int> certificate_dims{4, 5};
  int certificate_points = 1001;
  std::string out_dir = ".";
  int jobs = 1;
};

/// The seed used when neither a flag nor a config sets one.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("GODBERSEN_LAB_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') fail(ErrorKind::BadInput, "GODBERSEN_LAB_SEED is not an unsigned integer");
    return v;
  }
  return 1;
}

inline std::vector<double> grid_from_json(const json& j) {
  if (j.is_number_integer()) return uniform_grid(j.get<int>());
  if (!j.is_array() || j.empty()) fail(ErrorKind::BadSpec, "lambda_grid must be a point count or a list");
  std::vector<double> g;
  for (const json& v : j) {
    const double l = v.get<double>();
    require_unit_interval(l, "lambda");
    g.push_back(l);
  }
  return g;
}

/// "21" is a uniform grid of 21 points, "0,0.25,1" an explicit list.
inline std::vector<double> parse_grid(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('.') == std::string::npos) {
    try {
      return uniform_grid(std::stoi(s));
    } catch (const std::logic_error&) {
      fail(ErrorKind::BadInput, "bad lambda grid '" + s + "'");
    }
  }
  json list = json::array();
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    try {
      list.push_back(std::stod(s.substr(start, end - start)));
    } catch (const std::logic_error&) {
      fail(ErrorKind::BadInput, "bad lambda grid '" + s + "'");
    }
    start = end + 1;
  }
  return grid_from_json(list);
}

inline json config_to_json(const RunConfig& c) {
  json bodies = json::array();
  for (const BodySpec& s : c.bodies) bodies.push_back(spec_to_json(s));
  for (const LabeledBody& b : c.explicit_bodies) bodies.push_back(body_to_json(b.body, b.label));
  json statements = json::array();
  for (StatementId s : c.statements) statements.push_back(to_string(s));
  return json{{"bodies", bodies},
              {"zoo", {{"dims", c.zoo_dims}, {"seed", c.seed}}},
              {"statements", statements},
              {"lambda_grid", c.lambda_grid},
              {"tolerances", {{"tol_verify_rel", c.tol_rel}}},
              {"certificate", {{"dims", c.certificate_dims}, {"grid", c.certificate_points}}},
              {"output", {{"dir", c.out_dir}}},
              {"jobs", c.jobs}};
}

inline RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    if (j.contains("zoo")) {
      const json& z = j.at("zoo");
      c.zoo_dims = z.value("dims", std::vector<int>{});
      if (z.contains("seed")) c.seed = z.at("seed").get<std::uint64_t>();
    }
    if (j.contains("bodies"))
      for (const json& b : j.at("bodies")) {
        if (b.contains("vertices"))
          c.explicit_bodies.push_back(body_from_json(b));
        else
          c.bodies.push_back(spec_from_json(b, c.seed));
      }
    if (j.contains("statements")) {
      c.statements.clear();
      for (const json& s : j.at("statements")) c.statements.push_back(statement_from_string(s.get<std::string>()));
    }
    if (j.contains("lambda_grid")) c.lambda_grid = grid_from_json(j.at("lambda_grid"));
    if (j.contains("tolerances")) c.tol_rel = j.at("tolerances").value("tol_verify_rel", tol_verify_rel);
    if (j.contains("certificate")) {
      c.certificate_dims = j.at("certificate").value("dims", c.certificate_dims);
      c.certificate_points = j.at("certificate").value("grid", c.certificate_points);
    }
    if (j.contains("output")) c.out_dir = j.at("output").value("dir", c.out_dir);
    c.jobs = j.value("jobs", 1);
  } catch (const json::exception& e) {
    fail(ErrorKind::BadSpec, std::string("malformed config: ") + e.what());
  }
  if (c.jobs < 1) fail(ErrorKind::BadSpec, "jobs must be positive");
  if (!(c.tol_rel > 0.0)) fail(ErrorKind::BadSpec, "tolerance must be positive");
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadInput, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::BadSpec, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

/// Built-in sweep: the default zoo in dimensions 2..5, all statements.
inline RunConfig default_config() {
  RunConfig c;
  c.zoo_dims = {2, 3, 4, 5};
  return c;
}

// ---------------------------------------------------------------------------

/// Runs task(i) for i in [0, count) on `jobs` threads. The first exception in
/// index order is rethrown after all threads finish.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Dimension limits of each statement; outside them the statement is skipped.
inline bool applicable(StatementId s, int n) {
  switch (s) {
    case StatementId::COR3:
    case StatementId::COR4:
    case StatementId::GODBERSEN_J:
    case StatementId::ALEXANDROV_J: return n >= 2;
    case StatementId::LEM2: return n <= 6;
    case StatementId::RS_SECPROJ: return n <= 3;
    case StatementId::STRANGE:
    case StatementId::MILMAN_PAJOR: return n <= 4;
    default: return true;
  }
}

struct RunResult {
  std::vector<Subject> subjects;
  std::vector<InequalityReport> reports;

  int violations() const {
    int v = 0;
    for (const InequalityReport& r : reports) v += r.violation();
    return v;
  }
};

inline std::vector<LabeledBody> materialize_bodies(const RunConfig& c) {
  std::vector<BodySpec> specs;
  for (int n : c.zoo_dims)
    for (const BodySpec& s : default_zoo(n, c.seed)) specs.push_back(s);
  specs.insert(specs.end(), c.bodies.begin(), c.bodies.end());
  std::vector<LabeledBody> out;
  for (const BodySpec& s : specs) out.push_back({s.label(), generate(s)});
  out.insert(out.end(), c.explicit_bodies.begin(), c.explicit_bodies.end());
  return out;
}

/// Partner of body i for the two-body statements: the next body of the same
/// dimension in list order, wrapping around (itself if it is alone).
inline std::size_t partner_of(const std::vector<Subject>& subjects, std::size_t i) {
  for (std::size_t step = 1; step < subjects.size(); ++step) {
    const std::size_t k = (i + step) % subjects.size();
    if (subjects[k].dim() == subjects[i].dim()) return k;
  }
  return i;
}

inline std::vector<InequalityReport> run_statement(const std::vector<Subject>& subjects, std::size_t i, StatementId id,
                                                   const RunConfig& c) {
  const Subject& s = subjects[i];
  const int n = s.dim();
  const std::vector<double>& grid = c.lambda_grid;
  switch (id) {
    case StatementId::THM1: return verify_theorem_sum(s, grid, c.tol_rel);
    case StatementId::LEM2: return verify_lifted_bound(s, grid, c.tol_rel);
    case StatementId::COR3: return {verify_average_corollary(s, c.tol_rel)};
    case StatementId::COR4: {
      std::vector<InequalityReport> out;
      for (int k = 1; k < n; ++k) out.push_back(verify_markov_corollary(s, k, c.tol_rel));
      return out;
    }
    case StatementId::RS_DIFF: return {verify_rs_difference(s, c.tol_rel)};
    case StatementId::RS_SECPROJ: return verify_secproj_constructions(s, grid, c.tol_rel);
    case StatementId::GODBERSEN_J: return verify_godbersen(s, c.tol_rel);
    case StatementId::ALEXANDROV_J: return verify_alexandrov(s, c.tol_rel);
    case StatementId::UNBALANCED: return verify_unbalanced(s, grid, c.tol_rel);
    case StatementId::STRANGE:
    case StatementId::MILMAN_PAJOR: {
      const Subject& l = subjects[partner_of(subjects, i)];
      const std::string label = s.label + "|" + l.label;
      return {id == StatementId::STRANGE ? verify_strange(s.body, l.body, label, c.tol_rel)
                                         : verify_milman_pajor(s.body, l.body, label, c.tol_rel)};
    }
    case StatementId::REMARK_EL: return verify_remark_EL(s, grid, c.tol_rel);
  }
  return {};
}

inline RunResult run_verification(const RunConfig& c) {
  const std::vector<LabeledBody> bodies = materialize_bodies(c);
  std::vector<std::optional<Subject>> made(bodies.size());
  parallel_for(bodies.size(), c.jobs,
               [&](std::size_t i) { made[i] = make_subject(bodies[i].label, bodies[i].body); });
  RunResult result;
  for (auto& s : made) result.subjects.push_back(std::move(*s));

  struct Task {
    std::size_t body;
    StatementId statement;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < result.subjects.size(); ++i)
    for (StatementId s : c.statements)
      if (applicable(s, result.subjects[i].dim())) tasks.push_back({i, s});

  std::vector<std::vector<InequalityReport>> slots(tasks.size());
  parallel_for(tasks.size(), c.jobs, [&](std::size_t t) {
    slots[t] = run_statement(result.subjects, tasks[t].body, tasks[t].statement, c);
  });
  for (auto& slot : slots)
    for (auto& r : slot) result.reports.push_back(std::move(r));
  return result;
}

// ---------------------------------------------------------------------------

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::BadInput, "cannot write '" + path.string() + "'");
  out << content;
}

inline std::string profiles_jsonl(const std::vector<Subject>& subjects) {
  std::string out;
  for (const Subject& s : subjects) {
    json j = profile_to_json(s.profile);
    j["body"] = s.label;
    out += j.dump() + '\n';
  }
  return out;
}

/// Writes reports.jsonl and reports.csv into the output directory.
inline void write_reports(const RunConfig& c, const RunResult& r) {
  const std::filesystem::path dir(c.out_dir);
  write_file(dir / "reports.jsonl", reports_jsonl(r.reports));
  write_file(dir / "reports.csv", reports_csv(r.reports));
}

struct SweepResult {
  RunResult run;
  std::vector<std::vector<CertificateResult>> certificates;

  int violations() const {
    int v = run.violations();
    for (const auto& grid : certificates)
      for (const CertificateResult& c : grid) v += !c.valid;
    return v;
  }
};

/// Full matrix: every statement on every body, the certificates, and the
/// profiles, all written to the output directory.
inline SweepResult run_sweep(const RunConfig& c) {
  SweepResult out;
  out.run = run_verification(c);
  const std::filesystem::path dir(c.out_dir);
  write_reports(c, out.run);
  write_file(dir / "profiles.jsonl", profiles_jsonl(out.run.subjects));
  for (int n : c.certificate_dims) {
    out.certificates.push_back(certificate_grid(n, c.certificate_points));
    write_file(dir / ("certificate_n" + std::to_string(n) + ".csv"), certificate_csv(out.certificates.back()));
  }
  write_file(dir / "config.json", config_to_json(c).dump(2) + '\n');
  return out;
}

}  // namespace godbersen
