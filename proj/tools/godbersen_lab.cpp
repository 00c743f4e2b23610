// Command-line front end: body generation, profiles, verification runs,
// certificates and the full sweep.
//
// Exit codes: 0 ok, 1 a proven statement failed, 2 bad input, 3 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <variant>
#include <string>

#include "godbersen/runner.hpp"

namespace {

using namespace godbersen;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kBadInput = 2;
constexpr int kNumerical = 3;

struct BodyFlags {
  std::string body;
  int dim = 0;
  std::optional<std::uint64_t> seed;
  int vertices = 0;
  int reuleaux_k = 3;
  std::optional<std::uint64_t> affine_seed;
};

void add_body_flags(CLI::App* cmd, BodyFlags& f, bool required) {
  cmd->add_option("--body", f.body, "generator name (simplex, cube, cross, random_sphere, random_gauss_hull, "
                                    "reuleaux_poly) or a body JSON file")
      ->required(required);
  cmd->add_option("--dim", f.dim, "dimension for generated bodies");
  cmd->add_option("--seed", f.seed, "seed for random generators (default: $GODBERSEN_LAB_SEED or 1)");
  cmd->add_option("--vertices", f.vertices, "point count for random generators");
  cmd->add_option("--reuleaux-k", f.reuleaux_k, "number of arcs of the Reuleaux polygon");
  cmd->add_option("--affine-seed", f.affine_seed, "apply a seeded random affine map");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) { return flag ? *flag : default_seed(); }

LabeledBody load_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadInput, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::BadSpec, "'" + path + "' is not valid JSON: " + e.what());
  }
  if (j.contains("vertices")) return body_from_json(j);
  const BodySpec spec = spec_from_json(j, default_seed());
  return {spec.label(), generate(spec)};
}

/// Either a spec built from flags or a body read from a file.
std::variant<BodySpec, LabeledBody> resolve_body(const BodyFlags& f) {
  if (std::filesystem::is_regular_file(f.body)) return load_body_file(f.body);
  BodySpec s;
  s.generator = generator_from_string(f.body);
  if (f.dim <= 0) fail(ErrorKind::BadInput, "--dim is required for generated bodies");
  s.dim = f.dim;
  s.seed = resolve_seed(f.seed);
  s.vertex_count = f.vertices > 0 ? f.vertices : (f.dim <= 3 ? 12 : 2 * f.dim + 2);
  s.reuleaux_k = f.reuleaux_k;
  if (f.affine_seed) s.transform = random_affine(f.dim, *f.affine_seed);
  return s;
}

LabeledBody materialize(const std::variant<BodySpec, LabeledBody>& b) {
  if (const BodySpec* s = std::get_if<BodySpec>(&b)) return {s->label(), generate(*s)};
  return std::get<LabeledBody>(b);
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-")
    std::cout << content;
  else
    write_file(out, content);
}

void print_summary(const std::vector<InequalityReport>& reports, std::ostream& os) {
  int asserted = 0, failed = 0, explored = 0, candidates = 0;
  for (const InequalityReport& r : reports) {
    if (r.asserted) {
      ++asserted;
      failed += !r.passed;
    } else {
      ++explored;
      candidates += !r.passed;
    }
  }
  os << reports.size() << " reports: " << asserted << " asserted (" << failed << " failed), " << explored
     << " exploratory (" << candidates << " counterexample candidates)\n";
  for (const InequalityReport& r : reports) {
    if (!r.violation()) continue;
    os << "VIOLATION " << to_string(r.statement) << " " << r.body << " lhs=" << format_g17(r.lhs)
       << " rhs=" << format_g17(r.rhs);
    if (r.lambda) os << " lambda=" << format_g17(*r.lambda);
    if (r.j) os << " j=" << *r.j;
    if (!r.note.empty()) os << " (" << r.note << ")";
    os << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Mixed-volume profiles and difference-body inequality checks for polytopes"};
  app.require_subcommand(1);

  // gen
  BodyFlags gen_flags;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a body and print its vertex JSON");
  add_body_flags(gen, gen_flags, true);
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // profile
  BodyFlags prof_flags;
  std::string prof_out;
  CLI::App* prof = app.add_subcommand("profile", "mixed-volume profile V(K[j], -K[n-j])");
  add_body_flags(prof, prof_flags, true);
  prof->add_option("--out", prof_out, "output file (default stdout)");

  // verify
  BodyFlags ver_flags;
  std::string ver_config, ver_out, ver_grid, ver_statements;
  int ver_jobs = 0;
  CLI::App* ver = app.add_subcommand("verify", "evaluate statements on bodies, write reports.jsonl and reports.csv");
  add_body_flags(ver, ver_flags, false);
  ver->add_option("--config", ver_config, "run configuration JSON");
  ver->add_option("--statements", ver_statements, "comma-separated statement ids (default all)");
  ver->add_option("--lambda-grid", ver_grid, "point count or comma-separated lambda values");
  ver->add_option("--out", ver_out, "output directory");
  ver->add_option("--jobs", ver_jobs, "worker threads");

  // certificate
  int cert_n = 4, cert_grid = 1001;
  std::string cert_out;
  CLI::App* cert = app.add_subcommand("certificate", "coefficients (a, b) of the n = 4, 5 certificate on a grid");
  cert->add_option("--n", cert_n, "dimension, 4 or 5")->required();
  cert->add_option("--grid", cert_grid, "number of uniform lambda points");
  cert->add_option("--out", cert_out, "output CSV (default stdout)");

  // sweep
  std::string sweep_config, sweep_out, sweep_grid;
  std::optional<std::uint64_t> sweep_seed;
  int sweep_jobs = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "full matrix: all statements on the zoo, profiles, certificates");
  sweep->add_option("--config", sweep_config, "run configuration JSON (default: built-in zoo, n = 2..5)");
  sweep->add_option("--seed", sweep_seed, "zoo seed");
  sweep->add_option("--lambda-grid", sweep_grid, "point count or comma-separated lambda values");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--jobs", sweep_jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  if (gen->parsed()) {
    const LabeledBody b = materialize(resolve_body(gen_flags));
    emit(gen_out, body_to_json(b.body, b.label).dump(2) + "\n");
    return kOk;
  }

  if (prof->parsed()) {
    const LabeledBody b = materialize(resolve_body(prof_flags));
    json j = profile_to_json(mixed_volume_profile(b.body));
    j["body"] = b.label;
    emit(prof_out, j.dump(2) + "\n");
    return kOk;
  }

  if (cert->parsed()) {
    const std::vector<CertificateResult> rows = certificate_grid(cert_n, cert_grid);
    emit(cert_out, certificate_csv(rows));
    double min_a = rows.front().a, min_b = rows.front().b;
    int invalid = 0;
    for (const CertificateResult& r : rows) {
      min_a = std::min(min_a, r.a);
      min_b = std::min(min_b, r.b);
      invalid += !r.valid;
    }
    std::cerr << "n=" << cert_n << " points=" << rows.size() << " min(a)=" << format_g17(min_a)
              << " min(b)=" << format_g17(min_b) << " invalid=" << invalid << "\n";
    return invalid ? kViolation : kOk;
  }

  if (ver->parsed()) {
    RunConfig c;
    if (!ver_config.empty()) c = load_config(ver_config);
    if (!ver_flags.body.empty()) {
      auto b = resolve_body(ver_flags);
      if (BodySpec* s = std::get_if<BodySpec>(&b))
        c.bodies.push_back(*s);
      else
        c.explicit_bodies.push_back(std::get<LabeledBody>(b));
    } else if (ver_config.empty()) {
      fail(ErrorKind::BadInput, "verify needs --config or --body");
    }
    if (!ver_statements.empty()) {
      c.statements.clear();
      std::size_t start = 0;
      while (start <= ver_statements.size()) {
        const std::size_t end = std::min(ver_statements.find(',', start), ver_statements.size());
        c.statements.push_back(statement_from_string(ver_statements.substr(start, end - start)));
        start = end + 1;
      }
    }
    if (!ver_grid.empty()) c.lambda_grid = parse_grid(ver_grid);
    if (!ver_out.empty()) c.out_dir = ver_out;
    if (ver_jobs > 0) c.jobs = ver_jobs;
    const RunResult r = run_verification(c);
    write_reports(c, r);
    print_summary(r.reports, std::cerr);
    return r.violations() ? kViolation : kOk;
  }

  if (sweep->parsed()) {
    RunConfig c = sweep_config.empty() ? default_config() : load_config(sweep_config);
    if (sweep_seed)
      c.seed = *sweep_seed;
    else if (sweep_config.empty())
      c.seed = default_seed();
    if (!sweep_grid.empty()) c.lambda_grid = parse_grid(sweep_grid);
    if (!sweep_out.empty()) c.out_dir = sweep_out;
    if (sweep_jobs > 0) c.jobs = sweep_jobs;
    const SweepResult r = run_sweep(c);
    print_summary(r.run.reports, std::cerr);
    for (std::size_t i = 0; i < r.certificates.size(); ++i) {
      int invalid = 0;
      for (const CertificateResult& x : r.certificates[i]) invalid += !x.valid;
      std::cerr << "certificate n=" << c.certificate_dims[i] << ": " << invalid << " invalid points\n";
    }
    return r.violations() ? kViolation : kOk;
  }
  return kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const godbersen::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_numerical() ? kNumerical : kBadInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
