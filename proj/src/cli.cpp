#include "minproj/cli.hpp"

#include "minproj/certificate.hpp"
#include "minproj/error.hpp"
#include "minproj/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>

namespace minproj::cli {

namespace {

using io::Json;

struct RunConfig {
  std::string input;
  std::string certificate;
  std::string output;
  std::optional<std::uint32_t> seed;
  std::optional<std::uint64_t> subset_cap;
  bool skip_support = false;
  bool table = false;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidInput:
    case ErrorCode::NotFullDimensional:
    case ErrorCode::NotSymmetric:
      return kInputError;
    case ErrorCode::SubsetBudgetExceeded:
    case ErrorCode::SupportBudgetExceeded:
      return kBudgetExceeded;
    default:
      return kMismatch;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to --output when given, otherwise to out.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidInput, config.output + ": cannot write");
  file << text;
}

std::uint64_t subset_cap(const RunConfig& config) {
  if (config.subset_cap) return *config.subset_cap;
  if (const char* env = std::getenv("MINPROJ_SUBSET_CAP"); env && *env) {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value == 0) {
      throw Error(ErrorCode::InvalidInput, "MINPROJ_SUBSET_CAP: expected a positive integer");
    }
    return value;
  }
  return kDefaultSubsetCap;
}

Json general_position_json(const PolyhedralSpace& space, const GeneralPositionResult& gp) {
  Json out;
  out["in_general_position"] = gp.in_general_position;
  out["witness_kind"] = to_string(gp.witness_kind);
  Json witness = Json::array();
  for (auto i : gp.witness) {
    const auto& v = gp.witness_kind == GeneralPositionResult::WitnessKind::KernelIntersection
                        ? space.dual()[i]
                        : space.primal()[i];
    witness.push_back({{"index", i}, {"vector", io::vector_json(v)}});
  }
  out["witness"] = std::move(witness);
  out["subsets_examined"] = gp.subsets_examined;
  return out;
}

Json checks_json(const CMVerification& v) {
  Json out;
  out["weights"] = v.weights;
  out["vanishing"] = v.vanishing;
  out["invariance"] = v.invariance;
  out["norming"] = v.norming;
  out["trace"] = v.trace;
  out["trace_value"] = to_string(v.trace_value);
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

std::string table_text(const Json& j, const std::string& indent = "") {
  std::ostringstream os;
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << indent << key << ":\n" << table_text(value, indent + "  ");
    } else {
      os << indent << std::left << std::setw(28) << key << ' '
         << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
  return os.str();
}

int analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto input = io::parse_problem(read_file(config.input));
  if (config.seed) {
    input.subspace = catalog::random_subspace(input.space.dim(), input.subspace.dim(), *config.seed);
  }
  const std::uint64_t cap = subset_cap(config);
  const ProjectionProblem problem(input.space, input.subspace);
  const std::size_t n = problem.space().dim();

  auto report = projection_constant(problem);
  face_dimension(problem, report);
  const Matrix witness = problem.realize(report.witness);
  const CMFunctional cm = cm_from_dual(problem, report);
  const CMVerification checks = verify_cm(problem.space(), problem.subspace(), cm, report.lambda, witness);
  const auto max_norming = max_norming_projection(problem, report);

  bool budget = false;
  Json j;
  j["dim"] = n;
  j["subspace_dim"] = problem.subspace().dim();
  if (config.seed) {
    j["seed"] = *config.seed;
    Json basis = Json::array();
    for (std::size_t c = 0; c < problem.subspace().dim(); ++c)
      basis.push_back(io::vector_json(problem.subspace().basis().column(c)));
    j["subspace_basis"] = std::move(basis);
  }
  j["lambda"] = to_string(report.lambda);
  j["lambda_approx"] = to_approx_string(report.lambda);
  j["face_dim"] = report.face_dim;
  j["operator_dim"] = problem.operator_dim();
  j["minimal_projection"] = io::matrix_json(witness);
  j["norming_pairs"] = io::pairs_json(report.norming_pairs_of_witness);
  j["implicit_pairs"] = io::pairs_json(report.implicit_pairs);
  j["certificate"] = io::certificate_to_json(cm, report.lambda, nullptr);
  j["certificate_checks"] = checks_json(checks);

  std::optional<CMFunctional> minimal;
  if (config.skip_support) {
    j["support_search"] = "skipped";
  } else {
    try {
      auto result = minimal_support_cm(problem, report.implicit_pairs, {24, cap});
      Json s = io::certificate_to_json(result.cm, report.lambda, nullptr);
      s["support"] = result.support;
      s["subsets_tested"] = result.subsets_tested;
      j["minimal_support"] = std::move(s);
      minimal = std::move(result.cm);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SupportBudgetExceeded) throw;
      err << "warning: " << e.what() << '\n';
      j["support_search"] = "skipped";
      budget = true;
    }
  }

  j["max_norming"] = {{"count", max_norming.pairs.size()}, {"pairs", io::pairs_json(max_norming.pairs)}};

  try {
    j["general_position"] = general_position_json(
        problem.space(), general_position_check(problem.space(), problem.subspace(), cap));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SubsetBudgetExceeded) throw;
    err << "warning: " << e.what() << '\n';
    j["general_position"] = "skipped";
    budget = true;
  }

  const auto gap = cm_rank_gap(problem.space(), problem.subspace(), minimal ? *minimal : cm, report.lambda);
  j["rank_gap"] = {{"certificate", minimal ? "minimal_support" : "certificate"},
                   {"rank_full", gap.rank_full},
                   {"rank_restricted", gap.rank_restricted}};

  emit(config, out, config.table ? table_text(j) : io::dump(j));
  return budget ? kBudgetExceeded : kOk;
}

int general_position(const RunConfig& config, std::ostream& out) {
  auto input = io::parse_problem(read_file(config.input));
  if (config.seed) {
    input.subspace = catalog::random_subspace(input.space.dim(), input.subspace.dim(), *config.seed);
  }
  const Json j = general_position_json(input.space, general_position_check(input.space, input.subspace,
                                                                           subset_cap(config)));
  emit(config, out, config.table ? table_text(j) : io::dump(j));
  return kOk;
}

int polar(const RunConfig& config, std::ostream& out) {
  const auto space = PolyhedralSpace::from_vertices(io::parse_vertices(read_file(config.input)));
  Json j;
  j["dim"] = space.dim();
  Json duals = Json::array();
  for (const auto& f : space.dual()) duals.push_back(io::vector_json(f));
  j["dual_vertices"] = std::move(duals);
  if (config.table) {
    std::ostringstream os;
    for (const auto& f : j["dual_vertices"]) {
      for (std::size_t i = 0; i < f.size(); ++i) os << (i ? " " : "") << f[i].get<std::string>();
      os << '\n';
    }
    emit(config, out, os.str());
  } else {
    emit(config, out, io::dump(j));
  }
  return kOk;
}

int certify(const RunConfig& config, std::ostream& out) {
  const auto cert = io::parse_certificate(read_file(config.certificate));
  const auto input = io::parse_problem(read_file(config.input));
  const auto& space = input.space;
  for (std::size_t i = 0; i < cert.cm.pairs.size(); ++i) {
    const auto& p = cert.cm.pairs[i];
    if (p.vertex >= space.primal().size()) {
      throw Error(ErrorCode::InvalidInput, "pairs[" + std::to_string(i) + "].vertex: index " +
                                               std::to_string(p.vertex) + " out of range");
    }
    if (p.functional >= space.dual().size()) {
      throw Error(ErrorCode::InvalidInput, "pairs[" + std::to_string(i) + "].functional: index " +
                                               std::to_string(p.functional) + " out of range");
    }
  }
  Matrix projection;
  if (cert.projection) {
    if (cert.projection->rows() != space.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "projection: expected a " + std::to_string(space.dim()) +
                                                    " x " + std::to_string(space.dim()) + " matrix");
    }
    projection = *cert.projection;
  } else {
    const ProjectionProblem problem(space, input.subspace);
    projection = problem.realize(projection_constant(problem).witness);
  }
  const auto v = verify_cm(space, input.subspace, cert.cm, cert.lambda, projection);
  Json j;
  j["lambda"] = to_string(cert.lambda);
  j["checks"] = checks_json(v);
  j["verdict"] = v.ok() ? "PASS" : "FAIL";
  if (config.table) {
    std::ostringstream os;
    for (const char* name : {"weights", "vanishing", "invariance", "norming", "trace"}) {
      os << std::left << std::setw(12) << name << (j["checks"][name].get<bool>() ? "PASS" : "FAIL") << '\n';
    }
    os << "trace(T|Y)  " << to_string(v.trace_value) << '\n';
    if (!v.detail.empty()) os << "detail      " << v.detail << '\n';
    emit(config, out, os.str());
  } else {
    emit(config, out, io::dump(j));
  }
  return v.ok() ? kOk : kMismatch;
}

std::vector<catalog::NamedCase> shipped_cases() {
#ifdef MINPROJ_EMPTY_CATALOG
  return {};
#else
  return catalog::paper_cases();
#endif
}

struct SuiteRow {
  std::string name;
  Rational lambda;
  std::size_t face_dim = 0;
  std::optional<catalog::Expected> expected;
  std::string error;

  bool pass() const {
    return error.empty() && expected && expected->lambda == lambda && expected->face_dim == face_dim;
  }
};

SuiteRow run_case(const catalog::NamedCase& c) {
  SuiteRow row{c.name, 0, 0, c.expected, {}};
  try {
    const ProjectionProblem problem(c.space, c.subspace);
    auto report = projection_constant(problem);
    face_dimension(problem, report);
    row.lambda = report.lambda;
    row.face_dim = report.face_dim;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

int run_paper_suite(const std::vector<catalog::NamedCase>& cases, bool table, std::ostream& out,
                    std::ostream& err) {
  if (cases.empty()) err << "warning: the case catalog is empty; nothing to check\n";
  std::vector<std::future<SuiteRow>> jobs;
  for (const auto& c : cases) jobs.push_back(std::async(std::launch::async, run_case, std::cref(c)));
  std::vector<SuiteRow> rows;
  for (auto& job : jobs) rows.push_back(job.get());
  std::sort(rows.begin(), rows.end(), [](const SuiteRow& a, const SuiteRow& b) { return a.name < b.name; });

  std::size_t failed = 0;
  for (const auto& row : rows) failed += row.pass() ? 0 : 1;

  if (table) {
    out << std::left << std::setw(26) << "case" << std::setw(10) << "lambda" << std::setw(10) << "expected"
        << std::setw(6) << "dim" << std::setw(10) << "expected" << "verdict\n";
    for (const auto& row : rows) {
      out << std::setw(26) << row.name << std::setw(10) << to_string(row.lambda) << std::setw(10)
          << (row.expected ? to_string(row.expected->lambda) : "-") << std::setw(6) << row.face_dim
          << std::setw(10) << (row.expected ? std::to_string(row.expected->face_dim) : "-")
          << (row.pass() ? "PASS" : "FAIL") << '\n';
    }
    out << rows.size() - failed << " passed, " << failed << " failed\n";
  } else {
    Json j;
    Json list = Json::array();
    for (const auto& row : rows) {
      Json r;
      r["name"] = row.name;
      r["lambda"] = to_string(row.lambda);
      r["face_dim"] = row.face_dim;
      if (row.expected) {
        r["expected_lambda"] = to_string(row.expected->lambda);
        r["expected_face_dim"] = row.expected->face_dim;
        r["source"] = row.expected->source;
      }
      if (!row.error.empty()) r["error"] = row.error;
      r["verdict"] = row.pass() ? "PASS" : "FAIL";
      list.push_back(std::move(r));
    }
    j["cases"] = std::move(list);
    j["passed"] = rows.size() - failed;
    j["failed"] = failed;
    out << io::dump(j);
  }
  return failed == 0 ? kOk : kMismatch;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact minimal projections in polyhedral normed spaces", "minproj"};
  app.require_subcommand(1);
  RunConfig config;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", config.output, "Write the result to PATH instead of stdout");
    auto* json = sub->add_flag("--json", "JSON output (default)");
    sub->add_flag("--table", config.table, "Plain-text table output")->excludes(json);
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "Projection constant, face, certificates");
  analyze_cmd->add_option("--input", config.input, "Space/subspace JSON")->required();
  analyze_cmd->add_option("--seed", config.seed, "Replace the subspace by a seeded random one of equal dimension");
  analyze_cmd->add_option("--subset-cap", config.subset_cap, "Subset budget for searches")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--skip-support-search", config.skip_support, "Do not search for a minimal-support certificate");
  common(analyze_cmd);

  auto* suite_cmd = app.add_subcommand("paper-suite", "Check every catalog case against its expected values");
  common(suite_cmd);

  auto* gp_cmd = app.add_subcommand("general-position", "Check the subspace for general position");
  gp_cmd->add_option("--input", config.input, "Space/subspace JSON")->required();
  gp_cmd->add_option("--seed", config.seed, "Replace the subspace by a seeded random one of equal dimension");
  gp_cmd->add_option("--subset-cap", config.subset_cap, "Subset budget")->check(CLI::PositiveNumber);
  common(gp_cmd);

  auto* polar_cmd = app.add_subcommand("polar", "Vertices of the dual ball");
  polar_cmd->add_option("--input", config.input, "JSON with dim and vertices")->required();
  common(polar_cmd);

  auto* certify_cmd = app.add_subcommand("certify", "Verify a certificate file");
  certify_cmd->add_option("--certificate", config.certificate, "Certificate JSON")->required();
  certify_cmd->add_option("--input", config.input, "Space/subspace JSON")->required();
  common(certify_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(config, out, err);
    if (gp_cmd->parsed()) return general_position(config, out);
    if (polar_cmd->parsed()) return polar(config, out);
    if (certify_cmd->parsed()) return certify(config, out);
    std::ostringstream buf;
    const int code = run_paper_suite(shipped_cases(), config.table, buf, err);
    emit(config, out, buf.str());
    return code;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace minproj::cli
