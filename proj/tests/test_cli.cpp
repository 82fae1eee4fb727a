#include "minproj/cli.hpp"
#include "minproj/error.hpp"
#include "minproj/io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace minproj;
using minproj::testing::q;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("minproj_cli_" + std::to_string(counter_++) + "_" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

const char* kLinf3 = R"({
  "dim": 3,
  "vertices": [["1","1","1"],["1","1","-1"],["1","-1","1"],["1","-1","-1"],
               ["-1","1","1"],["-1","1","-1"],["-1","-1","1"],["-1","-1","-1"]],
  "subspace_basis": [["1","-1","0"],["0","1","-1"]]
})";

io::Json parse(const std::string& text) { return io::Json::parse(text); }

}  // namespace

TEST_CASE("analyze") {
  TempDir dir;
  const auto input = dir.write("in.json", kLinf3);

  SUBCASE("l_inf^3 sum hyperplane") {
    const auto r = run({"analyze", "--input", input});
    REQUIRE(r.code == cli::kOk);
    const auto j = parse(r.out);
    CHECK(j["lambda"] == "4/3");
    CHECK(j["lambda_approx"] == "1.33333333333");
    CHECK(j["face_dim"] == 0);
    CHECK(j["minimal_support"]["support"] == 3);
    CHECK(j["general_position"]["in_general_position"] == true);
    CHECK(j["rank_gap"]["rank_restricted"] < j["rank_gap"]["rank_full"]);
    for (const auto& [name, ok] : j["certificate_checks"].items()) {
      if (name != "trace_value") CHECK(ok == true);
    }
  }
  SUBCASE("exact strings re-parse to equal values") {
    const auto j = parse(run({"analyze", "--input", input}).out);
    std::vector<std::string> strings{j["lambda"], j["certificate_checks"]["trace_value"]};
    for (const auto& row : j["minimal_projection"])
      for (const auto& x : row) strings.push_back(x);
    for (const auto& p : j["certificate"]["pairs"]) strings.push_back(p["weight"]);
    for (const auto& s : strings) {
      const auto r = parse_rational(s);
      REQUIRE(r);
      CHECK(to_string(*r) == s);
    }
  }
  SUBCASE("byte-identical output") {
    const auto a = run({"analyze", "--input", input});
    const auto b = run({"analyze", "--input", input});
    CHECK(a.out == b.out);
    const auto c = run({"analyze", "--input", input, "--seed", "7", "--table"});
    const auto d = run({"analyze", "--input", input, "--seed", "7", "--table"});
    CHECK(c.code == d.code);
    CHECK(c.out == d.out);
  }
  SUBCASE("--output writes the file") {
    const auto out = dir.path("report.json");
    const auto r = run({"analyze", "--input", input, "--output", out});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.empty());
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run({"analyze", "--input", input}).out);
  }
  SUBCASE("--seed replaces the subspace") {
    const auto r = run({"analyze", "--input", input, "--seed", "3"});
    const auto j = parse(r.out);
    CHECK(j["seed"] == 3);
    CHECK(j["subspace_dim"] == 2);
    const auto y = catalog::random_subspace(3, 2, 3);
    CHECK(j["subspace_basis"][0] == io::vector_json(y.basis().column(0)));
  }
  SUBCASE("--skip-support-search") {
    const auto r = run({"analyze", "--input", input, "--skip-support-search"});
    CHECK(r.code == cli::kOk);
    CHECK(parse(r.out)["support_search"] == "skipped");
  }
  SUBCASE("budget exceeded emits a partial report") {
    const auto r = run({"analyze", "--input", input, "--subset-cap", "2"});
    CHECK(r.code == cli::kBudgetExceeded);
    const auto j = parse(r.out);
    CHECK(j["support_search"] == "skipped");
    CHECK(j["general_position"] == "skipped");
    CHECK(j["lambda"] == "4/3");
  }
  SUBCASE("MINPROJ_SUBSET_CAP overrides the default cap") {
    ::setenv("MINPROJ_SUBSET_CAP", "2", 1);
    const auto capped = run({"analyze", "--input", input});
    const auto flag = run({"analyze", "--input", input, "--subset-cap", "100"});
    ::setenv("MINPROJ_SUBSET_CAP", "zero", 1);
    const auto bad = run({"analyze", "--input", input});
    ::unsetenv("MINPROJ_SUBSET_CAP");
    CHECK(capped.code == cli::kBudgetExceeded);
    CHECK(flag.code == cli::kOk);
    CHECK(bad.code == cli::kInputError);
  }
}

TEST_CASE("analyze rejects malformed input") {
  TempDir dir;
  SUBCASE("float literal") {
    std::string text = kLinf3;
    text.replace(text.find(R"("1","1","-1")"), 12, R"("1",1.0,"-1")");
    const auto r = run({"analyze", "--input", dir.write("in.json", text)});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("vertices[1][1]") != std::string::npos);
    CHECK(r.err.find("float") != std::string::npos);
  }
  SUBCASE("decimal string") {
    std::string text = kLinf3;
    text.replace(text.find(R"("1","-1","0")"), 12, R"("0.5","-1","0")");
    const auto r = run({"analyze", "--input", dir.write("in.json", text)});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("subspace_basis[0][0]") != std::string::npos);
  }
  SUBCASE("duplicate vertex") {
    std::string text = kLinf3;
    text.replace(text.find(R"(["-1","-1","-1"])"), 16, R"(["-1","-1","-1"],["1","1","1"])");
    const auto r = run({"analyze", "--input", dir.write("in.json", text)});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("extremality") != std::string::npos);
  }
  SUBCASE("syntax error reports line and column") {
    const auto r = run({"analyze", "--input", dir.write("in.json", "{\n  \"dim\": 3,\n  \"vertices\": [,]\n}")});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("line 3, column 16") != std::string::npos);
  }
  SUBCASE("missing field and wrong length") {
    CHECK(run({"analyze", "--input", dir.write("a.json", R"({"dim": 3, "vertices": []})")}).code ==
          cli::kInputError);
    const auto r = run({"analyze", "--input", dir.write("b.json", R"({"dim": 2, "vertices": [["1"]]})")});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("vertices[0]") != std::string::npos);
  }
  SUBCASE("not symmetric") {
    const auto r = run({"analyze", "--input", dir.write("in.json", R"({"dim": 2,
      "vertices": [["1","0"],["0","1"],["-1","-1"]], "subspace_basis": [["1","0"]]})")});
    CHECK(r.code == cli::kInputError);
  }
  SUBCASE("missing file and unknown flag") {
    CHECK(run({"analyze", "--input", dir.path("nope.json")}).code == cli::kInputError);
    CHECK(run({"analyze", "--bogus"}).code == cli::kInputError);
    CHECK(run({}).code == cli::kInputError);
  }
}

TEST_CASE("paper-suite") {
  SUBCASE("shipped catalog passes") {
    const auto r = run({"paper-suite"});
    CHECK(r.code == cli::kOk);
    const auto j = parse(r.out);
    CHECK(j["failed"] == 0);
    CHECK(j["passed"] == 27);
    for (const auto& row : j["cases"]) CHECK(row["verdict"] == "PASS");
  }
  SUBCASE("tampered expectation fails") {
    auto cases = catalog::paper_cases();
    for (auto& c : cases) {
      if (c.name == "linf_partial_sum_n5_k3") c.expected->lambda = q("5/4");
    }
    std::ostringstream out, err;
    CHECK(cli::run_paper_suite(cases, true, out, err) == cli::kMismatch);
    std::istringstream lines(out.str());
    std::string line;
    std::size_t failing = 0;
    while (std::getline(lines, line)) {
      if (line.find("FAIL") == std::string::npos) continue;
      ++failing;
      CHECK(line.rfind("linf_partial_sum_n5_k3", 0) == 0);
    }
    CHECK(failing == 1);
  }
  SUBCASE("empty catalog") {
    std::ostringstream out, err;
    CHECK(cli::run_paper_suite({}, false, out, err) == cli::kOk);
    CHECK(parse(out.str())["cases"].empty());
    CHECK(err.str().find("warning") != std::string::npos);
  }
}

TEST_CASE("certify") {
  TempDir dir;
  const auto input = dir.write("in.json", kLinf3);
  const auto report = parse(run({"analyze", "--input", input}).out);

  SUBCASE("exported certificate round-trips") {
    auto cert = report["certificate"];
    cert["projection"] = report["minimal_projection"];
    const auto r = run({"certify", "--certificate", dir.write("c.json", cert.dump()), "--input", input});
    CHECK(r.code == cli::kOk);
    CHECK(parse(r.out)["verdict"] == "PASS");
    // Without an explicit projection the tool computes one.
    const auto bare = run({"certify", "--certificate", dir.write("d.json", report["certificate"].dump()),
                           "--input", input, "--table"});
    CHECK(bare.code == cli::kOk);
    CHECK(bare.out.find("norming     PASS") != std::string::npos);
  }
  SUBCASE("weights summing to 9/10") {
    auto cert = report["certificate"];
    for (auto& p : cert["pairs"]) p["weight"] = "3/10";
    const auto r = run({"certify", "--certificate", dir.write("c.json", cert.dump()), "--input", input});
    CHECK(r.code == cli::kMismatch);
    const auto j = parse(r.out);
    CHECK(j["checks"]["weights"] == false);
    CHECK(j["verdict"] == "FAIL");
  }
  SUBCASE("out-of-range vertex index") {
    auto cert = report["certificate"];
    cert["pairs"][0]["vertex"] = 99;
    const auto r = run({"certify", "--certificate", dir.write("c.json", cert.dump()), "--input", input});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("pairs[0].vertex") != std::string::npos);
  }
  SUBCASE("unparsable certificate") {
    const auto r = run({"certify", "--certificate", dir.write("c.json", R"({"lambda": 1.5, "pairs": []})"),
                        "--input", input});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("lambda") != std::string::npos);
  }
}

TEST_CASE("polar and general-position commands") {
  TempDir dir;
  SUBCASE("polar of the cross-polytope") {
    const auto input = dir.write("l1.json", R"({"dim": 3, "vertices":
      [["1","0","0"],["-1","0","0"],["0","1","0"],["0","-1","0"],["0","0","1"],["0","0","-1"]]})");
    const auto r = run({"polar", "--input", input});
    CHECK(r.code == cli::kOk);
    const auto duals = parse(r.out)["dual_vertices"];
    CHECK(duals.size() == 8);
    for (const auto& f : duals)
      for (const auto& x : f) CHECK((x == "1" || x == "-1"));
  }
  SUBCASE("coordinate plane of l1^4 is not in general position") {
    const auto input = dir.write("in.json", io::dump(io::problem_to_json(
        catalog::l1_ball(4), Subspace::from_basis(4, {{0, 0, 1, 0}, {0, 0, 0, 1}}))));
    const auto r = run({"general-position", "--input", input});
    CHECK(r.code == cli::kOk);
    const auto j = parse(r.out);
    CHECK(j["in_general_position"] == false);
    CHECK(j["witness_kind"] == "vertex_span");
    CHECK(run({"general-position", "--input", input, "--subset-cap", "1"}).code == cli::kBudgetExceeded);
  }
}
