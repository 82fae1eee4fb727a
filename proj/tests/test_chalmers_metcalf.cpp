#include "minproj/catalog.hpp"
#include "minproj/certificate.hpp"
#include "minproj/error.hpp"
#include "minproj/linalg.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <optional>

using namespace minproj;
using minproj::testing::q;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = 1;
  return e;
}

struct Analysis {
  ProjectionProblem problem;
  MinProjReport report;
};

Analysis analyze(PolyhedralSpace space, Subspace y) {
  ProjectionProblem problem(std::move(space), std::move(y));
  auto report = projection_constant(problem);
  face_dimension(problem, report);
  return {std::move(problem), std::move(report)};
}

Analysis linf3_hyperplane() { return analyze(catalog::linf_ball(3), Subspace::from_equations(3, {{1, 1, 1}})); }
Analysis l1_coordinate() { return analyze(catalog::l1_ball(4), Subspace::from_basis(4, {unit(4, 2), unit(4, 3)})); }

// Brute-force minimal support: the smallest subset whose weight system
// [W; 1] a = [0; 1] has a unique, strictly positive solution.
std::size_t brute_force_support(const ProjectionProblem& problem, const std::vector<NormingPair>& pairs) {
  const auto& basis = problem.basis();
  const auto& space = problem.space();
  std::optional<std::size_t> best;
  for (std::size_t mask = 1; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<NormingPair> subset;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) subset.push_back(pairs[i]);
    Matrix system(basis.size() + 1, subset.size());
    for (std::size_t c = 0; c < subset.size(); ++c) {
      const Vector& x = space.primal()[subset[c].vertex];
      const Vector& f = space.dual()[subset[c].functional];
      for (std::size_t r = 0; r < basis.size(); ++r) system(r, c) = dot(f, basis.ops[r] * x);
      system(basis.size(), c) = 1;
    }
    Vector rhs(basis.size() + 1);
    rhs.back() = 1;
    const auto sol = solve_linear(system, rhs);
    if (!sol || rank(system) != subset.size()) continue;
    if (std::all_of(sol->begin(), sol->end(), [](const Rational& a) { return sgn(a) > 0; })) {
      if (!best || subset.size() < *best) best = subset.size();
    }
  }
  REQUIRE(best);
  return *best;
}

}  // namespace

TEST_CASE("cm_from_dual") {
  SUBCASE("l_inf^3 sum hyperplane: trace equals 4/3") {
    const auto a = linf3_hyperplane();
    const auto cm = cm_from_dual(a.problem, a.report);
    CHECK(restricted_trace(a.problem.space(), a.problem.subspace(), cm) == q("4/3"));
    const auto v = verify_cm(a.problem.space(), a.problem.subspace(), cm, a.report.lambda,
                             a.problem.realize(a.report.witness));
    CHECK(v.ok());
    CHECK(v.trace_value == q("4/3"));
  }
  SUBCASE("l1^4 coordinate plane: trace equals 1") {
    const auto a = l1_coordinate();
    const auto cm = cm_from_dual(a.problem, a.report);
    CHECK(restricted_trace(a.problem.space(), a.problem.subspace(), cm) == 1);
  }
  SUBCASE("empty certificate is rejected") {
    auto a = linf3_hyperplane();
    a.report.dual_certificate.clear();
    CHECK_THROWS_AS(cm_from_dual(a.problem, a.report), Error);
  }
}

TEST_CASE("single-pair certificate on the l1^4 coordinate plane") {
  const auto a = l1_coordinate();
  const auto& space = a.problem.space();
  std::optional<NormingPair> pair;
  for (std::size_t i = 0; i < space.primal().size() && !pair; ++i) {
    if (space.primal()[i] != unit(4, 3)) continue;
    for (std::size_t j = 0; j < space.dual().size(); ++j) {
      if (space.dual()[j] == Vector{1, 1, 1, 1}) pair = NormingPair{i, j};
    }
  }
  REQUIRE(pair);
  const CMFunctional cm{{*pair}, {1}};
  const auto v = verify_cm(space, a.problem.subspace(), cm, 1, a.problem.realize(a.report.witness));
  CHECK(v.ok());
  CHECK(v.trace_value == 1);
}

TEST_CASE("verify_cm detects broken certificates") {
  const auto a = linf3_hyperplane();
  const auto& space = a.problem.space();
  const auto& y = a.problem.subspace();
  const Matrix witness = a.problem.realize(a.report.witness);
  const auto cm = cm_from_dual(a.problem, a.report);
  CHECK(verify_cm(space, y, cm, a.report.lambda, witness).ok());

  SUBCASE("perturbed weight") {
    CMFunctional bad = cm;
    bad.weights[0] += q("1/1000");
    Rational sum = 0;
    for (const auto& w : bad.weights) sum += w;
    for (auto& w : bad.weights) w /= sum;
    const auto v = verify_cm(space, y, bad, a.report.lambda, witness);
    CHECK_FALSE(v.ok());
    CHECK(v.weights);
    CHECK_FALSE(v.vanishing);
    CHECK(v.detail.rfind("vanishing", 0) == 0);
  }
  SUBCASE("non-minimal projection") {
    const Matrix p0 = build_operator_basis(y).base_projection;
    REQUIRE(p0 != witness);
    const auto v = verify_cm(space, y, cm, a.report.lambda, p0);
    CHECK(v.weights);
    CHECK(v.vanishing);
    CHECK(v.invariance);
    CHECK_FALSE(v.norming);
    CHECK(v.detail.rfind("norming", 0) == 0);
  }
  SUBCASE("weights not summing to one") {
    CMFunctional bad = cm;
    for (auto& w : bad.weights) w *= q("9/10");
    const auto v = verify_cm(space, y, bad, a.report.lambda, witness);
    CHECK_FALSE(v.weights);
    CHECK_FALSE(v.trace);
  }
  SUBCASE("out-of-range index") {
    CMFunctional bad = cm;
    bad.pairs[0].vertex = 1000;
    CHECK_FALSE(verify_cm(space, y, bad, a.report.lambda, witness).ok());
  }
}

TEST_CASE("minimal_support_cm") {
  SUBCASE("l_inf^3 sum hyperplane has support 3") {
    const auto a = linf3_hyperplane();
    const auto result = minimal_support_cm(a.problem, a.report.implicit_pairs);
    CHECK(result.support == 3);
    CHECK(result.support == brute_force_support(a.problem, a.report.norming_pairs_of_witness));
    const auto v = verify_cm(a.problem.space(), a.problem.subspace(), result.cm, a.report.lambda,
                             a.problem.realize(a.report.witness));
    CHECK(v.ok());
  }
  SUBCASE("l1^4 coordinate plane has support 1") {
    const auto a = l1_coordinate();
    const auto result = minimal_support_cm(a.problem, a.report.implicit_pairs);
    CHECK(result.support == 1);
    CHECK(brute_force_support(a.problem, a.report.implicit_pairs) == 1);
  }
  SUBCASE("lambda > 1 never has support below 3") {
    for (const auto& space : {catalog::l1_ball(4), catalog::linf_ball(4)}) {
      const auto a = analyze(space, Subspace::from_equations(4, {{1, 1, 1, 1}}));
      REQUIRE(a.report.lambda > 1);
      const auto result = minimal_support_cm(a.problem, a.report.implicit_pairs);
      CHECK(result.support >= 3);
      CHECK(result.support == brute_force_support(a.problem, a.report.implicit_pairs));
    }
  }
  SUBCASE("budget") {
    const auto a = linf3_hyperplane();
    try {
      minimal_support_cm(a.problem, a.report.implicit_pairs, {2, 1000});
      FAIL("expected budget error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SupportBudgetExceeded);
    }
    try {
      minimal_support_cm(a.problem, a.report.implicit_pairs, {24, 2});
      FAIL("expected budget error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SupportBudgetExceeded);
    }
  }
}

TEST_CASE("cm_rank_gap") {
  SUBCASE("lambda > 1") {
    const auto a = linf3_hyperplane();
    const auto cm = minimal_support_cm(a.problem, a.report.implicit_pairs).cm;
    const auto gap = cm_rank_gap(a.problem.space(), a.problem.subspace(), cm, a.report.lambda);
    CHECK(gap.rank_full >= 2);
    CHECK(gap.rank_restricted + 1 <= gap.rank_full);
  }
  SUBCASE("lambda = 1 reports ranks only") {
    const auto a = l1_coordinate();
    const auto cm = cm_from_dual(a.problem, a.report);
    const auto gap = cm_rank_gap(a.problem.space(), a.problem.subspace(), cm, 1);
    CHECK(gap.rank_full >= 1);
  }
  SUBCASE("single functional, nonzero on Y") {
    const auto a = l1_coordinate();
    const auto& space = a.problem.space();
    std::size_t j = 0;
    while (space.dual()[j] != Vector{1, 1, 1, 1}) ++j;
    const CMFunctional cm{{NormingPair{0, j}}, {1}};
    const auto gap = cm_rank_gap(space, a.problem.subspace(), cm, 1);
    CHECK(gap.rank_full == 1);
    CHECK(gap.rank_restricted == 1);
    try {
      cm_rank_gap(space, a.problem.subspace(), cm, q("4/3"));
      FAIL("expected RANK_GAP_VIOLATION");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RankGapViolation);
    }
  }
}
