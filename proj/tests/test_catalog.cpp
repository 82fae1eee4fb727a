#include "minproj/catalog.hpp"
#include "minproj/io.hpp"
#include "minproj/linalg.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace minproj;
using minproj::testing::q;

TEST_CASE("l1 and l_inf balls") {
  const auto l1 = catalog::l1_ball(3);
  CHECK(l1.primal().size() == 6);
  CHECK(l1.dual().size() == 8);
  const auto linf = catalog::linf_ball(3);
  CHECK(linf.primal().size() == 8);
  CHECK(linf.dual().size() == 6);
  const auto polar = polar_dual(l1.primal());
  CHECK(std::set<Vector>(polar.begin(), polar.end()) ==
        std::set<Vector>(linf.primal().begin(), linf.primal().end()));
}

TEST_CASE("mixed ball") {
  const auto ball = catalog::mixed_ball(5, 3);
  CHECK(ball.primal().size() == 16);
  for (std::size_t i = 0; i < ball.primal().size(); ++i) CHECK(is_extreme(ball.primal(), i));
  CHECK(norm_eval(ball, Vector{1, 1, 1, 1, 2}) == 4);

  // k = 2 is the l1 ball.
  const auto as_l1 = catalog::mixed_ball(4, 2);
  const auto l1 = catalog::l1_ball(4);
  CHECK(std::set<Vector>(as_l1.primal().begin(), as_l1.primal().end()) ==
        std::set<Vector>(l1.primal().begin(), l1.primal().end()));
  CHECK_THROWS(catalog::mixed_ball(4, 4));
  CHECK_THROWS(catalog::mixed_ball(4, 1));
}

TEST_CASE("catalog cases") {
  const auto cases = catalog::paper_cases();
  CHECK(cases.size() == 27);
  std::set<std::string> names;
  for (const auto& c : cases) {
    names.insert(c.name);
    REQUIRE(c.expected);
    CHECK(!c.expected->source.empty());
    CHECK(c.subspace.ambient_dim() == c.space.dim());
    CHECK(c.space.dim() >= 3);
    CHECK(c.space.dim() <= 5);
  }
  CHECK(names.size() == cases.size());
  CHECK(std::is_sorted(cases.begin(), cases.end(),
                       [](const auto& a, const auto& b) { return a.name < b.name; }));

  auto find = [&](const std::string& name) -> const catalog::NamedCase& {
    for (const auto& c : cases)
      if (c.name == name) return c;
    FAIL("missing case " << name);
    throw;
  };
  CHECK(find("linf_sum_hyperplane_n4").expected->lambda == q("3/2"));
  CHECK(find("linf_sum_hyperplane_n4").expected->face_dim == 0);
  CHECK(find("linf_partial_sum_n5_k3").expected->lambda == q("4/3"));
  CHECK(find("linf_partial_sum_n5_k3").expected->face_dim == 2);
  CHECK(find("l1_coordinate_n4_k2").expected->lambda == 1);
  CHECK(find("l1_coordinate_n4_k2").expected->face_dim == 4);
  CHECK(find("mixed_n5_k3").expected->face_dim == 4);
  CHECK(find("sum_max_n4").expected->face_dim == 2);
}

TEST_CASE("random_subspace") {
  const auto a = catalog::random_subspace(4, 3, 1);
  const auto b = catalog::random_subspace(4, 3, 1);
  CHECK(a.basis() == b.basis());
  const auto c = catalog::random_subspace(4, 3, 2);
  CHECK(reduced_row_echelon(a.basis().transpose()).reduced !=
        reduced_row_echelon(c.basis().transpose()).reduced);
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    const auto line = catalog::random_subspace(3, 1, seed);
    CHECK(rank(line.basis()) == 1);
  }
  // Pinned first basis vector for seed 1: guards the generator stream.
  CHECK(a.basis().column(0) == Vector{q("-69/5"), q("-8"), q("-24"), q("61/6")});
}

TEST_CASE("catalog cases round-trip through the JSON input format") {
  for (const auto& c : catalog::paper_cases()) {
    const std::string text = io::dump(io::problem_to_json(c.space, c.subspace));
    const auto back = io::parse_problem(text);
    CHECK(back.space.primal() == c.space.primal());
    CHECK(back.space.dual() == c.space.dual());
    CHECK(back.subspace.basis() == c.subspace.basis());
    CHECK(io::dump(io::problem_to_json(back.space, back.subspace)) == text);
  }
}
