#pragma once

#include "minproj/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minproj::catalog {

/// Cross-polytope ±e_i with the cube as dual ball.
PolyhedralSpace l1_ball(std::size_t n);
/// Cube with the cross-polytope as dual ball.
PolyhedralSpace linf_ball(std::size_t n);

/// Norm max{|x_1| + ... + |x_a|, |x_{a+1}|, ..., |x_{a+b}|}: the ℓ1 ball on the
/// first a coordinates times the cube on the last b.
PolyhedralSpace product_ball(std::size_t l1_block, std::size_t linf_block);

/// max{Σ_{i <= n-k+2} |x_i|, |x_{n-k+3}|, ..., |x_n|}, for 2 <= k <= n - 1.
PolyhedralSpace mixed_ball(std::size_t n, std::size_t k);

struct Expected {
  Rational lambda;
  std::size_t face_dim = 0;
  std::string source;  // the construction the values come from
};

struct NamedCase {
  std::string name;
  PolyhedralSpace space;
  Subspace subspace;
  std::optional<Expected> expected;
};

/// Every explicit construction with known projection constant and face
/// dimension, instantiated for n in {3, 4, 5}, sorted by name.
std::vector<NamedCase> paper_cases();

/// Seeded pseudorandom subspace. Entries p/q with |p| <= 100, 1 <= q <= 10
/// drawn from std::minstd_rand; rank-deficient draws are redrawn.
Subspace random_subspace(std::size_t n, std::size_t k, std::uint32_t seed);

}  // namespace minproj::catalog
