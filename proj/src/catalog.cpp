#include "minproj/catalog.hpp"

#include "minproj/error.hpp"
#include "minproj/linalg.hpp"

#include <algorithm>
#include <random>

namespace minproj::catalog {

namespace {

// Sign patterns of length b, (+,...,+) first.
std::vector<Vector> sign_patterns(std::size_t b) {
  std::vector<Vector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << b); ++mask) {
    Vector s(b);
    for (std::size_t i = 0; i < b; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

// ±e_1, ±e_2, ... in that order.
std::vector<Vector> signed_units(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n);
    e[i] = 1;
    out.push_back(e);
    e[i] = -1;
    out.push_back(std::move(e));
  }
  return out;
}

Vector concat(const Vector& a, const Vector& b) {
  Vector out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = 1;
  return e;
}

Vector ones_prefix(std::size_t n, std::size_t count) {
  Vector f(n);
  for (std::size_t i = 0; i < count; ++i) f[i] = 1;
  return f;
}

}  // namespace

PolyhedralSpace l1_ball(std::size_t n) {
  return PolyhedralSpace::from_vertices_and_duals(signed_units(n), sign_patterns(n));
}

PolyhedralSpace linf_ball(std::size_t n) {
  return PolyhedralSpace::from_vertices_and_duals(sign_patterns(n), signed_units(n));
}

PolyhedralSpace product_ball(std::size_t l1_block, std::size_t linf_block) {
  if (l1_block == 0) throw Error(ErrorCode::InvalidInput, "product_ball: empty l1 block");
  std::vector<Vector> primal;
  for (const auto& head : signed_units(l1_block)) {
    for (const auto& tail : sign_patterns(linf_block)) primal.push_back(concat(head, tail));
  }
  std::vector<Vector> dual;
  for (const auto& head : sign_patterns(l1_block)) dual.push_back(concat(head, Vector(linf_block)));
  for (const auto& tail : signed_units(linf_block)) dual.push_back(concat(Vector(l1_block), tail));
  return PolyhedralSpace::from_vertices_and_duals(std::move(primal), std::move(dual));
}

PolyhedralSpace mixed_ball(std::size_t n, std::size_t k) {
  if (k < 2 || k + 1 > n) throw Error(ErrorCode::InvalidInput, "mixed_ball: need 2 <= k <= n - 1");
  return product_ball(n - k + 2, k - 2);
}

std::vector<NamedCase> paper_cases() {
  std::vector<NamedCase> cases;
  auto ratio = [](long p, std::size_t q) {
    Rational r(p, static_cast<long>(q));
    r.canonicalize();
    return r;
  };
  auto add = [&](std::string name, PolyhedralSpace space, Subspace y, Rational lambda,
                 std::size_t face_dim, std::string source) {
    cases.push_back(NamedCase{std::move(name), std::move(space), std::move(y),
                              Expected{std::move(lambda), face_dim, std::move(source)}});
  };
  const std::string nums = "012345";

  for (std::size_t n = 3; n <= 5; ++n) {
    const std::string ns(1, nums[n]);

    // Coordinate subspace {x_i = 0, i <= n - k} of l1^n: every operator in
    // the affine slice through the coordinate projection is minimal.
    for (std::size_t k = 1; k < n; ++k) {
      std::vector<Vector> eqs;
      for (std::size_t i = 0; i < n - k; ++i) eqs.push_back(unit(n, i));
      add("l1_coordinate_n" + ns + "_k" + nums[k], l1_ball(n), Subspace::from_equations(n, eqs), 1,
          k * (n - k), "l1^n coordinate subspace: lambda = 1, dim = k(n-k)");
    }

    // Mixed l1/l_inf norm with Y = {x1 + x2 + x3 = 0, x_i = 0 for 4 <= i <= n-k+2}.
    for (std::size_t k = 2; k < n; ++k) {
      std::vector<Vector> eqs{ones_prefix(n, 3)};
      for (std::size_t i = 4; i <= n - k + 2; ++i) eqs.push_back(unit(n, i - 1));
      add("mixed_n" + ns + "_k" + nums[k], mixed_ball(n, k), Subspace::from_equations(n, eqs),
          Rational(4, 3), k * (n - k) - 2, "mixed norm: lambda = 4/3, dim = k(n-k) - 2");
    }

    // Hyperplane x1 + ... + xn = 0 in l1^n and l_inf^n.
    const Rational hyper = 2 - ratio(2, n);
    add("l1_sum_hyperplane_n" + ns, l1_ball(n), Subspace::from_equations(n, {ones_prefix(n, n)}),
        hyper, 0, "sum hyperplane: lambda = 2 - 2/n, unique minimal projection");
    add("linf_sum_hyperplane_n" + ns, linf_ball(n), Subspace::from_equations(n, {ones_prefix(n, n)}),
        hyper, 0, "sum hyperplane: lambda = 2 - 2/n, unique minimal projection");

    // l_inf^n with Y = ker(x1 + ... + xk), 3 <= k < n: dim = n - k.
    for (std::size_t k = 3; k < n; ++k) {
      add("linf_partial_sum_n" + ns + "_k" + nums[k], linf_ball(n),
          Subspace::from_equations(n, {ones_prefix(n, k)}), 2 - ratio(2, k),
          n - k, "partial sum hyperplane in l_inf^n: lambda = 2 - 2/k, dim = n - k");
    }

    // max{|x1| + ... + |x_{n-1}|, |x_n|} with Y = {x1 = 0}: dim = n - 2.
    add("sum_max_n" + ns, product_ball(n - 1, 1), Subspace::from_equations(n, {unit(n, 0)}), 1,
        n - 2, "max{l1 block, |x_n|} with Y = {x1 = 0}: lambda = 1, dim = n - 2");
  }
  std::sort(cases.begin(), cases.end(),
            [](const NamedCase& a, const NamedCase& b) { return a.name < b.name; });
  return cases;
}

Subspace random_subspace(std::size_t n, std::size_t k, std::uint32_t seed) {
  if (k == 0 || k >= n) throw Error(ErrorCode::InvalidInput, "random_subspace: need 1 <= k <= n - 1");
  std::minstd_rand gen(seed);
  auto draw = [&] {
    const long p = static_cast<long>(gen() % 201) - 100;
    const long q = static_cast<long>(gen() % 10) + 1;
    Rational r(p, q);
    r.canonicalize();
    return r;
  };
  for (;;) {
    std::vector<Vector> basis(k, Vector(n));
    for (auto& v : basis)
      for (auto& x : v) x = draw();
    if (rank(Matrix::from_rows(basis, n)) == k) return Subspace::from_basis(n, basis);
  }
}

}  // namespace minproj::catalog
