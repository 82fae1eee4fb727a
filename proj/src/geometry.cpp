#include "minproj/geometry.hpp"

#include "minproj/error.hpp"
#include "minproj/linalg.hpp"
#include "minproj/lp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace minproj {

namespace {

Vector negated(const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

std::string describe(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
  os << ')';
  return os.str();
}

void require_dims(const std::vector<Vector>& vs, std::size_t n, const char* what) {
  for (const auto& v : vs) {
    if (v.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": vertex of length " +
                                                    std::to_string(v.size()) + " in dimension " +
                                                    std::to_string(n));
    }
  }
}

// For every vertex the index of its negation. Throws NOT_SYMMETRIC.
std::vector<std::size_t> negation_map(const std::vector<Vector>& vs, const char* what) {
  std::map<Vector, std::size_t> index;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!index.emplace(vs[i], i).second) {
      throw Error(ErrorCode::InvalidInput,
                  std::string(what) + ": duplicate vertex " + describe(vs[i]) + " is not extreme (extremality violation)");
    }
  }
  std::vector<std::size_t> neg(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto it = index.find(negated(vs[i]));
    if (it == index.end()) {
      throw Error(ErrorCode::NotSymmetric,
                  std::string(what) + ": negation of " + describe(vs[i]) + " is missing");
    }
    neg[i] = it->second;
  }
  return neg;
}

void require_full_dimensional(const std::vector<Vector>& vs, std::size_t n, const char* what) {
  if (vs.empty() || rank(Matrix::from_rows(vs, n)) < n) {
    throw Error(ErrorCode::NotFullDimensional,
                std::string(what) + ": vertices do not span dimension " + std::to_string(n));
  }
}

Rational max_pairing(const Vector& x, const std::vector<Vector>& others) {
  Rational best = dot(x, others.front());
  for (std::size_t i = 1; i < others.size(); ++i) {
    Rational v = dot(x, others[i]);
    if (v > best) best = std::move(v);
  }
  return best;
}

// Calls visit(subset) for every subset of {0..count-1} of size 1..max_size,
// ordered by size then lexicographically. Stops when visit returns false.
template <class Visit>
void for_each_subset(std::size_t count, std::size_t max_size, Visit&& visit) {
  for (std::size_t size = 1; size <= std::min(count, max_size); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      if (!visit(std::as_const(idx))) return;
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == count - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

// Primitive integer representative of a ray direction.
Vector primitive(Vector v) {
  mpz_class den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class num = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return v;
  for (auto& x : v) x = Rational(x.get_num() * (den / x.get_den()) / g);
  return v;
}

struct Ray {
  Vector dir;
  std::vector<bool> zeros;  // rows processed so far on which dir is tight
};

}  // namespace

PolyhedralSpace PolyhedralSpace::from_vertices(std::vector<Vector> vertices) {
  PolyhedralSpace s;
  s.dim_ = vertices.empty() ? 0 : vertices.front().size();
  s.dual_ = polar_dual(vertices);
  s.primal_ = std::move(vertices);
  s.validate();
  return s;
}

PolyhedralSpace PolyhedralSpace::from_vertices_and_duals(std::vector<Vector> vertices,
                                                         std::vector<Vector> dual_vertices) {
  PolyhedralSpace s;
  s.dim_ = vertices.empty() ? 0 : vertices.front().size();
  s.primal_ = std::move(vertices);
  s.dual_ = std::move(dual_vertices);
  s.validate();
  return s;
}

void PolyhedralSpace::validate() {
  if (dim_ == 0) throw Error(ErrorCode::InvalidInput, "space: no vertices");
  require_dims(primal_, dim_, "vertices");
  require_dims(dual_, dim_, "dual_vertices");
  primal_neg_ = negation_map(primal_, "vertices");
  dual_neg_ = negation_map(dual_, "dual_vertices");
  require_full_dimensional(primal_, dim_, "vertices");
  require_full_dimensional(dual_, dim_, "dual_vertices");
  for (const auto& v : primal_) {
    if (max_pairing(v, dual_) != 1) {
      throw Error(ErrorCode::InvalidInput,
                  "vertices: " + describe(v) + " does not have norm 1 under the dual vertices");
    }
  }
  for (const auto& f : dual_) {
    if (max_pairing(f, primal_) != 1) {
      throw Error(ErrorCode::InvalidInput,
                  "dual_vertices: " + describe(f) + " does not attain 1 on the unit ball");
    }
  }
  for (std::size_t i = 0; i < primal_.size(); ++i) {
    if (!is_extreme(primal_, i)) {
      throw Error(ErrorCode::InvalidInput,
                  "vertices: " + describe(primal_[i]) + " is not extreme (extremality violation)");
    }
  }
  for (std::size_t j = 0; j < dual_.size(); ++j) {
    if (!is_extreme(dual_, j)) {
      throw Error(ErrorCode::InvalidInput,
                  "dual_vertices: " + describe(dual_[j]) + " is not extreme (extremality violation)");
    }
  }
}

Subspace Subspace::from_basis(std::size_t ambient_dim, const std::vector<Vector>& basis) {
  require_dims(basis, ambient_dim, "subspace_basis");
  const std::size_t k = basis.size();
  if (k == 0 || k >= ambient_dim) {
    throw Error(ErrorCode::InvalidInput, "subspace_basis: dimension " + std::to_string(k) +
                                             " is not a proper nonzero subspace of dimension " +
                                             std::to_string(ambient_dim));
  }
  Matrix b = Matrix::from_columns(basis, ambient_dim);
  if (rank(b) != k) {
    throw Error(ErrorCode::InvalidInput, "subspace_basis: vectors are linearly dependent");
  }
  Matrix ann = nullspace_basis(b.transpose());
  return Subspace(std::move(b), std::move(ann));
}

Subspace Subspace::from_equations(std::size_t ambient_dim, const std::vector<Vector>& functionals) {
  require_dims(functionals, ambient_dim, "equations");
  const Matrix f = Matrix::from_rows(functionals, ambient_dim);
  if (functionals.empty() || rank(f) != functionals.size()) {
    throw Error(ErrorCode::InvalidInput, "equations: functionals must be nonempty and independent");
  }
  Matrix b = nullspace_basis(f);
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < b.cols(); ++c) cols.push_back(b.column(c));
  return from_basis(ambient_dim, cols);
}

bool Subspace::contains(std::span<const Rational> x) const {
  if (x.size() != ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "contains: length mismatch");
  return (annihilator_.transpose() * x) == Vector(annihilator_.cols());
}

Rational norm_eval(const PolyhedralSpace& space, std::span<const Rational> x) {
  if (x.size() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "norm_eval: vector length != dimension");
  }
  const auto& duals = space.dual();
  Rational best = dot(duals.front(), x);
  for (std::size_t j = 1; j < duals.size(); ++j) {
    Rational v = dot(duals[j], x);
    if (v > best) best = std::move(v);
  }
  return best;
}

std::vector<Vector> polar_dual(const std::vector<Vector>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::NotFullDimensional, "polar_dual: no vertices");
  const std::size_t n = vertices.front().size();
  require_dims(vertices, n, "polar_dual");
  {
    // Symmetry as a set; duplicates are harmless here.
    std::set<Vector> pts(vertices.begin(), vertices.end());
    for (const auto& v : pts) {
      if (!pts.count(negated(v))) {
        throw Error(ErrorCode::NotSymmetric, "polar_dual: negation of " + describe(v) + " is missing");
      }
    }
  }
  require_full_dimensional(vertices, n, "polar_dual");

  // Cone {(f, s) : s - v·f >= 0 for every v}; its extreme rays are (f, 1)
  // for the polar vertices f.
  const std::size_t d = n + 1;
  std::vector<Vector> rows;
  for (const auto& v : vertices) {
    Vector row(d);
    for (std::size_t i = 0; i < n; ++i) row[i] = -v[i];
    row[n] = 1;
    rows.push_back(std::move(row));
  }
  const std::size_t m = rows.size();

  // Initial simplicial cone from the first d independent rows.
  std::vector<std::size_t> initial;
  std::vector<Vector> chosen;
  for (std::size_t i = 0; i < m && initial.size() < d; ++i) {
    chosen.push_back(rows[i]);
    if (rank(Matrix::from_rows(chosen, d)) == chosen.size()) {
      initial.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  const Matrix a0 = Matrix::from_rows(chosen, d);
  std::vector<bool> processed(m, false);
  for (auto i : initial) processed[i] = true;

  std::vector<Ray> rays;
  for (std::size_t k = 0; k < d; ++k) {
    Vector unit(d);
    unit[k] = 1;
    Ray ray{primitive(*solve_linear(a0, unit)), std::vector<bool>(m, false)};
    for (std::size_t j = 0; j < d; ++j) ray.zeros[initial[j]] = (j != k);
    rays.push_back(std::move(ray));
  }

  for (std::size_t row = 0; row < m; ++row) {
    if (processed[row]) continue;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(rows[row], rays[r].dir);
      if (sgn(val[r]) > 0) pos.push_back(r);
      else if (sgn(val[r]) < 0) neg.push_back(r);
    }
    processed[row] = true;
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (sgn(val[r]) == 0) rays[r].zeros[row] = true;
      }
      continue;
    }

    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sgn(val[r]) < 0) continue;
      Ray kept = rays[r];
      if (sgn(val[r]) == 0) kept.zeros[row] = true;
      next.push_back(std::move(kept));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        std::vector<bool> common(m, false);
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) {
          common[i] = rays[p].zeros[i] && rays[q].zeros[i];
          count += common[i];
        }
        if (count + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool superset = true;
          for (std::size_t i = 0; i < m && superset; ++i) {
            if (common[i] && !rays[r].zeros[i]) superset = false;
          }
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        Vector dir(d);
        for (std::size_t i = 0; i < d; ++i) dir[i] = val[p] * rays[q].dir[i] - val[q] * rays[p].dir[i];
        common[row] = true;
        next.push_back(Ray{primitive(std::move(dir)), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<Vector> out;
  for (const auto& ray : rays) {
    const Rational& s = ray.dir[n];
    if (sgn(s) <= 0) {
      throw Error(ErrorCode::NotFullDimensional, "polar_dual: polar is unbounded");
    }
    Vector f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = ray.dir[i] / s;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_extreme(const std::vector<Vector>& vertices, std::size_t index) {
  const Vector& v = vertices.at(index);
  const std::size_t n = v.size();
  if (vertices.size() == 1) return true;
  // v is extreme iff some affine functional separates it strictly from the
  // other points: maximize f·v - c s.t. f·u - c <= 0 for u != v and
  // f·v - c <= 1. The optimum is 1 when v is extreme and 0 otherwise.
  std::vector<Vector> rows;
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    if (j == index) continue;
    Vector row(vertices[j]);
    row.push_back(-1);
    rows.push_back(std::move(row));
  }
  Vector top(v);
  top.push_back(-1);
  rows.push_back(top);
  Vector rhs(rows.size());
  rhs.back() = 1;
  for (auto& x : top) x = -x;
  const auto sol = solve({top, Matrix::from_rows(rows, n + 1), rhs});
  return sol.status == LPStatus::Optimal && sgn(sol.value) < 0;
}

const char* to_string(GeneralPositionResult::WitnessKind kind) {
  switch (kind) {
    case GeneralPositionResult::WitnessKind::None: return "none";
    case GeneralPositionResult::WitnessKind::VertexSpan: return "vertex_span";
    case GeneralPositionResult::WitnessKind::KernelIntersection: return "kernel_intersection";
  }
  return "unknown";
}

GeneralPositionResult general_position_check(const PolyhedralSpace& space, const Subspace& y,
                                             std::uint64_t subset_cap) {
  const std::size_t n = space.dim();
  const std::size_t k = y.dim();
  if (y.ambient_dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "general_position_check: subspace dimension mismatch");
  }
  const Matrix y_rows = y.basis().transpose();
  GeneralPositionResult result;

  // Z is given by the canonical rows of a spanning set of Z (spans) or of
  // Z's annihilator (kernels). Returns false on a violation.
  auto check = [&](const std::vector<Vector>& z_rows, std::size_t dim_z) {
    Matrix stacked(k + z_rows.size(), n);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(r, c) = y_rows(r, c);
    for (std::size_t r = 0; r < z_rows.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(k + r, c) = z_rows[r][c];
    return rank(stacked) == std::min(k + dim_z, n);
  };

  auto representatives = [](const std::vector<Vector>& vs, auto negation) {
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (negation(i) > i) reps.push_back(i);
    }
    return reps;
  };

  std::set<std::vector<Rational>> seen;
  auto note_subset = [&](const Matrix& canonical) {
    std::vector<Rational> key(canonical.entries());
    key.push_back(Rational(static_cast<long>(canonical.rows())));
    if (!seen.insert(std::move(key)).second) return false;
    if (++result.subsets_examined > subset_cap) {
      throw Error(ErrorCode::SubsetBudgetExceeded,
                  "general_position_check: more than " + std::to_string(subset_cap) +
                      " distinct subsets");
    }
    return true;
  };

  auto scan = [&](const std::vector<Vector>& vs, const std::vector<std::size_t>& reps,
                  GeneralPositionResult::WitnessKind kind) {
    const bool kernels = kind == GeneralPositionResult::WitnessKind::KernelIntersection;
    for_each_subset(reps.size(), n, [&](const std::vector<std::size_t>& subset) {
      std::vector<Vector> picked;
      for (auto i : subset) picked.push_back(vs[reps[i]]);
      const RowEchelon ech = reduced_row_echelon(Matrix::from_rows(picked, n));
      if (!note_subset(ech.reduced)) return true;
      std::vector<Vector> z_rows;
      std::size_t dim_z = 0;
      if (kernels) {
        const Matrix ker = nullspace_basis(ech.reduced);
        dim_z = ker.cols();
        for (std::size_t c = 0; c < ker.cols(); ++c) z_rows.push_back(ker.column(c));
      } else {
        dim_z = ech.reduced.rows();
        for (std::size_t r = 0; r < ech.reduced.rows(); ++r) {
          z_rows.emplace_back(ech.reduced.row(r).begin(), ech.reduced.row(r).end());
        }
      }
      if (check(z_rows, dim_z)) return true;
      result.in_general_position = false;
      result.witness_kind = kind;
      for (auto i : subset) result.witness.push_back(reps[i]);
      return false;
    });
  };

  scan(space.primal(),
       representatives(space.primal(), [&](std::size_t i) { return space.primal_negation(i); }),
       GeneralPositionResult::WitnessKind::VertexSpan);
  if (!result.in_general_position) return result;
  seen.clear();
  scan(space.dual(),
       representatives(space.dual(), [&](std::size_t j) { return space.dual_negation(j); }),
       GeneralPositionResult::WitnessKind::KernelIntersection);
  return result;
}

}  // namespace minproj
