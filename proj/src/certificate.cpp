#include "minproj/certificate.hpp"

#include "minproj/error.hpp"
#include "minproj/linalg.hpp"

#include <set>

namespace minproj {

namespace {

bool pairs_in_range(const PolyhedralSpace& space, const CMFunctional& cm) {
  for (const auto& p : cm.pairs) {
    if (p.vertex >= space.primal().size() || p.functional >= space.dual().size()) return false;
  }
  return true;
}

// Coordinates of the functional L -> f(L x) on the operator basis.
Vector pairing_coordinates(const OperatorBasis& basis, const PolyhedralSpace& space,
                           const NormingPair& pair) {
  const Vector& x = space.primal()[pair.vertex];
  const Vector& f = space.dual()[pair.functional];
  Vector out(basis.size());
  for (std::size_t op = 0; op < basis.size(); ++op) out[op] = dot(f, basis.ops[op] * x);
  return out;
}

}  // namespace

Matrix CMFunctional::operator_matrix(const PolyhedralSpace& space) const {
  const std::size_t n = space.dim();
  Matrix t(n, n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    t = t + weights[i] * outer(space.primal()[pairs[i].vertex], space.dual()[pairs[i].functional]);
  }
  return t;
}

Rational restricted_trace(const PolyhedralSpace& space, const Subspace& y, const CMFunctional& cm) {
  const Matrix t = cm.operator_matrix(space);
  const Matrix& b = y.basis();
  Rational trace = 0;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const auto coords = solve_linear(b, t * b.column(j));
    if (!coords) throw Error(ErrorCode::CertificateInvalid, "restricted_trace: T(Y) is not inside Y");
    trace += (*coords)[j];
  }
  return trace;
}

CMVerification verify_cm(const PolyhedralSpace& space, const Subspace& y, const CMFunctional& cm,
                         const Rational& lambda, const Matrix& projection) {
  CMVerification v;
  auto fail = [&](const std::string& what) {
    if (v.detail.empty()) v.detail = what;
  };

  if (cm.pairs.size() != cm.weights.size() || cm.pairs.empty() || !pairs_in_range(space, cm)) {
    fail("weights: malformed pair list");
    return v;
  }
  Rational sum = 0;
  bool positive = true;
  for (const auto& w : cm.weights) {
    sum += w;
    positive = positive && sgn(w) > 0;
  }
  const std::set<NormingPair> distinct(cm.pairs.begin(), cm.pairs.end());
  v.weights = positive && sum == 1 && distinct.size() == cm.pairs.size();
  if (!v.weights) fail("weights: must be positive, distinct pairs, sum 1 (sum = " + to_string(sum) + ")");

  const OperatorBasis basis = build_operator_basis(y);
  v.vanishing = true;
  for (std::size_t op = 0; op < basis.size() && v.vanishing; ++op) {
    Rational total = 0;
    for (std::size_t i = 0; i < cm.pairs.size(); ++i) {
      const Vector& x = space.primal()[cm.pairs[i].vertex];
      const Vector& f = space.dual()[cm.pairs[i].functional];
      total += cm.weights[i] * dot(f, basis.ops[op] * x);
    }
    if (sgn(total) != 0) {
      v.vanishing = false;
      fail("vanishing: T(L) = " + to_string(total) + " for basis operator " + std::to_string(op));
    }
  }

  const Matrix t = cm.operator_matrix(space);
  const Matrix image = y.annihilator().transpose() * (t * y.basis());
  v.invariance = image.is_zero();
  if (!v.invariance) fail("invariance: T maps a basis vector of Y outside Y");

  v.norming = true;
  for (std::size_t i = 0; i < cm.pairs.size(); ++i) {
    const Rational value =
        dot(space.dual()[cm.pairs[i].functional], projection * space.primal()[cm.pairs[i].vertex]);
    if (value != lambda) {
      v.norming = false;
      fail("norming: f(Px) = " + to_string(value) + " != lambda = " + to_string(lambda) +
           " at pair (" + std::to_string(cm.pairs[i].vertex) + ", " +
           std::to_string(cm.pairs[i].functional) + ")");
      break;
    }
  }

  if (v.invariance) {
    v.trace_value = restricted_trace(space, y, cm);
    v.trace = v.trace_value == lambda;
    if (!v.trace) fail("trace: trace(T|_Y) = " + to_string(v.trace_value) + " != lambda = " + to_string(lambda));
  } else {
    fail("trace: undefined without T(Y) inside Y");
  }
  return v;
}

CMFunctional cm_from_dual(const ProjectionProblem& problem, const MinProjReport& report) {
  CMFunctional cm;
  Rational total = 0;
  for (const auto& [pair, weight] : report.dual_certificate) total += weight;
  if (sgn(total) <= 0) throw Error(ErrorCode::CertificateInvalid, "cm_from_dual: empty dual certificate");
  for (const auto& [pair, weight] : report.dual_certificate) {
    cm.pairs.push_back(pair);
    cm.weights.push_back(weight / total);
  }
  const auto check = verify_cm(problem.space(), problem.subspace(), cm, report.lambda,
                               problem.realize(report.witness));
  if (!check.ok()) throw Error(ErrorCode::CertificateInvalid, "cm_from_dual: " + check.detail);
  return cm;
}

MinimalSupportResult minimal_support_cm(const ProjectionProblem& problem,
                                        const std::vector<NormingPair>& candidate_pairs,
                                        SupportSearchLimits limits) {
  const std::size_t count = candidate_pairs.size();
  if (count > limits.max_candidates) {
    throw Error(ErrorCode::SupportBudgetExceeded,
                "minimal_support_cm: " + std::to_string(count) + " candidate pairs exceed the cap of " +
                    std::to_string(limits.max_candidates));
  }
  const std::size_t dim = problem.operator_dim();
  std::vector<Vector> coords;
  for (const auto& pair : candidate_pairs) {
    coords.push_back(pairing_coordinates(problem.basis(), problem.space(), pair));
  }

  MinimalSupportResult result;
  for (std::size_t size = 1; size <= count; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      if (++result.subsets_tested > limits.max_subsets) {
        throw Error(ErrorCode::SupportBudgetExceeded,
                    "minimal_support_cm: more than " + std::to_string(limits.max_subsets) + " subsets");
      }
      // [W_S; 1ᵀ] α = [0; 1]
      Matrix system(dim + 1, size);
      for (std::size_t c = 0; c < size; ++c) {
        for (std::size_t r = 0; r < dim; ++r) system(r, c) = coords[idx[c]][r];
        system(dim, c) = 1;
      }
      Vector rhs(dim + 1);
      rhs[dim] = 1;
      if (solve_linear(system, rhs)) {
        // Nonnegativity: α >= 0 with the equality system as row pairs.
        std::vector<Vector> rows;
        Vector b;
        for (std::size_t r = 0; r <= dim; ++r) {
          Vector row(system.row(r).begin(), system.row(r).end());
          rows.push_back(row);
          b.push_back(rhs[r]);
          for (auto& x : row) x = -x;
          rows.push_back(std::move(row));
          b.push_back(-rhs[r]);
        }
        for (std::size_t c = 0; c < size; ++c) {
          Vector row(size);
          row[c] = -1;
          rows.push_back(std::move(row));
          b.push_back(0);
        }
        const auto sol = solve({Vector(size), Matrix::from_rows(rows, size), b});
        if (sol.status == LPStatus::Optimal) {
          // Every smaller subset failed, so all weights are positive.
          for (std::size_t c = 0; c < size; ++c) {
            if (sgn(sol.primal[c]) <= 0) {
              throw Error(ErrorCode::CertificateInvalid, "minimal_support_cm: zero weight at minimum support");
            }
            result.cm.pairs.push_back(candidate_pairs[idx[c]]);
            result.cm.weights.push_back(sol.primal[c]);
          }
          result.support = size;
          return result;
        }
      }
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == count - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  throw Error(ErrorCode::CertificateInvalid, "minimal_support_cm: no certificate among the candidates");
}

RankGap cm_rank_gap(const PolyhedralSpace& space, const Subspace& y, const CMFunctional& cm,
                    const Rational& lambda) {
  const std::size_t n = space.dim();
  std::vector<Vector> full;
  for (const auto& p : cm.pairs) full.push_back(space.dual()[p.functional]);
  const Matrix f = Matrix::from_rows(full, n);
  RankGap gap;
  gap.rank_full = rank(f);
  gap.rank_restricted = rank(f * y.basis());
  if (lambda > 1 && gap.rank_restricted >= gap.rank_full) {
    throw Error(ErrorCode::RankGapViolation,
                "cm_rank_gap: restricted rank " + std::to_string(gap.rank_restricted) +
                    " is not below full rank " + std::to_string(gap.rank_full));
  }
  return gap;
}

}  // namespace minproj
