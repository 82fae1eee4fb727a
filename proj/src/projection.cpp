#include "minproj/projection.hpp"

#include "minproj/error.hpp"
#include "minproj/linalg.hpp"

#include <algorithm>
#include <set>

namespace minproj {

namespace {

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < n; ++c) {
    Vector e(n);
    e[c] = 1;
    auto x = solve_linear(m, e);
    if (!x) throw Error(ErrorCode::InvalidInput, "inverse: singular matrix");
    cols.push_back(std::move(*x));
  }
  return Matrix::from_columns(cols, n);
}

}  // namespace

OperatorBasis build_operator_basis(const Subspace& y) {
  const std::size_t n = y.ambient_dim();
  const std::size_t k = y.dim();
  const Matrix& b = y.basis();

  Matrix frame = b;
  for (std::size_t j = 0; j < n && frame.cols() < n; ++j) {
    Vector e(n);
    e[j] = 1;
    Matrix candidate = hconcat(frame, Matrix::from_columns({e}, n));
    if (rank(candidate) == candidate.cols()) frame = std::move(candidate);
  }
  // P0 fixes Y and kills the chosen complement: P0 · frame = [B | 0].
  const Matrix target = hconcat(b, Matrix(n, n - k));
  OperatorBasis out;
  out.base_projection = target * inverse(frame);

  const Matrix& g = y.annihilator();
  for (std::size_t i = 0; i < k; ++i) {
    const Vector yi = b.column(i);
    for (std::size_t j = 0; j < g.cols(); ++j) {
      out.ops.push_back(outer(yi, g.column(j)));
      out.labels.emplace_back(i, j);
    }
  }
  return out;
}

ProjectionProblem::ProjectionProblem(PolyhedralSpace space, Subspace y)
    : space_(std::move(space)), y_(std::move(y)), basis_(build_operator_basis(y_)) {
  if (y_.ambient_dim() != space_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "ProjectionProblem: subspace lives in another dimension");
  }
  const auto& primal = space_.primal();
  const auto& dual = space_.dual();
  const std::size_t ops = basis_.size();
  const Matrix& yb = y_.basis();
  const Matrix& g = y_.annihilator();

  // Per-vertex data: g_j(x) and P0 x; per-functional data: f(y_i).
  std::vector<Vector> g_of_x(primal.size());
  std::vector<Vector> p0x(primal.size());
  const Matrix gt = g.transpose();
  for (std::size_t a = 0; a < primal.size(); ++a) {
    g_of_x[a] = gt * primal[a];
    p0x[a] = basis_.base_projection * primal[a];
  }
  const Matrix ybt = yb.transpose();
  std::vector<Vector> f_of_y(dual.size());
  for (std::size_t b = 0; b < dual.size(); ++b) f_of_y[b] = ybt * dual[b];

  std::vector<Vector> rows;
  for (std::size_t a = 0; a < primal.size(); ++a) {
    for (std::size_t b = 0; b < dual.size(); ++b) {
      const NormingPair pair{a, b};
      const NormingPair antipode{space_.primal_negation(a), space_.dual_negation(b)};
      if (!(pair < antipode)) continue;
      Vector row(ops + 1);
      for (std::size_t op = 0; op < ops; ++op) {
        const auto [i, j] = basis_.labels[op];
        row[op] = f_of_y[b][i] * g_of_x[a][j];
      }
      row[ops] = -1;
      rows.push_back(std::move(row));
      lp_.rhs.push_back(-dot(dual[b], p0x[a]));
      pairs_.push_back(pair);
    }
  }
  lp_.constraints = Matrix::from_rows(rows, ops + 1);
  lp_.objective = Vector(ops + 1);
  lp_.objective[ops] = 1;
}

Matrix ProjectionProblem::realize(const OperatorPoint& point) const {
  if (point.coefficients.size() != basis_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "realize: coefficient count != k(n-k)");
  }
  Matrix p = basis_.base_projection;
  for (std::size_t op = 0; op < basis_.size(); ++op) {
    if (sgn(point.coefficients[op]) != 0) p = p + point.coefficients[op] * basis_.ops[op];
  }
  return p;
}

Vector ProjectionProblem::pair_values(const Matrix& p) const {
  const auto& primal = space_.primal();
  std::vector<Vector> px(primal.size());
  for (std::size_t a = 0; a < primal.size(); ++a) px[a] = p * primal[a];
  Vector values(pairs_.size());
  for (std::size_t r = 0; r < pairs_.size(); ++r) {
    values[r] = dot(space_.dual()[pairs_[r].functional], px[pairs_[r].vertex]);
  }
  return values;
}

std::size_t ProjectionProblem::row_of(const NormingPair& pair) const {
  NormingPair key = pair;
  const NormingPair antipode{space_.primal_negation(pair.vertex), space_.dual_negation(pair.functional)};
  if (antipode < key) key = antipode;
  const auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key);
  if (it == pairs_.end() || *it != key) {
    throw Error(ErrorCode::InvalidInput, "row_of: pair index out of range");
  }
  return static_cast<std::size_t>(it - pairs_.begin());
}

MinProjReport projection_constant(const ProjectionProblem& problem) {
  const auto sol = solve(problem.program());
  if (sol.status != LPStatus::Optimal) {
    // Feasible (P0) and bounded below (t >= f(Px) on a full-dimensional grid).
    throw Error(ErrorCode::CertificateInvalid,
                std::string("projection LP returned ") + to_string(sol.status));
  }
  MinProjReport report;
  report.lambda = sol.value;
  report.witness.coefficients.assign(sol.primal.begin(), sol.primal.end() - 1);
  for (std::size_t r = 0; r < sol.dual.size(); ++r) {
    if (sgn(sol.dual[r]) > 0) report.dual_certificate.emplace_back(problem.pairs()[r], sol.dual[r]);
  }
  report.norming_pairs_of_witness =
      norming_pairs(problem, problem.realize(report.witness), report.lambda);
  return report;
}

std::vector<NormingPair> norming_pairs(const ProjectionProblem& problem, const Matrix& p,
                                       const Rational& lambda) {
  const Vector values = problem.pair_values(p);
  std::vector<NormingPair> out;
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r] > lambda) {
      throw Error(ErrorCode::NotMinimal, "norming_pairs: f(Px) = " + to_string(values[r]) +
                                             " exceeds lambda = " + to_string(lambda));
    }
    if (values[r] == lambda) out.push_back(problem.pairs()[r]);
  }
  return out;
}

void face_dimension(const ProjectionProblem& problem, MinProjReport& report) {
  const LinearProgram& lp = problem.program();
  const std::size_t ops = problem.operator_dim();
  const std::size_t m = lp.constraints.rows();

  Vector witness = report.witness.coefficients;
  witness.push_back(report.lambda);
  const auto tight = tight_rows(lp.constraints, lp.rhs, witness);

  std::vector<bool> seen_slack(m, true);
  for (auto i : tight) seen_slack[i] = false;
  std::vector<std::size_t> implicit;
  std::vector<Vector> samples;
  for (auto i : tight) {
    if (seen_slack[i]) continue;
    const auto row = lp.constraints.row(i);
    const auto sol = solve_on_face(lp, report.lambda, row);
    if (sol.status != LPStatus::Optimal) {
      throw Error(ErrorCode::CertificateInvalid, "face_dimension: secondary LP not optimal");
    }
    if (sol.value == lp.rhs[i]) {
      implicit.push_back(i);
      continue;
    }
    const Vector lhs = lp.constraints * sol.primal;
    for (std::size_t r = 0; r < m; ++r) {
      if (lhs[r] < lp.rhs[r]) seen_slack[r] = true;
    }
    samples.push_back(sol.primal);
  }

  // The average of the samples is slack on every constraint that is slack
  // somewhere on the face.
  Vector interior(ops);
  if (samples.empty()) {
    interior = report.witness.coefficients;
  } else {
    Rational scale(1, static_cast<long>(samples.size()));
    scale.canonicalize();
    for (const auto& s : samples)
      for (std::size_t c = 0; c < ops; ++c) interior[c] += s[c];
    for (auto& x : interior) x *= scale;
  }

  std::vector<Vector> eq_rows;
  for (auto i : implicit) {
    const auto row = lp.constraints.row(i);
    eq_rows.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(ops));
  }
  const std::size_t eq_rank = eq_rows.empty() ? 0 : rank(Matrix::from_rows(eq_rows, ops));

  report.face_dim = ops - eq_rank;
  report.implicit_pairs.clear();
  for (auto i : implicit) report.implicit_pairs.push_back(problem.pairs()[i]);
  report.relative_interior = OperatorPoint{std::move(interior)};
  report.face_analyzed = true;
}

MaxNormingResult max_norming_projection(const ProjectionProblem& problem,
                                        const MinProjReport& report) {
  const LinearProgram& lp = problem.program();
  const std::size_t m = lp.constraints.rows();
  const std::size_t width = lp.constraints.cols();

  Vector current = report.witness.coefficients;
  current.push_back(report.lambda);
  auto forced_rows = tight_rows(lp.constraints, lp.rhs, current);
  std::vector<bool> forced(m, false);
  for (auto i : forced_rows) forced[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (forced[i]) continue;
    // maximize row_i·v over the optimal face with every forced row held tight.
    std::vector<Vector> rows;
    Vector rhs = lp.rhs;
    for (std::size_t r = 0; r < m; ++r) rows.emplace_back(lp.constraints.row(r).begin(), lp.constraints.row(r).end());
    for (std::size_t r = 0; r < m; ++r) {
      if (!forced[r]) continue;
      Vector neg(rows[r]);
      for (auto& x : neg) x = -x;
      rows.push_back(std::move(neg));
      rhs.push_back(-lp.rhs[r]);
    }
    LinearProgram sub{lp.objective, Matrix::from_rows(rows, width), rhs};
    Vector secondary(lp.constraints.row(i).begin(), lp.constraints.row(i).end());
    for (auto& x : secondary) x = -x;
    const auto sol = solve_on_face(sub, report.lambda, secondary);
    if (sol.status != LPStatus::Optimal) {
      throw Error(ErrorCode::CertificateInvalid, "max_norming_projection: face LP not optimal");
    }
    if (-sol.value != lp.rhs[i]) continue;
    current = sol.primal;
    for (auto r : tight_rows(lp.constraints, lp.rhs, current)) forced[r] = true;
  }

  MaxNormingResult out;
  out.point.coefficients.assign(current.begin(), current.end() - 1);
  for (std::size_t r = 0; r < m; ++r) {
    if (forced[r]) out.pairs.push_back(problem.pairs()[r]);
  }
  return out;
}

}  // namespace minproj
