#include "minproj/lp.hpp"

#include "minproj/error.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace minproj {

void LinearProgram::validate() const {
  if (objective.size() != constraints.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "LinearProgram: objective length != column count");
  }
  if (rhs.size() != constraints.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "LinearProgram: rhs length != row count");
  }
}

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "OPTIMAL";
    case LPStatus::Infeasible: return "INFEASIBLE";
    case LPStatus::Unbounded: return "UNBOUNDED";
  }
  return "UNKNOWN";
}

std::vector<std::size_t> tight_rows(const Matrix& a, std::span<const Rational> b,
                                    std::span<const Rational> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (dot(a.row(i), v) == b[i]) out.push_back(i);
  }
  return out;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dictionary form: x_B[r] = beta[r] + sum_j coef[r][j] x_N[j], objective
// zeta = z0 + sum_j d[j] x_N[j] (maximized). Variables are numbered
//   [0, p)        v⁺
//   [p, 2p)       v⁻
//   [2p, 2p + m)  slack of row i
//   2p + m        auxiliary phase-one variable
class Dictionary {
 public:
  Dictionary(const LinearProgram& lp, bool with_aux)
      : p_(lp.constraints.cols()), m_(lp.constraints.rows()) {
    const std::size_t width = 2 * p_ + (with_aux ? 1 : 0);
    basic_.resize(m_);
    nonbasic_.resize(width);
    beta_ = lp.rhs;
    coef_ = Matrix(m_, width);
    for (std::size_t j = 0; j < 2 * p_; ++j) nonbasic_[j] = j;
    if (with_aux) nonbasic_[2 * p_] = aux_index();
    for (std::size_t i = 0; i < m_; ++i) {
      basic_[i] = 2 * p_ + i;
      for (std::size_t j = 0; j < p_; ++j) {
        const Rational& a = lp.constraints(i, j);
        if (sgn(a) == 0) continue;
        coef_(i, j) = -a;
        coef_(i, p_ + j) = a;
      }
      if (with_aux) coef_(i, 2 * p_) = 1;
    }
    d_.assign(width, Rational(0));
  }

  std::size_t aux_index() const { return 2 * p_ + m_; }
  std::size_t slack_index(std::size_t row) const { return 2 * p_ + row; }

  // Sets zeta = sum_var weight[var] x_var expressed over the current basis.
  void set_objective(const std::vector<Rational>& weight) {
    z0_ = 0;
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) d_[j] = weight[nonbasic_[j]];
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& w = weight[basic_[r]];
      if (sgn(w) == 0) continue;
      z0_ += w * beta_[r];
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (sgn(coef_(r, j)) != 0) d_[j] += w * coef_(r, j);
      }
    }
  }

  void pivot(std::size_t r, std::size_t j) {
    const std::size_t width = nonbasic_.size();
    const Rational inv = 1 / coef_(r, j);
    // Solve row r for the entering variable.
    beta_[r] = -beta_[r] * inv;
    for (std::size_t k = 0; k < width; ++k) {
      if (k == j) continue;
      if (sgn(coef_(r, k)) != 0) coef_(r, k) = -coef_(r, k) * inv;
    }
    coef_(r, j) = inv;
    const auto prow = coef_.row(r);
    auto substitute = [&](Rational& beta, std::span<Rational> row) {
      const Rational factor = row[j];
      if (sgn(factor) == 0) return;
      beta += factor * beta_[r];
      for (std::size_t k = 0; k < width; ++k) {
        if (k == j) continue;
        if (sgn(prow[k]) != 0) row[k] += factor * prow[k];
      }
      row[j] = factor * prow[j];
    };
    for (std::size_t s = 0; s < m_; ++s) {
      if (s != r) substitute(beta_[s], coef_.row(s));
    }
    substitute(z0_, d_);
    std::swap(basic_[r], nonbasic_[j]);
  }

  // Bland's rule. Returns false when unbounded.
  bool optimize() {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (sgn(d_[j]) > 0 && (enter == kNone || nonbasic_[j] < nonbasic_[enter])) enter = j;
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (sgn(coef_(r, enter)) >= 0) continue;
        Rational ratio = beta_[r] / -coef_(r, enter);
        if (leave == kNone || ratio < best || (ratio == best && basic_[r] < basic_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  // Phase one with one auxiliary variable. Returns false when infeasible.
  bool make_feasible() {
    std::size_t worst = kNone;
    for (std::size_t r = 0; r < m_; ++r) {
      if (sgn(beta_[r]) < 0 && (worst == kNone || beta_[r] < beta_[worst])) worst = r;
    }
    const std::size_t aux = aux_index();
    const std::size_t aux_col = 2 * p_;
    std::vector<Rational> weight(aux + 1);
    weight[aux] = -1;
    set_objective(weight);
    pivot(worst, aux_col);
    optimize();
    if (sgn(z0_) < 0) return false;

    // Drive the auxiliary variable out of the basis if it stayed there at zero.
    for (std::size_t r = 0; r < m_; ++r) {
      if (basic_[r] != aux) continue;
      std::size_t col = kNone;
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (sgn(coef_(r, j)) != 0 && (col == kNone || nonbasic_[j] < nonbasic_[col])) col = j;
      }
      pivot(r, col);
      break;
    }
    const auto it = std::find(nonbasic_.begin(), nonbasic_.end(), aux);
    const std::size_t drop = static_cast<std::size_t>(it - nonbasic_.begin());
    drop_column(drop);
    return true;
  }

  Vector values() const {
    Vector x(2 * p_ + m_ + 1);
    for (std::size_t r = 0; r < m_; ++r) x[basic_[r]] = beta_[r];
    return x;
  }

  Vector duals() const {
    Vector y(m_);
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      const std::size_t var = nonbasic_[j];
      if (var >= 2 * p_ && var < 2 * p_ + m_) y[var - 2 * p_] = -d_[j];
    }
    return y;
  }

 private:
  void drop_column(std::size_t col) {
    const std::size_t width = nonbasic_.size();
    Matrix next(m_, width - 1);
    for (std::size_t r = 0; r < m_; ++r) {
      std::size_t c2 = 0;
      for (std::size_t c = 0; c < width; ++c) {
        if (c != col) next(r, c2++) = coef_(r, c);
      }
    }
    coef_ = std::move(next);
    nonbasic_.erase(nonbasic_.begin() + static_cast<std::ptrdiff_t>(col));
    d_.erase(d_.begin() + static_cast<std::ptrdiff_t>(col));
  }

  std::size_t p_;
  std::size_t m_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  Vector beta_;
  Matrix coef_;
  Rational z0_;
  Vector d_;
};

SolveObserver& observer() {
  static SolveObserver instance;
  return instance;
}

LPSolution solve_unobserved(const LinearProgram& lp) {
  const std::size_t p = lp.constraints.cols();
  const std::size_t m = lp.constraints.rows();
  const bool needs_phase_one =
      std::any_of(lp.rhs.begin(), lp.rhs.end(), [](const Rational& b) { return sgn(b) < 0; });

  Dictionary dict(lp, needs_phase_one);
  LPSolution out;
  if (needs_phase_one && !dict.make_feasible()) {
    out.status = LPStatus::Infeasible;
    return out;
  }

  std::vector<Rational> weight(2 * p + m + 1);
  for (std::size_t j = 0; j < p; ++j) {
    weight[j] = -lp.objective[j];
    weight[p + j] = lp.objective[j];
  }
  dict.set_objective(weight);
  if (!dict.optimize()) {
    out.status = LPStatus::Unbounded;
    return out;
  }

  const Vector x = dict.values();
  out.status = LPStatus::Optimal;
  out.primal.resize(p);
  for (std::size_t j = 0; j < p; ++j) out.primal[j] = x[j] - x[p + j];
  out.value = dot(lp.objective, out.primal);
  out.dual = dict.duals();
  out.tight_set = tight_rows(lp.constraints, lp.rhs, out.primal);
  return out;
}

}  // namespace

void set_solve_observer(SolveObserver callback) { observer() = std::move(callback); }

LPSolution solve(const LinearProgram& lp) {
  lp.validate();
  LPSolution out = solve_unobserved(lp);
  if (observer()) observer()(lp, out);
  return out;
}

LPSolution solve_on_face(const LinearProgram& lp, const Rational& fixed_value,
                         std::span<const Rational> secondary) {
  lp.validate();
  if (secondary.size() != lp.objective.size()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_on_face: secondary objective length mismatch");
  }
  const std::size_t m = lp.constraints.rows();
  const std::size_t p = lp.constraints.cols();
  LinearProgram face;
  face.objective.assign(secondary.begin(), secondary.end());
  face.constraints = Matrix(m + 2, p);
  face.rhs = lp.rhs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < p; ++j) face.constraints(i, j) = lp.constraints(i, j);
  for (std::size_t j = 0; j < p; ++j) {
    face.constraints(m, j) = lp.objective[j];
    face.constraints(m + 1, j) = -lp.objective[j];
  }
  face.rhs.push_back(fixed_value);
  face.rhs.push_back(-fixed_value);
  return solve(face);
}

}  // namespace minproj
