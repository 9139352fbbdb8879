#include "nlgames/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlgames/constants.hpp"
#include "nlgames/errors.hpp"

namespace nlgames {

void LinearProgram::validate() const {
  if (rows.size() != rhs.size()) throw InvalidArgument("LinearProgram: row count differs from rhs length");
  for (const auto& r : rows)
    if (r.size() != objective.size()) throw InvalidArgument("LinearProgram: row length differs from objective length");
}

namespace {

constexpr int kMaxPivots = 200000;

class Tableau {
 public:
  // Columns: [structural | artificial | rhs]; one extra row of reduced costs.
  Tableau(std::vector<std::vector<double>> a, std::vector<double> b, std::size_t n_struct)
      : m_(a.size()), n_struct_(n_struct), width_(n_struct + a.size() + 1),
        t_((a.size() + 1) * (n_struct + a.size() + 1), 0.0), basis_(a.size()), active_(a.size(), true) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_struct_; ++j) at(i, j) = a[i][j];
      at(i, n_struct_ + i) = 1.0;
      at(i, width_ - 1) = b[i];
      basis_[i] = n_struct_ + i;
    }
  }

  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  double& cost(std::size_t j) { return t_[m_ * width_ + j]; }
  double rhs(std::size_t i) const { return at(i, width_ - 1); }
  std::size_t rows() const { return m_; }
  std::size_t n_struct() const { return n_struct_; }
  std::size_t basis(std::size_t i) const { return basis_[i]; }
  bool active(std::size_t i) const { return active_[i]; }
  void deactivate(std::size_t i) { active_[i] = false; }
  bool is_artificial(std::size_t j) const { return j >= n_struct_ && j < width_ - 1; }

  // Reduced costs r_j = c_j - c_B . column_j; the rhs slot holds -c_B . b.
  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j < width_; ++j) {
      double r = j + 1 < width_ ? c[j] : 0.0;
      for (std::size_t i = 0; i < m_; ++i)
        if (active_[i]) r -= c[basis_[i]] * at(i, j);
      cost(j) = r;
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    const double p = at(r, col);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || (i < m_ && !active_[i])) continue;
      const double f = t_[i * width_ + col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) t_[i * width_ + j] -= f * at(r, j);
    }
    basis_[r] = col;
  }

  // Runs Bland's rule over columns [0, n_cols). Returns false if unbounded.
  bool optimize(std::size_t n_cols, int& pivots) {
    for (;;) {
      std::size_t enter = n_cols;
      for (std::size_t j = 0; j < n_cols; ++j)
        if (cost(j) > tol::kPivot) {
          enter = j;
          break;
        }
      if (enter == n_cols) return true;

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || at(i, enter) <= tol::kPivot) continue;
        const double ratio = rhs(i) / at(i, enter);
        if (ratio < best_ratio - tol::kPivot ||
            (std::abs(ratio - best_ratio) <= tol::kPivot && basis_[i] < basis_[leave])) {
          best_ratio = std::min(ratio, best_ratio);
          leave = i;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      if (++pivots > kMaxPivots) throw InvariantViolation("simplex: pivot limit reached");
    }
  }

 private:
  std::size_t m_;
  std::size_t n_struct_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

// Solves M y = v by Gaussian elimination with partial pivoting (M square).
std::vector<double> solve_square(std::vector<std::vector<double>> m, std::vector<double> v) {
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    if (std::abs(m[p][k]) < 1e-14) throw InvariantViolation("simplex: final basis is singular");
    std::swap(m[p], m[k]);
    std::swap(v[p], v[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      v[i] -= f * v[k];
    }
  }
  std::vector<double> y(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = v[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * y[j];
    y[k] = s / m[k][k];
  }
  return y;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.n_vars();
  const std::size_t m_user = lp.rows.size();
  const std::size_t n_struct = 2 * n;  // x then upper-bound slacks
  const std::size_t m = m_user + n;

  // Equality system over [x | s], rows sign-normalized so b >= 0.
  std::vector<std::vector<double>> a(m, std::vector<double>(n_struct, 0.0));
  std::vector<double> b(m, 0.0);
  for (std::size_t i = 0; i < m_user; ++i) {
    std::copy(lp.rows[i].begin(), lp.rows[i].end(), a[i].begin());
    b[i] = lp.rhs[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    a[m_user + j][j] = 1.0;
    a[m_user + j][n + j] = 1.0;
    b[m_user + j] = 1.0;
  }
  std::vector<double> sign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0.0) {
      sign[i] = -1.0;
      b[i] = -b[i];
      for (auto& v : a[i]) v = -v;
    }

  Tableau tab(a, b, n_struct);
  LpSolution sol;

  // Phase one: maximize -(sum of artificials).
  std::vector<double> c1(n_struct + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) c1[n_struct + i] = -1.0;
  tab.price(c1);
  tab.optimize(n_struct + m, sol.pivots);
  double infeasibility = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.is_artificial(tab.basis(i))) infeasibility += tab.rhs(i);
  double b_scale = 1.0;
  for (double v : b) b_scale = std::max(b_scale, v);
  if (infeasibility > 1e-9 * b_scale) {
    sol.status = LpStatus::infeasible;
    return sol;
  }

  // Drive zero-level artificials out of the basis, or drop their rows.
  for (std::size_t i = 0; i < m; ++i) {
    if (!tab.is_artificial(tab.basis(i))) continue;
    std::size_t col = n_struct;
    for (std::size_t j = 0; j < n_struct; ++j)
      if (std::abs(tab.at(i, j)) > tol::kPivot) {
        col = j;
        break;
      }
    if (col < n_struct) {
      tab.pivot(i, col);
      ++sol.pivots;
    } else {
      tab.deactivate(i);
      ++sol.redundant_rows;
    }
  }

  // Phase two over structural columns only.
  std::vector<double> c2(n_struct + m, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), c2.begin());
  tab.price(c2);
  if (!tab.optimize(n_struct, sol.pivots)) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<double> xs(n_struct, 0.0);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i) {
    if (!tab.active(i)) continue;
    kept.push_back(i);
    xs[tab.basis(i)] = std::max(0.0, tab.rhs(i));
  }
  sol.status = LpStatus::optimal;
  sol.x.assign(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n));
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];

  for (std::size_t i = 0; i < m_user; ++i) {
    double r = -lp.rhs[i];
    for (std::size_t j = 0; j < n; ++j) r += lp.rows[i][j] * sol.x[j];
    sol.primal_residual = std::max(sol.primal_residual, std::abs(r));
  }
  for (std::size_t j = 0; j < n; ++j)
    sol.primal_residual = std::max({sol.primal_residual, sol.x[j] - 1.0, -sol.x[j]});

  // Duals from B^T y = c_B on the retained rows of the sign-normalized system.
  const std::size_t k = kept.size();
  std::vector<std::vector<double>> bt(k, std::vector<double>(k));
  std::vector<double> cb(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t col = tab.basis(kept[r]);
    cb[r] = c2[col];
    for (std::size_t q = 0; q < k; ++q) bt[r][q] = a[kept[q]][col];
  }
  const auto y = solve_square(std::move(bt), std::move(cb));
  sol.duals.assign(m_user, 0.0);
  for (std::size_t q = 0; q < k; ++q)
    if (kept[q] < m_user) sol.duals[kept[q]] = sign[kept[q]] * y[q];
  for (std::size_t j = 0; j < n_struct; ++j) {
    double d = c2[j];
    for (std::size_t q = 0; q < k; ++q) d -= y[q] * a[kept[q]][j];
    sol.dual_infeasibility = std::max(sol.dual_infeasibility, d);
    sol.complementary_slackness = std::max(sol.complementary_slackness, std::abs(xs[j] * d));
  }
  return sol;
}

}  // namespace nlgames
