#include "tropkern/lp.hpp"

#include <limits>

namespace tropkern {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Tableau {
  RatMat rows;  // each row: coefficients then rhs
  std::vector<std::size_t> basis;
  RatVec obj;  // reduced costs (maximize: entering column has obj < 0), last entry = -value
  std::size_t cols;

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (obj[c] != 0) {
      Rat f = obj[c];
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  void set_objective(const RatVec& c) {
    obj.assign(cols + 1, 0);
    for (std::size_t j = 0; j < cols; ++j) obj[j] = -c[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rat f = obj[basis[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * rows[i][j];
    }
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(std::size_t usable_cols) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < usable_cols; ++j)
        if (obj[j] < 0) {
          enter = j;
          break;
        }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rat best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rat ratio = rows[i][cols] / rows[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t mi = lp.ineq_lhs.size();
  const std::size_t me = lp.eq_lhs.size();
  const std::size_t m = mi + me;
  // Columns: u (n), w (n), slack (mi), artificial (m).
  const std::size_t real_cols = 2 * n + mi;
  Tableau t;
  t.cols = real_cols + m;
  t.rows.assign(m, RatVec(t.cols + 1));
  t.basis.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const RatVec& a = i < mi ? lp.ineq_lhs[i] : lp.eq_lhs[i - mi];
    Rat rhs = i < mi ? lp.ineq_rhs[i] : lp.eq_rhs[i - mi];
    RatVec& row = t.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = a[j];
      row[n + j] = -a[j];
    }
    if (i < mi) row[2 * n + i] = -1;
    row[t.cols] = rhs;
    if (rhs < 0)
      for (auto& x : row) x = -x;
    row[real_cols + i] = 1;
    t.basis[i] = real_cols + i;
  }
  RatVec phase1(t.cols);
  for (std::size_t i = 0; i < m; ++i) phase1[real_cols + i] = -1;
  t.set_objective(phase1);
  t.optimize(t.cols);
  LpResult res;
  if (-t.obj[t.cols] < 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // Drive artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < real_cols) {
      ++i;
      continue;
    }
    std::size_t c = kNone;
    for (std::size_t j = 0; j < real_cols; ++j)
      if (t.rows[i][j] != 0) {
        c = j;
        break;
      }
    if (c == kNone) {
      t.rows.erase(t.rows.begin() + static_cast<long>(i));
      t.basis.erase(t.basis.begin() + static_cast<long>(i));
      continue;
    }
    t.pivot(i, c);
    ++i;
  }
  RatVec phase2(t.cols);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = lp.objective[j];
    phase2[n + j] = -lp.objective[j];
  }
  t.set_objective(phase2);
  if (!t.optimize(real_cols)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  RatVec z(t.cols);
  for (std::size_t i = 0; i < t.rows.size(); ++i) z[t.basis[i]] = t.rows[i][t.cols];
  res.point.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) res.point[j] = z[j] - z[n + j];
  res.value = dot(lp.objective, res.point);
  res.status = LpStatus::Optimal;
  return res;
}

}  // namespace tropkern
