#include "tropkern/exactlin.hpp"

#include <algorithm>
#include <stdexcept>

#include "tropkern/errors.hpp"

namespace tropkern {

namespace {

// Working state for the Smith reduction; tracks both transforms and their inverses.
struct SmithState {
  IntMat a, left, left_inv, right, right_inv;
  std::size_t rows, cols;

  explicit SmithState(const IntMat& m)
      : a(m),
        rows(m.size()),
        cols(m.empty() ? 0 : m[0].size()) {
    left = left_inv = identity_int(rows);
    right = right_inv = identity_int(cols);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(left[i], left[j]);
    for (auto& row : left_inv) std::swap(row[i], row[j]);
  }
  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] += k * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) left[i][c] += k * left[j][c];
    for (auto& row : left_inv) row[j] -= k * row[i];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : left[i]) x = -x;
    for (auto& row : left_inv) row[i] = -row[i];
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : right) std::swap(row[i], row[j]);
    std::swap(right_inv[i], right_inv[j]);
  }
  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const Int& k) {
    for (auto& row : a) row[i] += k * row[j];
    for (auto& row : right) row[i] += k * row[j];
    for (std::size_t c = 0; c < cols; ++c) right_inv[j][c] -= k * right_inv[i][c];
  }

  void run() {
    std::size_t lim = std::min(rows, cols);
    for (std::size_t t = 0; t < lim; ++t) {
      if (!move_min_pivot(t, true)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          add_row(i, t, -q);
          if (a[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          add_col(j, t, -q);
          if (a[t][j] != 0) clean = false;
        }
        if (!clean) {
          move_min_pivot(t, false);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < rows && divisible; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (a[i][j] % a[t][t] != 0) {
              add_row(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (a[t][t] < 0) negate_row(t);
    }
  }

  // Bring the smallest non-zero |entry| to (t,t). With whole=false only row/column t are scanned.
  bool move_min_pivot(std::size_t t, bool whole) {
    std::size_t bi = rows, bj = cols;
    Int best = 0;
    auto consider = [&](std::size_t i, std::size_t j) {
      if (a[i][j] == 0) return;
      Int v = abs(a[i][j]);
      if (bi == rows || v < best) {
        best = v;
        bi = i;
        bj = j;
      }
    };
    if (whole) {
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) consider(i, j);
    } else {
      for (std::size_t i = t; i < rows; ++i) consider(i, t);
      for (std::size_t j = t; j < cols; ++j) consider(t, j);
    }
    if (bi == rows) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
  SmithState s(m);
  s.run();
  return {s.left, s.a, s.right};
}

IntMat hermite_normal_form(const IntMat& input) {
  IntMat rows = input;
  if (rows.empty()) return rows;
  std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        for (std::size_t c = col; c < n; ++c) rows[i][c] -= q * rows[r][c];
        if (rows[i][col] != 0) others = true;
      }
      if (!others) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (q != 0)
        for (std::size_t c = col; c < n; ++c) rows[i][c] -= q * rows[r][c];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

Lattice Lattice::standard(std::size_t n) {
  Lattice l;
  l.n_ = n;
  l.basis_ = identity_int(n);
  return l;
}

Lattice Lattice::from_generators(std::size_t ambient_dim, const IntMat& gens) {
  Lattice l;
  l.n_ = ambient_dim;
  for (const auto& g : gens)
    if (g.size() != ambient_dim) throw DimensionMismatch("lattice generator has wrong length");
  l.basis_ = hermite_normal_form(gens);
  return l;
}

Lattice Lattice::saturated_span(std::size_t ambient_dim, const std::vector<RatVec>& spanning) {
  IntMat gens;
  for (const auto& v : spanning)
    if (!is_zero(v)) gens.push_back(primitive_integer(v));
  if (gens.empty()) return from_generators(ambient_dim, {});
  // Rows of right^{-1} for the non-zero Smith entries span the saturation.
  SmithState s(gens);
  s.run();
  IntMat sat;
  for (std::size_t i = 0; i < std::min(s.rows, s.cols); ++i)
    if (s.a[i][i] != 0) sat.push_back(s.right_inv[i]);
  return from_generators(ambient_dim, sat);
}

std::optional<RatVec> Lattice::coordinates(const RatVec& v) const {
  // Solve c * basis = v.
  RatMat bt(n_, RatVec(rank()));
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < n_; ++j) bt[j][i] = basis_[i][j];
  return solve(bt, v);
}

bool Lattice::contains(const IntVec& v) const {
  auto c = coordinates(to_rat(v));
  return c && is_integral(*c);
}

bool Lattice::contains(const Lattice& other) const {
  if (other.n_ != n_) return false;
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Int lattice_index(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient_dim() != sup.ambient_dim())
    throw DimensionMismatch("lattices live in different ambient spaces");
  if (sub.rank() != sup.rank()) throw RankMismatch("sublattice rank differs from superlattice rank");
  IntMat change;
  for (const auto& b : sub.basis()) {
    auto c = sup.coordinates(to_rat(b));
    if (!c || !is_integral(*c)) throw NotSublattice("basis vector not in the superlattice");
    change.push_back(to_int(*c));
  }
  return abs(determinant(change));
}

IntVec primitive_vector(const RatVec& v, const Lattice& lattice) {
  if (is_zero(v)) throw ZeroVector("primitive vector of zero");
  auto c = lattice.coordinates(v);
  if (!c) throw NotSublattice("vector outside the lattice span");
  IntVec coeff = primitive_integer(*c);
  IntVec out(lattice.ambient_dim());
  for (std::size_t i = 0; i < coeff.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeff[i] * lattice.basis()[i][j];
  return out;
}

RatVec QuotientLattice::project(const RatVec& v) const { return mat_vec(to_rat(projection), v); }

RatVec QuotientLattice::lift(const RatVec& v) const { return mat_vec(to_rat(section), v); }

QuotientLattice quotient_by_span(const Lattice& ambient, const IntMat& cone_generators) {
  std::size_t r = ambient.rank();
  IntMat coords;
  for (const auto& g : cone_generators) {
    auto c = ambient.coordinates(to_rat(g));
    if (!c || !is_integral(*c)) throw NotSublattice("generator outside the ambient lattice");
    if (!is_zero(*c)) coords.push_back(to_int(*c));
  }
  QuotientLattice q;
  q.ambient = ambient;
  std::size_t s = 0;
  IntMat proj, sect;
  IntMat kernel_coords;
  if (coords.empty()) {
    proj = identity_int(r);
    sect = identity_int(r);
  } else {
    SmithState st(coords);
    st.run();
    for (std::size_t i = 0; i < std::min(st.rows, st.cols); ++i)
      if (st.a[i][i] != 0) ++s;
    for (std::size_t i = 0; i < s; ++i) kernel_coords.push_back(st.right_inv[i]);
    // Rows of right^{-1} form a basis whose first s rows span the saturation; coordinates
    // in that basis are right^T x, so projection keeps the last r - s of them.
    for (std::size_t i = s; i < r; ++i) {
      IntVec row(r);
      for (std::size_t j = 0; j < r; ++j) row[j] = st.right[j][i];
      proj.push_back(row);
    }
    sect.assign(r, IntVec(r - s));
    for (std::size_t i = s; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) sect[j][i - s] = st.right_inv[i][j];
  }
  // Canonical quotient coordinates: replace proj by its HNF U*proj, section by section*U^{-1}.
  if (!proj.empty()) {
    IntMat h = hermite_normal_form(proj);
    // U = h * section (since proj * section = id).
    IntMat u = mat_mul(h, sect);
    auto uinv = inverse(to_rat(u));
    if (!uinv) throw InvariantViolation("quotient change of basis not invertible");
    RatMat ns = mat_mul(to_rat(sect), *uinv);
    IntMat nsi;
    for (const auto& row : ns) nsi.push_back(to_int(row));
    proj = h;
    sect = nsi;
  }
  q.projection = proj;
  q.section = sect;
  // Kernel expressed in Z^n.
  IntMat kernel;
  for (const auto& kc : kernel_coords) {
    IntVec v(ambient.ambient_dim());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += kc[i] * ambient.basis()[i][j];
    kernel.push_back(v);
  }
  q.kernel = Lattice::from_generators(ambient.ambient_dim(), kernel);
  return q;
}

RowEchelon rref(const RatMat& m) {
  RowEchelon e;
  if (m.empty()) return e;
  RatMat a = m;
  std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rat inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

std::size_t rank(const RatMat& m) { return rref(m).pivots.size(); }

std::vector<RatVec> nullspace(const RatMat& m, std::size_t cols) {
  auto e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(v);
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  RatMat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  if (aug.empty()) return RatVec(cols);
  auto e = rref(aug);
  RatVec x(cols);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][cols];
  }
  return x;
}

Rat determinant(RatMat a) {
  std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

Int determinant(const IntMat& m) {
  Rat d = determinant(to_rat(m));
  return d.get_num();
}

std::optional<RatMat> inverse(const RatMat& m) {
  std::size_t n = m.size();
  if (n == 0) return RatMat{};
  RatMat aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = 1;
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] >= n) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
  return inv;
}

Lattice integer_kernel(const IntMat& m, std::size_t cols) {
  if (m.empty()) return Lattice::standard(cols);
  SmithState s(m);
  s.run();
  IntMat ker;
  for (std::size_t j = 0; j < cols; ++j) {
    bool zero = j >= s.rows || s.a[j][j] == 0;
    if (!zero) continue;
    IntVec col(cols);
    for (std::size_t i = 0; i < cols; ++i) col[i] = s.right[i][j];
    ker.push_back(col);
  }
  return Lattice::from_generators(cols, ker);
}

}  // namespace tropkern
