#pragma once

// Independent reference computations shared by the unit tests and the acceptance run.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "tropkern/complex.hpp"
#include "tropkern/exactlin.hpp"
#include "tropkern/tropictoric.hpp"

namespace tk_oracle {

using namespace tropkern;

// Twice the area of a convex polygon given by its vertices, via the shoelace formula
// after sorting by angle around the centroid.
inline Rat shoelace2(std::vector<RatVec> pts) {
  if (pts.size() < 3) return 0;
  RatVec c(2);
  for (const auto& p : pts) c = add(c, p);
  c = scale(frac(1, static_cast<long>(pts.size())), c);
  auto half = [&](const RatVec& p) { return (p[1] - c[1] < 0) || (p[1] == c[1] && p[0] - c[0] < 0); };
  std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
    bool ha = half(a), hb = half(b);
    if (ha != hb) return hb;
    Rat cr = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
    return cr > 0;
  });
  Rat s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return abs(s);
}

// Lattice-normalized volume of a full-dimensional simplex.
inline Rat simplex_volume(const Polyhedron& s) {
  const auto& v = s.vertices();
  RatMat m;
  for (std::size_t i = 1; i < v.size(); ++i) m.push_back(sub(v[i], v[0]));
  return abs(determinant(m));
}

inline Rat top_volume(const PolyhedralComplex& c, int n) {
  Rat total = 0;
  for (const auto& cell : c.cells())
    if (cell.dim() == n) total += simplex_volume(cell.finite_part());
  return total;
}

// Brute-force upper hull: affine majorants tight on n+1 generators.
inline std::set<std::string> oracle_top_cells(const LiftConstraints& lc, std::size_t n) {
  struct Gen { RatVec v; Rat h; bool ray; };
  std::vector<Gen> gens;
  for (std::size_t i = 0; i < lc.points.size(); ++i) gens.push_back({lc.points[i], lc.point_bounds[i], false});
  for (std::size_t j = 0; j < lc.rays.size(); ++j) gens.push_back({lc.rays[j], lc.ray_bounds[j], true});
  std::set<std::string> out;
  std::size_t g = gens.size();
  std::vector<std::size_t> pick(n + 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) {
    if (k == n + 1) {
      // Unknowns (a, c): a.p + c = h for points, a.v = h for rays.
      RatMat m;
      RatVec b;
      bool has_point = false;
      for (std::size_t idx : pick) {
        RatVec row = gens[idx].v;
        row.push_back(gens[idx].ray ? 0 : 1);
        has_point |= !gens[idx].ray;
        m.push_back(row);
        b.push_back(gens[idx].h);
      }
      if (!has_point || rank(m) != n + 1) return;
      RatVec sol = *solve(m, b);
      GeneratorRep cell{n, {}, {}, {}};
      for (const auto& gen : gens) {
        Rat val = 0;
        for (std::size_t j = 0; j < n; ++j) val += sol[j] * gen.v[j];
        if (!gen.ray) val += sol[n];
        if (val < gen.h) return;
        if (val == gen.h) (gen.ray ? cell.rays : cell.vertices).push_back(gen.v);
      }
      out.insert(Polyhedron::from_v(cell).key());
      return;
    }
    for (std::size_t i = start; i < g; ++i) {
      pick[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  return out;
}

inline std::set<std::string> top_keys(const PolyhedralComplex& c, int n) {
  std::set<std::string> out;
  for (const auto& cell : c.cells())
    if (cell.dim() == n) out.insert(cell.finite_part().key());
  return out;
}

// Planar convex hull area by monotone chain and shoelace.
inline Rat hull_area(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0;
  auto cross = [](const IntVec& o, const IntVec& a, const IntVec& b) -> Int { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); };
  std::vector<IntVec> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  Int twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return Rat(abs(twice)) / 2;
}

// 2! MV(P,Q) = area(P+Q) - area(P) - area(Q).
inline Rat mixed_degree(const std::vector<IntVec>& p, const std::vector<IntVec>& q) {
  std::vector<IntVec> sum;
  for (const auto& a : p)
    for (const auto& b : q) sum.push_back(add(a, b));
  return hull_area(sum) - hull_area(p) - hull_area(q);
}

// Feasibility of {rows . x >= rhs} and {eq_rows . x = eq_rhs} by Fourier-Motzkin elimination.
inline bool fm_feasible(std::size_t nvars, std::vector<std::pair<RatVec, Rat>> ge, std::vector<std::pair<RatVec, Rat>> eq) {
  // Substitute the equations away first.
  while (!eq.empty()) {
    auto [a, b] = eq.back();
    eq.pop_back();
    std::size_t k = 0;
    while (k < nvars && a[k] == 0) ++k;
    if (k == nvars) {
      if (b != 0) return false;
      continue;
    }
    auto eliminate = [&](std::pair<RatVec, Rat>& row) {
      if (row.first[k] == 0) return;
      Rat f = row.first[k] / a[k];
      for (std::size_t j = 0; j < nvars; ++j) row.first[j] -= f * a[j];
      row.second -= f * b;
    };
    for (auto& r : eq) eliminate(r);
    for (auto& r : ge) eliminate(r);
  }
  for (std::size_t k = 0; k < nvars; ++k) {
    std::vector<std::pair<RatVec, Rat>> pos, neg, rest;
    for (auto& r : ge) (r.first[k] > 0 ? pos : r.first[k] < 0 ? neg : rest).push_back(r);
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rat fp = -q.first[k], fq = p.first[k];
        RatVec c(nvars);
        for (std::size_t j = 0; j < nvars; ++j) c[j] = fp * p.first[j] + fq * q.first[j];
        Rat rhs = fp * p.second + fq * q.second;
        // Normalize to keep duplicates detectable.
        Rat scale_by = 0;
        for (const auto& x : c)
          if (x != 0) {
            scale_by = abs(x);
            break;
          }
        if (scale_by != 0) {
          for (auto& x : c) x /= scale_by;
          rhs /= scale_by;
        }
        rest.emplace_back(c, rhs);
      }
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    ge = std::move(rest);
  }
  for (const auto& r : ge)
    if (r.second > 0) return false;
  return true;
}

// Does relint(cone(gens)) meet cone(rays) + span(lin)? Unknowns: lambda >= 1, mu >= 0, nu free.
inline bool fm_relint_meets(const std::vector<RatVec>& gens, const std::vector<RatVec>& rays, const std::vector<RatVec>& lin, std::size_t n) {
  if (gens.empty()) return true;
  std::size_t nl = gens.size(), nm = rays.size(), nn = lin.size(), nv = nl + nm + 2 * nn;
  std::vector<std::pair<RatVec, Rat>> ge, eq;
  for (std::size_t i = 0; i < nl + nm + 2 * nn; ++i) {
    RatVec r(nv);
    r[i] = 1;
    ge.emplace_back(r, i < nl ? Rat(1) : Rat(0));
  }
  for (std::size_t c = 0; c < n; ++c) {
    RatVec r(nv);
    for (std::size_t i = 0; i < nl; ++i) r[i] = gens[i][c];
    for (std::size_t j = 0; j < nm; ++j) r[nl + j] = -rays[j][c];
    for (std::size_t k = 0; k < nn; ++k) {
      r[nl + nm + 2 * k] = -lin[k][c];
      r[nl + nm + 2 * k + 1] = lin[k][c];
    }
    eq.emplace_back(r, Rat(0));
  }
  return fm_feasible(nv, ge, eq);
}

// Is v in cone(rays) + span(lin)?
inline bool fm_in_cone(const RatVec& v, const std::vector<RatVec>& rays, const std::vector<RatVec>& lin) {
  std::size_t n = v.size(), nm = rays.size(), nn = lin.size(), nv = nm + 2 * nn;
  std::vector<std::pair<RatVec, Rat>> ge, eq;
  for (std::size_t i = 0; i < nv; ++i) {
    RatVec r(nv);
    r[i] = 1;
    ge.emplace_back(r, Rat(0));
  }
  for (std::size_t c = 0; c < n; ++c) {
    RatVec r(nv);
    for (std::size_t j = 0; j < nm; ++j) r[j] = rays[j][c];
    for (std::size_t k = 0; k < nn; ++k) {
      r[nm + 2 * k] = lin[k][c];
      r[nm + 2 * k + 1] = -lin[k][c];
    }
    eq.emplace_back(r, v[c]);
  }
  return fm_feasible(nv, ge, eq);
}

// Brute-force constant-towards-the-boundary test: every cone of the star fan is either
// inside the recession cone or has relative interior disjoint from it.
inline bool ctb_oracle(const TropicalPolyhedron& d) {
  if (d.is_empty()) return true;
  const Fan& fan = d.fan();
  std::size_t s = d.sedentarity();
  const Polyhedron& p = d.finite_part();
  std::size_t r = fan.stratum_dim(s);
  RatMat proj = fan.projection(s);
  for (std::size_t t = 0; t < fan.size(); ++t) {
    if (!fan.is_face(s, t)) continue;
    std::vector<RatVec> gens;
    for (const auto& g : fan.generators(t)) {
      RatVec img = mat_vec(proj, to_rat(g));
      if (!is_zero(img)) gens.push_back(img);
    }
    bool inside = true;
    for (const auto& g : gens) inside = inside && fm_in_cone(g, p.rays(), p.lineality());
    if (inside) continue;
    if (fm_relint_meets(gens, p.rays(), p.lineality(), r)) return false;
  }
  return true;
}

}  // namespace tk_oracle
