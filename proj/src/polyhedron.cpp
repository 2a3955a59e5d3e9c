#include "tropkern/polyhedron.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <set>

#include "tropkern/errors.hpp"
#include "tropkern/exactlin.hpp"
#include "tropkern/lp.hpp"

namespace tropkern {

bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

using Bits = boost::dynamic_bitset<>;

RatVec normalized(const RatVec& v) { return to_rat(primitive_integer(v)); }

struct ConeGens {
  std::vector<RatVec> lineality;
  std::vector<RatVec> rays;
};

// Incremental double description for {y : a.y >= 0 (ineqs), e.y = 0 (eqs)}.
ConeGens dd_cone(std::size_t d, const std::vector<RatVec>& ineqs, const std::vector<RatVec>& eqs) {
  std::vector<RatVec> lin;
  for (std::size_t i = 0; i < d; ++i) {
    RatVec e(d);
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<RatVec> rays;
  std::vector<Bits> tight;
  const std::size_t m = ineqs.size();

  auto eliminate = [&](const RatVec& a, std::size_t idx) {
    const RatVec l = lin[idx];
    Rat al = dot(a, l);
    for (std::size_t j = 0; j < lin.size(); ++j) {
      if (j == idx) continue;
      Rat c = dot(a, lin[j]);
      if (c != 0) lin[j] = normalized(sub(lin[j], scale(c / al, l)));
    }
    for (auto& r : rays) {
      Rat c = dot(a, r);
      if (c != 0) r = normalized(sub(r, scale(c / al, l)));
    }
    lin.erase(lin.begin() + static_cast<long>(idx));
    return l;
  };

  for (const auto& e : eqs) {
    std::size_t idx = lin.size();
    for (std::size_t j = 0; j < lin.size(); ++j)
      if (dot(e, lin[j]) != 0) {
        idx = j;
        break;
      }
    if (idx == lin.size()) continue;
    eliminate(e, idx);
  }

  for (std::size_t k = 0; k < m; ++k) {
    const RatVec& a = ineqs[k];
    std::size_t idx = lin.size();
    for (std::size_t j = 0; j < lin.size(); ++j)
      if (dot(a, lin[j]) != 0) {
        idx = j;
        break;
      }
    if (idx != lin.size()) {
      if (dot(a, lin[idx]) < 0) lin[idx] = scale(-1, lin[idx]);
      RatVec l = eliminate(a, idx);
      for (auto& t : tight) t.set(k);
      Bits tl(m);
      for (std::size_t j = 0; j < k; ++j) tl.set(j);
      rays.push_back(l);
      tight.push_back(tl);
      continue;
    }
    std::vector<Rat> s(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) s[i] = dot(a, rays[i]);
    std::vector<RatVec> nrays;
    std::vector<Bits> ntight;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] < 0) continue;
      nrays.push_back(rays[i]);
      Bits t = tight[i];
      if (s[i] == 0) t.set(k);
      ntight.push_back(t);
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (s[q] >= 0) continue;
        Bits z = tight[p] & tight[q];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (z.is_subset_of(tight[r])) adjacent = false;
        }
        if (!adjacent) continue;
        RatVec nr = normalized(sub(scale(s[p], rays[q]), scale(s[q], rays[p])));
        Bits t = z;
        t.set(k);
        nrays.push_back(nr);
        ntight.push_back(t);
      }
    }
    rays = std::move(nrays);
    tight = std::move(ntight);
  }
  return {lin, rays};
}

std::vector<RatVec> sorted_unique(std::vector<RatVec> v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Reduce v modulo the rows of an RREF basis (zero at pivot coordinates).
RatVec reduce_mod(const RatVec& v, const RowEchelon& e, std::size_t width) {
  RatVec r = v;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    Rat c = r[e.pivots[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < width; ++j) r[j] -= c * e.rows[i][j];
  }
  return r;
}

GeneratorRep canonical_v(GeneratorRep g) {
  if (g.vertices.empty()) return GeneratorRep{g.dim, {}, {}, {}};
  auto e = rref(g.lineality);
  GeneratorRep out;
  out.dim = g.dim;
  for (const auto& row : e.rows) out.lineality.push_back(normalized(row));
  for (const auto& v : g.vertices) out.vertices.push_back(reduce_mod(v, e, g.dim));
  for (const auto& r : g.rays) {
    RatVec rr = reduce_mod(r, e, g.dim);
    if (!is_zero(rr)) out.rays.push_back(normalized(rr));
  }
  out.vertices = sorted_unique(out.vertices);
  out.rays = sorted_unique(out.rays);
  return out;
}

HalfspaceRep empty_h(std::size_t n) {
  HalfspaceRep h;
  h.dim = n;
  RatVec bad(n + 1);
  bad[n] = 1;
  h.eqs.push_back(bad);
  return h;
}

HalfspaceRep canonical_h(const HalfspaceRep& h) {
  std::size_t n = h.dim;
  auto e = rref(h.eqs);
  for (auto p : e.pivots)
    if (p == n) return empty_h(n);
  HalfspaceRep out;
  out.dim = n;
  for (const auto& row : e.rows) out.eqs.push_back(normalized(row));
  for (const auto& a : h.ineqs) {
    RatVec r = reduce_mod(a, e, n + 1);
    bool zero_normal = true;
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] != 0) zero_normal = false;
    if (zero_normal) {
      if (r[n] > 0) return empty_h(n);
      continue;
    }
    out.ineqs.push_back(normalized(r));
  }
  out.ineqs = sorted_unique(out.ineqs);
  return out;
}

}  // namespace

GeneratorRep dd_convert(const HalfspaceRep& h) {
  const std::size_t n = h.dim;
  std::vector<RatVec> ineqs, eqs;
  RatVec t(n + 1);
  t[n] = 1;
  ineqs.push_back(t);
  for (const auto& a : h.ineqs) {
    RatVec row(a.begin(), a.begin() + static_cast<long>(n));
    row.push_back(-a[n]);
    ineqs.push_back(row);
  }
  for (const auto& a : h.eqs) {
    RatVec row(a.begin(), a.begin() + static_cast<long>(n));
    row.push_back(-a[n]);
    eqs.push_back(row);
  }
  ConeGens c = dd_cone(n + 1, ineqs, eqs);
  GeneratorRep g;
  g.dim = n;
  for (const auto& r : c.rays) {
    RatVec x(r.begin(), r.begin() + static_cast<long>(n));
    if (r[n] > 0)
      g.vertices.push_back(scale(1 / r[n], x));
    else
      g.rays.push_back(x);
  }
  if (g.vertices.empty()) return GeneratorRep{n, {}, {}, {}};
  for (const auto& l : c.lineality) {
    if (l[n] != 0) throw InvariantViolation("homogenizing coordinate in lineality");
    g.lineality.emplace_back(l.begin(), l.begin() + static_cast<long>(n));
  }
  return canonical_v(g);
}

HalfspaceRep dd_convert_back(const GeneratorRep& g) {
  const std::size_t n = g.dim;
  if (g.vertices.empty()) return empty_h(n);
  std::vector<RatVec> ineqs, eqs;
  for (const auto& v : g.vertices) {
    RatVec row = v;
    row.push_back(1);
    ineqs.push_back(row);
  }
  for (const auto& r : g.rays) {
    RatVec row = r;
    row.push_back(0);
    ineqs.push_back(row);
  }
  for (const auto& l : g.lineality) {
    RatVec row = l;
    row.push_back(0);
    eqs.push_back(row);
  }
  ConeGens c = dd_cone(n + 1, ineqs, eqs);
  HalfspaceRep h;
  h.dim = n;
  auto to_row = [n](const RatVec& y) {
    RatVec row(y.begin(), y.begin() + static_cast<long>(n));
    row.push_back(-y[n]);
    return row;
  };
  for (const auto& l : c.lineality) h.eqs.push_back(to_row(l));
  for (const auto& r : c.rays) {
    bool zero_normal = true;
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] != 0) zero_normal = false;
    if (zero_normal) continue;
    h.ineqs.push_back(to_row(r));
  }
  return canonical_h(h);
}

void Polyhedron::finish_from_generators() {
  if (v_.vertices.empty()) {
    dim_ = -1;
    h_ = empty_h(n_);
    v_ = GeneratorRep{n_, {}, {}, {}};
    return;
  }
  RatMat span = v_.lineality;
  for (std::size_t i = 1; i < v_.vertices.size(); ++i) span.push_back(sub(v_.vertices[i], v_.vertices[0]));
  for (const auto& r : v_.rays) span.push_back(r);
  dim_ = static_cast<int>(rank(span));
}

Polyhedron Polyhedron::from_h(const HalfspaceRep& h) {
  Polyhedron p;
  p.n_ = h.dim;
  p.v_ = dd_convert(h);
  p.h_ = dd_convert_back(p.v_);
  p.finish_from_generators();
  return p;
}

Polyhedron Polyhedron::from_v(const GeneratorRep& g) {
  Polyhedron p;
  p.n_ = g.dim;
  HalfspaceRep h = dd_convert_back(g);
  p.v_ = dd_convert(h);
  p.h_ = dd_convert_back(p.v_);
  p.finish_from_generators();
  return p;
}

Polyhedron Polyhedron::empty(std::size_t n) {
  Polyhedron p;
  p.n_ = n;
  p.v_ = GeneratorRep{n, {}, {}, {}};
  p.finish_from_generators();
  return p;
}

Polyhedron Polyhedron::whole(std::size_t n) {
  HalfspaceRep h;
  h.dim = n;
  return from_h(h);
}

Polyhedron Polyhedron::point(const RatVec& x) {
  GeneratorRep g;
  g.dim = x.size();
  g.vertices.push_back(x);
  return from_v(g);
}

Polyhedron Polyhedron::cone(std::size_t n, const std::vector<RatVec>& rays) {
  GeneratorRep g;
  g.dim = n;
  g.vertices.push_back(RatVec(n));
  g.rays = rays;
  return from_v(g);
}

bool Polyhedron::is_cone() const {
  if (is_empty()) return false;
  for (const auto& v : v_.vertices)
    if (!is_zero(v)) return false;
  return true;
}

bool Polyhedron::contains(const RatVec& x) const {
  if (is_empty()) return false;
  for (const auto& e : h_.eqs) {
    RatVec a(e.begin(), e.begin() + static_cast<long>(n_));
    if (dot(a, x) != e[n_]) return false;
  }
  for (const auto& e : h_.ineqs) {
    RatVec a(e.begin(), e.begin() + static_cast<long>(n_));
    if (dot(a, x) < e[n_]) return false;
  }
  return true;
}

bool Polyhedron::contains(const Polyhedron& o) const {
  if (o.is_empty()) return true;
  if (is_empty()) return false;
  for (const auto& v : o.v_.vertices)
    if (!contains(v)) return false;
  auto lin_val = [&](const RatVec& row, const RatVec& d) {
    RatVec a(row.begin(), row.begin() + static_cast<long>(n_));
    return dot(a, d);
  };
  for (const auto& r : o.v_.rays) {
    for (const auto& e : h_.eqs)
      if (lin_val(e, r) != 0) return false;
    for (const auto& e : h_.ineqs)
      if (lin_val(e, r) < 0) return false;
  }
  for (const auto& l : o.v_.lineality) {
    for (const auto& e : h_.eqs)
      if (lin_val(e, l) != 0) return false;
    for (const auto& e : h_.ineqs)
      if (lin_val(e, l) != 0) return false;
  }
  return true;
}

bool Polyhedron::relint_contains(const RatVec& x) const {
  if (!contains(x)) return false;
  // Strict for every inequality not implicitly an equality; canonical ineqs are facets.
  for (const auto& e : h_.ineqs) {
    RatVec a(e.begin(), e.begin() + static_cast<long>(n_));
    if (dot(a, x) == e[n_]) return false;
  }
  return true;
}

RatVec Polyhedron::relint_point() const {
  if (is_empty()) throw EmptyPolyhedron("relative interior point of the empty set");
  RatVec p(n_);
  for (const auto& v : v_.vertices) p = add(p, v);
  p = scale(frac(1, static_cast<unsigned long>(v_.vertices.size())), p);
  for (const auto& r : v_.rays) p = add(p, r);
  return p;
}

std::vector<RatVec> Polyhedron::direction_space() const {
  std::vector<RatVec> span = v_.lineality;
  for (std::size_t i = 1; i < v_.vertices.size(); ++i) span.push_back(sub(v_.vertices[i], v_.vertices[0]));
  for (const auto& r : v_.rays) span.push_back(r);
  return span;
}

Polyhedron Polyhedron::intersect(const Polyhedron& o) const {
  if (is_empty() || o.is_empty()) return empty(n_);
  HalfspaceRep h = h_;
  h.ineqs.insert(h.ineqs.end(), o.h_.ineqs.begin(), o.h_.ineqs.end());
  h.eqs.insert(h.eqs.end(), o.h_.eqs.begin(), o.h_.eqs.end());
  return from_h(h);
}

Polyhedron Polyhedron::add_equations(const std::vector<RatVec>& eqs) const {
  if (is_empty()) return *this;
  HalfspaceRep h = h_;
  h.eqs.insert(h.eqs.end(), eqs.begin(), eqs.end());
  return from_h(h);
}

Polyhedron Polyhedron::add_inequalities(const std::vector<RatVec>& ineqs) const {
  if (is_empty()) return *this;
  HalfspaceRep h = h_;
  h.ineqs.insert(h.ineqs.end(), ineqs.begin(), ineqs.end());
  return from_h(h);
}

Polyhedron Polyhedron::linear_image(const RatMat& m, const RatVec& t) const {
  std::size_t out = m.size();
  if (is_empty()) return empty(out);
  GeneratorRep g;
  g.dim = out;
  for (const auto& v : v_.vertices) g.vertices.push_back(add(mat_vec(m, v), t));
  for (const auto& r : v_.rays) g.rays.push_back(mat_vec(m, r));
  for (const auto& l : v_.lineality) g.lineality.push_back(mat_vec(m, l));
  return from_v(g);
}

Polyhedron Polyhedron::linear_image(const RatMat& m) const { return linear_image(m, RatVec(m.size())); }

std::string Polyhedron::key() const {
  auto vecs = [](const std::vector<RatVec>& vs) {
    std::string s = "[";
    for (const auto& v : vs) {
      s += "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
      s += ")";
    }
    return s + "]";
  };
  if (is_empty()) return "E" + std::to_string(n_);
  return "V" + vecs(v_.vertices) + "R" + vecs(v_.rays) + "L" + vecs(v_.lineality);
}

Polyhedron recession_cone(const Polyhedron& p) {
  if (p.is_empty()) throw EmptyPolyhedron("recession cone of the empty set");
  GeneratorRep g;
  g.dim = p.ambient_dim();
  g.vertices.push_back(RatVec(g.dim));
  g.rays = p.rays();
  g.lineality = p.lineality();
  return Polyhedron::from_v(g);
}

std::vector<Face> faces(const Polyhedron& p) {
  if (p.is_empty()) throw EmptyPolyhedron("faces of the empty set");
  const std::size_t n = p.ambient_dim();
  const auto& ineqs = p.hrep().ineqs;
  const auto& verts = p.vertices();
  const auto& rays = p.rays();
  const std::size_t m = ineqs.size();
  auto lin = [n](const RatVec& row, const RatVec& x) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    return s;
  };
  // Incidence of generators with inequalities.
  std::vector<Bits> vtight(verts.size(), Bits(m)), rtight(rays.size(), Bits(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (lin(ineqs[i], verts[v]) == ineqs[i][n]) vtight[v].set(i);
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (lin(ineqs[i], rays[r]) == 0) rtight[r].set(i);
  }
  auto closure = [&](const Bits& t, Bits& vs, Bits& rs) {
    vs = Bits(verts.size());
    rs = Bits(rays.size());
    Bits full(m);
    full.set();
    Bits acc = full;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (t.is_subset_of(vtight[v])) {
        vs.set(v);
        acc &= vtight[v];
      }
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (t.is_subset_of(rtight[r])) {
        rs.set(r);
        acc &= rtight[r];
      }
    return acc;
  };
  std::map<Bits, std::pair<Bits, Bits>> seen;
  std::vector<Bits> queue;
  {
    Bits vs, rs;
    Bits t = closure(Bits(m), vs, rs);
    seen[t] = {vs, rs};
    queue.push_back(t);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Bits t = queue[qi];
    for (std::size_t i = 0; i < m; ++i) {
      if (t.test(i)) continue;
      Bits t2 = t;
      t2.set(i);
      Bits vs, rs;
      Bits c = closure(t2, vs, rs);
      if (vs.none()) continue;
      if (seen.count(c)) continue;
      seen[c] = {vs, rs};
      queue.push_back(c);
    }
  }
  std::vector<Face> out;
  for (const auto& [t, gens] : seen) {
    GeneratorRep g;
    g.dim = n;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (gens.first.test(v)) g.vertices.push_back(verts[v]);
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (gens.second.test(r)) g.rays.push_back(rays[r]);
    g.lineality = p.lineality();
    Polyhedron f = Polyhedron::from_v(g);
    out.push_back({f, f.dim()});
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.polyhedron.key() < b.polyhedron.key();
  });
  return out;
}

std::vector<Polyhedron> facets(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  for (auto& f : faces(p))
    if (f.dim == p.dim() - 1) out.push_back(f.polyhedron);
  return out;
}

bool relint_meets(const Polyhedron& a, const Polyhedron& b) {
  if (a.is_empty() || b.is_empty()) return false;
  const std::size_t n = a.ambient_dim();
  LinearProgram lp;
  lp.num_vars = n + 1;
  auto extend = [n](const RatVec& row, const Rat& slack) {
    RatVec r(row.begin(), row.begin() + static_cast<long>(n));
    r.push_back(slack);
    return r;
  };
  for (const auto* p : {&a, &b})
    for (const auto& e : p->hrep().eqs) {
      lp.eq_lhs.push_back(extend(e, 0));
      lp.eq_rhs.push_back(e[n]);
    }
  for (const auto& e : b.hrep().ineqs) {
    lp.ineq_lhs.push_back(extend(e, 0));
    lp.ineq_rhs.push_back(e[n]);
  }
  // Strictness on a's facets: normal . x - s >= offset, s <= 1, maximize s.
  for (const auto& e : a.hrep().ineqs) {
    lp.ineq_lhs.push_back(extend(e, -1));
    lp.ineq_rhs.push_back(e[n]);
  }
  RatVec cap(n + 1);
  cap[n] = -1;
  lp.ineq_lhs.push_back(cap);
  lp.ineq_rhs.push_back(-1);
  lp.objective.assign(n + 1, 0);
  lp.objective[n] = 1;
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Optimal) return false;
  return r.value > 0;
}

bool is_simplicial(const Polyhedron& p) {
  if (p.is_empty()) throw EmptyPolyhedron("simpliciality of the empty set");
  if (!p.is_pointed()) throw HasLineality("simpliciality needs a pointed polyhedron");
  return static_cast<int>(p.vertices().size() + p.rays().size()) == p.dim() + 1;
}

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  const std::size_t n = a.ambient_dim();
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(n);
  GeneratorRep g;
  g.dim = n;
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) g.vertices.push_back(add(u, v));
  g.rays = a.rays();
  g.rays.insert(g.rays.end(), b.rays().begin(), b.rays().end());
  g.lineality = a.lineality();
  g.lineality.insert(g.lineality.end(), b.lineality().begin(), b.lineality().end());
  return Polyhedron::from_v(g);
}

}  // namespace tropkern
