#include "tropkern/complex.hpp"

#include <algorithm>
#include <set>

#include "tropkern/errors.hpp"

namespace tropkern {

namespace {

// b is a subset of a, as closed subsets of N_Sigma.
bool trop_contains(const TropicalPolyhedron& a, const TropicalPolyhedron& b) {
  if (b.is_empty()) return true;
  if (a.is_empty()) return false;
  if (!a.fan().is_face(a.sedentarity(), b.sedentarity())) return false;
  if (b.dim() > a.dim()) return false;
  return a.stratum(b.sedentarity()).contains(b.finite_part());
}

RatMat drop_last(std::size_t n) {
  RatMat m(n, RatVec(n + 1));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatVec extend(const RatVec& v, const Rat& last) {
  RatVec out = v;
  out.push_back(last);
  return out;
}

std::vector<Polyhedron> upper_cells(const Polyhedron& h, std::size_t n) {
  RatVec down(n + 1);
  down[n] = -1;
  RatMat proj = drop_last(n);
  std::vector<Polyhedron> out;
  for (const auto& f : faces(h)) {
    if (recession_cone(f.polyhedron).contains(down)) continue;
    out.push_back(f.polyhedron.linear_image(proj));
  }
  return out;
}

std::vector<Polyhedron> with_faces(const std::vector<Polyhedron>& cells) {
  std::map<std::string, Polyhedron> all;
  for (const auto& c : cells)
    for (const auto& f : faces(c)) all.emplace(f.polyhedron.key(), f.polyhedron);
  std::vector<Polyhedron> out;
  for (auto& [k, p] : all) out.push_back(p);
  return out;
}

std::vector<Polyhedron> maximal_of(const std::vector<Polyhedron>& cells) {
  std::vector<Polyhedron> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cells.size() && maximal; ++j)
      if (i != j && cells[j].dim() > cells[i].dim() && cells[j].contains(cells[i])) maximal = false;
    if (maximal) out.push_back(cells[i]);
  }
  return out;
}

}  // namespace

void PolyhedralComplex::build(std::map<std::string, TropicalPolyhedron> all,
                              const std::map<std::string, std::vector<std::string>>& face_keys) {
  cells_.clear();
  for (auto& [k, c] : all) cells_.push_back(c);
  std::sort(cells_.begin(), cells_.end(), trop_less);
  index_.clear();
  for (std::size_t i = 0; i < cells_.size(); ++i) index_[cells_[i].key()] = i;
  faces_.assign(cells_.size(), {});
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    std::set<std::size_t> fs{i};
    auto it = face_keys.find(cells_[i].key());
    if (it != face_keys.end())
      for (const auto& k : it->second) fs.insert(index_.at(k));
    faces_[i].assign(fs.begin(), fs.end());
  }
}

PolyhedralComplex PolyhedralComplex::from_polyhedra(FanPtr fan, const std::vector<Polyhedron>& cells) {
  PolyhedralComplex c;
  c.fan_ = fan;
  std::map<std::string, TropicalPolyhedron> all;
  std::map<std::string, std::vector<std::string>> face_keys;
  for (const auto& p : cells) {
    if (p.is_empty()) continue;
    std::vector<TropicalPolyhedron> fs;
    for (const auto& f : faces(p)) fs.emplace_back(fan, 0, f.polyhedron);
    for (const auto& f : fs) {
      all.emplace(f.key(), f);
      auto& list = face_keys[f.key()];
      for (const auto& g : fs)
        if (g.dim() < f.dim() && f.finite_part().contains(g.finite_part())) list.push_back(g.key());
    }
  }
  c.build(std::move(all), face_keys);
  return c;
}

PolyhedralComplex PolyhedralComplex::from_tropical(FanPtr fan, const std::vector<TropicalPolyhedron>& cells) {
  PolyhedralComplex c;
  c.fan_ = fan;
  std::map<std::string, TropicalPolyhedron> all;
  std::map<std::string, std::vector<std::string>> face_keys;
  for (const auto& p : cells) {
    if (p.is_empty()) continue;
    if (!(p.fan() == *fan)) throw DimensionMismatch("cell over a different fan");
    std::vector<TropicalPolyhedron> fs = trop_faces(p);
    for (const auto& f : fs) {
      all.emplace(f.key(), f);
      auto& list = face_keys[f.key()];
      for (const auto& g : fs)
        if (g.key() != f.key() && trop_contains(f, g)) list.push_back(g.key());
    }
  }
  for (auto& [k, list] : face_keys) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  c.build(std::move(all), face_keys);
  return c;
}

std::optional<std::size_t> PolyhedralComplex::find(const TropicalPolyhedron& c) const {
  auto it = index_.find(c.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int PolyhedralComplex::dim() const {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, c.dim());
  return d;
}

std::vector<std::size_t> PolyhedralComplex::maximal_cells() const {
  std::vector<bool> is_face(cells_.size(), false);
  for (std::size_t i = 0; i < cells_.size(); ++i)
    for (std::size_t j : faces_[i])
      if (j != i) is_face[j] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (!is_face[i]) out.push_back(i);
  return out;
}

std::vector<Polyhedron> PolyhedralComplex::finite_cells() const {
  std::vector<Polyhedron> out;
  for (const auto& c : cells_)
    if (c.sedentarity() == 0) out.push_back(c.finite_part());
  return out;
}

bool PolyhedralComplex::is_simplicial() const {
  return std::all_of(cells_.begin(), cells_.end(), is_simplicial_cell);
}

LiftedCone lift_to_cone(const Polyhedron& t) {
  if (t.is_empty()) throw EmptyPolyhedron("cannot lift the empty set");
  if (!t.is_pointed()) throw HasLineality("lifted cone needs a pointed polyhedron");
  std::size_t n = t.ambient_dim();
  std::vector<RatVec> gens;
  RatVec inner(n + 1);
  Rat share = frac(1, static_cast<long>(t.vertices().size()));
  for (const auto& p : t.vertices()) {
    gens.push_back(extend(p, 1));
    inner = add(inner, scale(share, gens.back()));
  }
  for (const auto& v : t.rays()) {
    gens.push_back(extend(v, 0));
    inner = add(inner, gens.back());
  }
  return LiftedCone{t, Polyhedron::cone(n + 1, gens), inner};
}

bool is_simplicial_cell(const TropicalPolyhedron& d) {
  if (d.is_empty()) return true;
  const Polyhedron& f = d.finite_part();
  if (!f.is_pointed() || !is_simplicial(f)) return false;
  const Fan& fan = d.fan();
  const Polyhedron& rec = d.recession();
  for (std::size_t t : fan.star(d.sedentarity()))
    if (fan.star_cone(d.sedentarity(), t) == rec) return true;
  return false;
}

bool is_complete_complex(const std::vector<Polyhedron>& cells, std::size_t n) {
  std::vector<Polyhedron> all = with_faces(cells);
  if (all.empty()) return false;
  std::vector<Polyhedron> top;
  for (const auto& c : maximal_of(all)) {
    if (c.dim() != static_cast<int>(n)) return false;
    top.push_back(c);
  }
  std::map<std::string, int> shared;
  for (const auto& t : top)
    for (const auto& f : facets(t)) shared[f.key()]++;
  return std::all_of(shared.begin(), shared.end(), [](const auto& kv) { return kv.second == 2; });
}

PolyhedralComplex complex_from_closures(const std::vector<Polyhedron>& pi, FanPtr fan) {
  std::vector<TropicalPolyhedron> cells;
  for (const auto& t : pi) {
    TropicalPolyhedron c(fan, 0, t);
    if (!is_constant_towards_boundary(c)) throw NotConstantTowardsBoundary("closure of a cell is not constant towards the boundary");
    cells.push_back(c);
  }
  if (!is_complete_complex(pi, fan->ambient_dim())) throw NotComplete("complex does not cover N_R");
  return PolyhedralComplex::from_tropical(fan, cells);
}

PolyhedralComplex simplicial_refine(const PolyhedralComplex& pi, FanPtr fan) {
  std::vector<Polyhedron> cells;
  for (const auto& c : pi.cells()) {
    if (c.sedentarity() != 0) throw DimensionMismatch("simplicial refinement works in N_R");
    cells.push_back(c.finite_part());
  }
  cells = with_faces(cells);
  for (const auto& t : cells) {
    auto idx = fan->find(recession_cone(t));
    if (!idx) throw RecessionNotInFan("recession cone of a cell is not a cone of the fan");
    if (static_cast<int>(fan->generators(*idx).size()) != fan->cone_dim(*idx))
      throw FanNotSimplicial("recession cone of a cell is not simplicial");
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Polyhedron& a, const Polyhedron& b) { return a.dim() < b.dim(); });
  std::map<std::string, std::vector<Polyhedron>> pieces;
  for (const auto& t : cells) {
    if (is_simplicial(t)) {
      pieces[t.key()] = {t};
      continue;
    }
    LiftedCone lc = lift_to_cone(t);
    std::size_t n = t.ambient_dim();
    RatVec q(lc.interior.begin(), lc.interior.begin() + static_cast<long>(n));
    std::vector<Polyhedron> out;
    for (const auto& f : facets(t))
      for (const auto& s : pieces.at(f.key())) {
        GeneratorRep g{n, s.vertices(), s.rays(), {}};
        g.vertices.push_back(q);
        out.push_back(Polyhedron::from_v(g));
      }
    if (static_cast<int>(t.rays().size()) == t.dim()) out.push_back(Polyhedron::from_v(GeneratorRep{n, {q}, t.rays(), {}}));
    pieces[t.key()] = std::move(out);
  }
  std::vector<Polyhedron> top;
  for (const auto& t : maximal_of(cells))
    for (const auto& s : pieces.at(t.key())) top.push_back(s);
  return PolyhedralComplex::from_polyhedra(fan, top);
}

Polyhedron lifted_hypograph(const Polyhedron& t, const LiftConstraints& c) {
  if (t.is_empty()) throw EmptyPolyhedron("regular subdivision of the empty set");
  if (!t.is_pointed()) throw HasLineality("regular subdivision needs a pointed polyhedron");
  if (c.points.size() != c.point_bounds.size() || c.rays.size() != c.ray_bounds.size())
    throw DimensionMismatch("constraint lists have different lengths");
  std::size_t n = t.ambient_dim();
  GeneratorRep g;
  g.dim = n + 1;
  for (std::size_t i = 0; i < c.points.size(); ++i) g.vertices.push_back(extend(c.points[i], c.point_bounds[i]));
  for (std::size_t j = 0; j < c.rays.size(); ++j) g.rays.push_back(extend(c.rays[j], c.ray_bounds[j]));
  RatVec down(n + 1);
  down[n] = -1;
  g.rays.push_back(down);
  if (g.vertices.empty()) throw EmptyPolyhedron("no lifted points");
  Polyhedron h = Polyhedron::from_v(g);
  if (recession_cone(h).contains(scale(Rat(-1), down))) throw UnboundedMinimalFunction("slope bounds admit no concave function");
  if (h.linear_image(drop_last(n)) != t) throw InvariantViolation("constraints do not span the polyhedron");
  return h;
}

PolyhedralComplex regular_subdivision(const Polyhedron& t, const LiftConstraints& c) {
  Polyhedron h = lifted_hypograph(t, c);
  return PolyhedralComplex::from_polyhedra(std::make_shared<const Fan>(Fan::trivial(t.ambient_dim())), upper_cells(h, t.ambient_dim()));
}

TropicalPolyhedron thickening(const TropicalPolyhedron& d, const Rat& m) {
  const Fan& fan = d.fan();
  std::size_t s = d.sedentarity();
  std::size_t n = fan.ambient_dim();
  const Polyhedron& rec = d.recession();
  std::optional<std::size_t> tau;
  for (std::size_t t : fan.star(s))
    if (fan.star_cone(s, t) == rec) tau = t;
  if (!tau) throw RecessionNotInFan("thickening needs a recession cone from the star fan");
  RatVec push(n);
  std::vector<RatVec> rays;
  for (const auto& u : fan.generators(*tau)) {
    rays.push_back(to_rat(u));
    if (fan.cone(s).contains(to_rat(u))) push = add(push, scale(m, to_rat(u)));
  }
  GeneratorRep g{n, {}, rays, {}};
  for (const auto& w : d.finite_part().vertices()) g.vertices.push_back(add(fan.quotient(s).lift(w), push));
  return TropicalPolyhedron(d.fan_ptr(), 0, Polyhedron::from_v(g));
}

bool is_union_of_cells(const TropicalPolyhedron& member, const PolyhedralComplex& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    TropicalPolyhedron x = intersect_ctb(member, c.cell(i));
    if (x.is_empty()) continue;
    auto j = c.find(x);
    if (!j) return false;
    const auto& fs = c.faces_of(i);
    if (!std::binary_search(fs.begin(), fs.end(), *j)) return false;
  }
  return true;
}

PolyhedralComplex subdivide_for_family(const std::vector<TropicalPolyhedron>& family, FanPtr fan) {
  if (!fan->is_simplicial()) throw FanNotSimplicial("family subdivision needs a simplicial fan");
  if (!fan->is_complete()) throw NotComplete("the starting complex is the fan itself, which must be complete");
  for (const auto& l : family) {
    if (!(l.fan() == *fan)) throw DimensionMismatch("family member over a different fan");
    if (!is_constant_towards_boundary(l)) throw NotConstantTowardsBoundary("family member is not constant towards the boundary");
  }
  std::size_t n = fan->ambient_dim();
  std::vector<Polyhedron> pi;
  for (std::size_t i = 0; i < fan->size(); ++i) pi.push_back(fan->cone(i));
  PolyhedralComplex c0 = complex_from_closures(pi, fan);

  // Pieces with recession cones in the star fans.
  std::map<std::string, TropicalPolyhedron> parts;
  Rat bound = 0;
  for (const auto& l : family) {
    for (const auto& v : l.finite_part().vertices())
      for (const auto& x : v) bound = std::max(bound, Rat(abs(x)));
    for (const auto& cell : c0.cells()) {
      TropicalPolyhedron x = intersect_ctb(l, cell);
      if (!x.is_empty()) parts.emplace(x.key(), x);
    }
  }
  Rat m = bound + 1;
  std::vector<Polyhedron> targets;
  for (auto& [k, x] : parts) targets.push_back(x.sedentarity() == 0 ? x.finite_part() : thickening(x, m).finite_part());

  PolyhedralComplex current = PolyhedralComplex::from_polyhedra(fan, pi);
  for (const auto& lam : targets) {
    const Polyhedron& sigma = recession_cone(lam);
    std::vector<Polyhedron> next;
    for (std::size_t i : current.maximal_cells()) {
      const Polyhedron& t = current.cell(i).finite_part();
      Polyhedron meet = t.intersect(lam);
      if (meet.is_empty()) {
        next.push_back(t);
        continue;
      }
      LiftConstraints lc;
      for (const auto& q : meet.vertices()) {
        lc.points.push_back(q);
        lc.point_bounds.push_back(0);
      }
      for (const auto& p : t.vertices()) {
        lc.points.push_back(p);
        lc.point_bounds.push_back(-1);
      }
      for (const auto& v : t.rays()) {
        lc.rays.push_back(v);
        lc.ray_bounds.push_back(sigma.contains(v) ? 0 : -1);
      }
      for (const auto& piece : upper_cells(lifted_hypograph(t, lc), n))
        if (piece.dim() == static_cast<int>(n)) next.push_back(piece);
    }
    current = simplicial_refine(PolyhedralComplex::from_polyhedra(fan, next), fan);
  }
  PolyhedralComplex out = complex_from_closures(current.finite_cells(), fan);
  for (const auto& l : family)
    if (!is_union_of_cells(l, out)) throw InvariantViolation("family member is not a union of cells");
  return out;
}

PolyhedralComplex common_refinement(const PolyhedralComplex& a, const PolyhedralComplex& b) {
  if (b.size() == 0) return a;
  if (!(a.fan() == b.fan())) throw DimensionMismatch("complexes over different fans");
  std::vector<TropicalPolyhedron> cells;
  for (std::size_t i : a.maximal_cells())
    for (std::size_t j : b.maximal_cells()) {
      TropicalPolyhedron x = intersect_ctb(a.cell(i), b.cell(j));
      if (!x.is_empty()) cells.push_back(x);
    }
  return PolyhedralComplex::from_tropical(a.fan_ptr(), cells);
}

}  // namespace tropkern
