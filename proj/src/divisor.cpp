#include "tropkern/divisor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "tropkern/errors.hpp"
#include "tropkern/exactlin.hpp"

namespace tropkern {

namespace {

Rat eval_affine(const AffinePiece& p, const RatVec& x) { return dot(to_rat(p.slope), x) + p.constant; }

// phi agrees with both pieces on the common part of their cells.
bool pieces_agree(const AffinePiece& a, const AffinePiece& b) {
  if (a.slope == b.slope && a.constant == b.constant) return true;
  Polyhedron common = a.cell.intersect(b.cell);
  if (common.is_empty()) return true;
  RatVec diff = to_rat(sub(a.slope, b.slope));
  for (const auto& v : common.vertices())
    if (dot(diff, v) + a.constant - b.constant != 0) return false;
  for (const auto& r : common.rays())
    if (dot(diff, r) != 0) return false;
  for (const auto& l : common.lineality())
    if (dot(diff, l) != 0) return false;
  return true;
}

std::vector<RatVec> facet_planes(const std::vector<AffinePiece>& pieces) {
  std::set<RatVec> out;
  for (const auto& p : pieces)
    for (const auto& r : p.cell.hrep().ineqs) out.insert(to_rat(primitive_integer(r)));
  return {out.begin(), out.end()};
}

// Union of the cells is N_R: refine the whole space along all facet hyperplanes and check
// every chamber not yet inside a cell.
bool covers(std::size_t n, const std::vector<AffinePiece>& pieces) {
  auto inside = [&](const Polyhedron& q) {
    for (const auto& p : pieces)
      if (p.cell.contains(q)) return true;
    return false;
  };
  std::vector<Polyhedron> open{Polyhedron::whole(n)};
  for (const auto& h : facet_planes(pieces)) {
    std::vector<Polyhedron> next;
    for (const auto& q : open) {
      if (inside(q)) continue;
      RatVec up = h, down = scale(Rat(-1), h);
      for (const auto& part : {q.add_inequalities({up}), q.add_inequalities({down})})
        if (part.dim() == static_cast<int>(n)) next.push_back(part);
    }
    open = std::move(next);
  }
  return std::all_of(open.begin(), open.end(), inside);
}

std::vector<AffinePiece> dedupe(std::vector<AffinePiece> pieces) {
  std::map<std::string, AffinePiece> by_key;
  for (auto& p : pieces) by_key.emplace(p.cell.key(), std::move(p));
  std::vector<AffinePiece> out;
  for (auto& [k, p] : by_key) out.push_back(std::move(p));
  return out;
}

IntVec ray_generator(const Polyhedron& ray) {
  if (!ray.rays().empty()) return primitive_integer(ray.rays()[0]);
  throw InvariantViolation("cone is not a ray");
}

Int boundary_index(const Fan& fan, std::size_t sigma, std::size_t tau, const Polyhedron& cell, const Polyhedron& face) {
  std::size_t rt = fan.stratum_dim(tau);
  if (rt == 0) return 1;
  RatMat t = fan.transport(sigma, tau);
  Lattice src = Lattice::saturated_span(cell.ambient_dim(), cell.direction_space());
  IntMat pushed;
  for (const auto& b : src.basis()) pushed.push_back(to_int(mat_vec(t, to_rat(b))));
  Lattice image = Lattice::from_generators(rt, pushed);
  Lattice sat = Lattice::saturated_span(rt, face.direction_space());
  return lattice_index(image, sat);
}

using Derivative = std::function<Int(const WeightedCell&, std::size_t tau, const IntVec& omega)>;

// Boundary faces of codimension one of each cell, weighted by m * index * derivative along
// the ray of the star fan they come from. omega lives in N(sed).
std::vector<WeightedCell> boundary_part(const TropicalCycle& c, const Derivative& deriv) {
  const Fan& fan = c.fan();
  std::vector<WeightedCell> out;
  for (const auto& wc : c.cells()) {
    std::size_t sigma = wc.cell.sedentarity();
    for (std::size_t tau : fan.star(sigma)) {
      if (tau == sigma) continue;
      const Polyhedron& face = wc.cell.stratum(tau);
      if (face.is_empty() || face.dim() != c.dim() - 1) continue;
      Polyhedron rho = fan.star_cone(sigma, tau).intersect(wc.cell.recession());
      if (rho.dim() != 1) throw InvariantViolation("boundary face does not come from a ray");
      IntVec omega = ray_generator(rho);
      Int w = wc.weight * boundary_index(fan, sigma, tau, wc.cell.finite_part(), face) * deriv(wc, tau, omega);
      if (w != 0) out.push_back({TropicalPolyhedron(c.fan_ptr(), tau, face), w});
    }
  }
  return out;
}

}  // namespace

PiecewiseAffineFunction::PiecewiseAffineFunction(std::size_t n, std::vector<AffinePiece> pieces)
    : n_(n), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw NotComplete("piecewise affine function without pieces");
  for (const auto& p : pieces_) {
    if (p.cell.ambient_dim() != n_ || p.slope.size() != n_) throw DimensionMismatch("piece of the wrong dimension");
    if (p.cell.dim() != static_cast<int>(n_)) throw DimensionMismatch("cells must be full-dimensional");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (!pieces_agree(pieces_[i], pieces_[j])) throw InvariantViolation("affine pieces disagree on a shared face");
  if (!covers(n_, pieces_)) throw NotComplete("cells do not cover N_R");
}

PiecewiseAffineFunction PiecewiseAffineFunction::unchecked(std::size_t n, std::vector<AffinePiece> pieces) {
  PiecewiseAffineFunction f;
  f.n_ = n;
  f.pieces_ = std::move(pieces);
  return f;
}

PiecewiseAffineFunction PiecewiseAffineFunction::affine(const IntVec& slope, const Rat& constant) {
  return unchecked(slope.size(), {{Polyhedron::whole(slope.size()), slope, constant}});
}

PiecewiseAffineFunction PiecewiseAffineFunction::max_of(std::size_t n, const std::vector<std::pair<IntVec, Rat>>& terms) {
  if (terms.empty()) throw NotComplete("maximum of no terms");
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].first.size() != n) throw DimensionMismatch("slope of the wrong length");
    HalfspaceRep h;
    h.dim = n;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (j == i) continue;
      RatVec row = to_rat(sub(terms[i].first, terms[j].first));
      row.push_back(terms[j].second - terms[i].second);
      h.ineqs.push_back(row);
    }
    Polyhedron cell = Polyhedron::from_h(h);
    if (cell.dim() == static_cast<int>(n)) pieces.push_back({cell, terms[i].first, terms[i].second});
  }
  return unchecked(n, dedupe(std::move(pieces)));
}

PiecewiseAffineFunction PiecewiseAffineFunction::min_of(std::size_t n, const std::vector<std::pair<IntVec, Rat>>& terms) {
  std::vector<std::pair<IntVec, Rat>> neg;
  for (const auto& [m, c] : terms) neg.emplace_back(scale(Int(-1), m), -c);
  return -max_of(n, neg);
}

const AffinePiece& PiecewiseAffineFunction::piece_at(const RatVec& x) const {
  for (const auto& p : pieces_)
    if (p.cell.contains(x)) return p;
  throw NotComplete("point outside every cell");
}

Rat PiecewiseAffineFunction::operator()(const RatVec& x) const { return eval_affine(piece_at(x), x); }

std::vector<RatVec> PiecewiseAffineFunction::hyperplanes() const { return facet_planes(pieces_); }

PiecewiseAffineFunction operator+(const PiecewiseAffineFunction& a, const PiecewiseAffineFunction& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("adding functions on different spaces");
  std::vector<AffinePiece> pieces;
  for (const auto& p : a.pieces())
    for (const auto& q : b.pieces()) {
      Polyhedron cell = p.cell.intersect(q.cell);
      if (cell.dim() == static_cast<int>(a.ambient_dim())) pieces.push_back({cell, add(p.slope, q.slope), p.constant + q.constant});
    }
  return PiecewiseAffineFunction::unchecked(a.ambient_dim(), dedupe(std::move(pieces)));
}

PiecewiseAffineFunction operator-(const PiecewiseAffineFunction& a) {
  std::vector<AffinePiece> pieces = a.pieces();
  for (auto& p : pieces) {
    p.slope = scale(Int(-1), p.slope);
    p.constant = -p.constant;
  }
  return PiecewiseAffineFunction::unchecked(a.ambient_dim(), pieces);
}

PiecewiseAffineFunction operator-(const PiecewiseAffineFunction& a, const PiecewiseAffineFunction& b) { return a + (-b); }

PLOnFan::PLOnFan(FanPtr fan, std::vector<IntVec> slopes) : fan_(std::move(fan)), slopes_(std::move(slopes)) {
  auto maxc = fan_->maximal_cones();
  if (slopes_.size() != maxc.size()) throw DimensionMismatch("one slope per maximal cone expected");
  for (const auto& k : slopes_)
    if (k.size() != fan_->ambient_dim()) throw DimensionMismatch("slope of the wrong length");
  for (std::size_t a = 0; a < maxc.size(); ++a)
    for (std::size_t b = a + 1; b < maxc.size(); ++b) {
      Polyhedron common = fan_->cone(maxc[a]).intersect(fan_->cone(maxc[b]));
      IntVec diff = sub(slopes_[a], slopes_[b]);
      for (const auto& r : common.rays())
        if (dot(to_rat(diff), r) != 0) throw InvariantViolation("slopes disagree on a common face");
    }
}

PLOnFan PLOnFan::from_ray_values(FanPtr fan, const std::vector<Int>& values) {
  if (!fan->is_simplicial()) throw FanNotSimplicial("ray values determine a function only on simplicial fans");
  auto rays = fan->rays();
  if (values.size() != rays.size()) throw DimensionMismatch("one value per ray expected");
  std::map<IntVec, Int> value_of;
  for (std::size_t i = 0; i < rays.size(); ++i) value_of[fan->generators(rays[i])[0]] = values[i];
  std::size_t n = fan->ambient_dim();
  std::vector<IntVec> slopes;
  for (std::size_t s : fan->maximal_cones()) {
    RatMat a;
    RatVec b;
    for (const auto& g : fan->generators(s)) {
      a.push_back(to_rat(g));
      b.push_back(value_of.at(g));
    }
    // Complete the system along the orthogonal complement so the slope is unique.
    for (const auto& v : nullspace(a, n)) {
      a.push_back(v);
      b.push_back(0);
    }
    auto k = solve(a, b);
    if (!k || !is_integral(*k)) throw InvariantViolation("ray values do not give an integral slope");
    slopes.push_back(to_int(*k));
  }
  return PLOnFan(std::move(fan), slopes);
}

PLOnFan PLOnFan::linear(FanPtr fan, const IntVec& m) {
  std::size_t count = fan->maximal_cones().size();
  return PLOnFan(std::move(fan), std::vector<IntVec>(count, m));
}

const IntVec& PLOnFan::slope_on(std::size_t cone) const {
  auto maxc = fan_->maximal_cones();
  for (std::size_t a = 0; a < maxc.size(); ++a)
    if (fan_->is_face(cone, maxc[a])) return slopes_[a];
  throw InvariantViolation("cone without a maximal cone");
}

Rat PLOnFan::operator()(const RatVec& v) const {
  auto maxc = fan_->maximal_cones();
  for (std::size_t a = 0; a < maxc.size(); ++a)
    if (fan_->cone(maxc[a]).contains(v)) return dot(to_rat(slopes_[a]), v);
  throw NotComplete("vector outside the support of the fan");
}

PLOnFan operator+(const PLOnFan& a, const PLOnFan& b) {
  if (!(a.fan() == b.fan())) throw DimensionMismatch("adding functions on different fans");
  std::vector<IntVec> s;
  for (std::size_t i = 0; i < a.slopes().size(); ++i) s.push_back(add(a.slopes()[i], b.slopes()[i]));
  return PLOnFan(a.fan_ptr(), s);
}

PLOnFan operator-(const PLOnFan& a) {
  std::vector<IntVec> s;
  for (const auto& k : a.slopes()) s.push_back(scale(Int(-1), k));
  return PLOnFan(a.fan_ptr(), s);
}

bool operator==(const PLOnFan& a, const PLOnFan& b) {
  if (!(a.fan() == b.fan())) return false;
  // Slopes matter only on the cones themselves.
  auto maxc = a.fan().maximal_cones();
  for (std::size_t i = 0; i < maxc.size(); ++i)
    for (const auto& g : a.fan().generators(maxc[i]))
      if (dot(a.slopes()[i], g) != dot(b.slopes()[i], g)) return false;
  return true;
}

ToricCartierDivisor operator+(const ToricCartierDivisor& a, const ToricCartierDivisor& b) { return {a.psi + b.psi}; }
ToricCartierDivisor operator-(const ToricCartierDivisor& a) { return {-a.psi}; }

std::vector<Int> ray_multiplicities(const ToricCartierDivisor& d) {
  std::vector<Int> out;
  const Fan& fan = d.psi.fan();
  for (std::size_t r : fan.rays()) out.push_back(-dot(d.psi.slope_on(r), fan.generators(r)[0]));
  return out;
}

PLOnFan recession_function(const PiecewiseAffineFunction& phi, FanPtr fan) {
  if (phi.ambient_dim() != fan->ambient_dim()) throw DimensionMismatch("function and fan live in different spaces");
  for (const auto& p : phi.pieces())
    if (!is_constant_towards_boundary(TropicalPolyhedron(fan, 0, p.cell)))
      throw NotConstantTowardsBoundary("cell of the function is not constant towards the boundary");
  std::vector<IntVec> slopes;
  for (std::size_t s : fan->maximal_cones()) {
    const Polyhedron& cone = fan->cone(s);
    std::optional<IntVec> k;
    for (const auto& p : phi.pieces()) {
      if (!recession_cone(p.cell).contains(cone)) continue;
      if (!k) {
        k = p.slope;
        continue;
      }
      for (const auto& g : fan->generators(s))
        if (dot(sub(*k, p.slope), g) != 0) throw UnboundedDifference("function grows differently along a cone");
    }
    if (!k) throw UnboundedDifference("no cell recedes along a maximal cone");
    slopes.push_back(*k);
  }
  PLOnFan rec(fan, slopes);
  // phi - rec(phi) is bounded iff every recession direction of every cell sees the same growth.
  for (const auto& p : phi.pieces()) {
    std::vector<RatVec> dirs = p.cell.rays();
    for (const auto& l : p.cell.lineality()) {
      dirs.push_back(l);
      dirs.push_back(scale(Rat(-1), l));
    }
    for (const auto& r : dirs) {
      Rat grow;
      try {
        grow = rec(r);
      } catch (const NotComplete&) {
        throw NotConstantTowardsBoundary("recession direction outside the support of the fan");
      }
      if (dot(to_rat(p.slope), r) != grow) throw UnboundedDifference("function minus its recession is unbounded");
    }
  }
  return rec;
}

std::vector<std::size_t> unbounded_locus(const ToricCartierDivisor& d) {
  std::vector<std::size_t> out;
  const Fan& fan = d.psi.fan();
  for (std::size_t r : fan.rays())
    if (dot(d.psi.slope_on(r), fan.generators(r)[0]) != 0) out.push_back(r);
  return out;
}

bool properly_intersects(const std::vector<ToricCartierDivisor>& divs, const TropicalCycle& c) {
  const Fan& fan = c.fan();
  std::vector<std::vector<std::size_t>> loci;
  for (const auto& d : divs) {
    if (!(d.psi.fan() == fan)) throw DimensionMismatch("divisor and cycle over different fans");
    loci.push_back(unbounded_locus(d));
  }
  // Dimension of the closure of N(tau) meeting |C|.
  auto meet_dim = [&](std::size_t tau) {
    int best = -1;
    for (const auto& wc : c.cells())
      for (std::size_t t : fan.star(tau)) {
        if (!fan.is_face(wc.cell.sedentarity(), t)) continue;
        const Polyhedron& s = wc.cell.stratum(t);
        if (!s.is_empty()) best = std::max(best, s.dim());
      }
    return best;
  };
  std::size_t k = divs.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t(1) << i)) members.push_back(i);
    int allowed = c.dim() - static_cast<int>(members.size());
    // Every choice of one unbounded ray per member spans a cone or meets nothing.
    std::function<bool(std::size_t, std::size_t)> ok = [&](std::size_t pos, std::size_t cone) {
      if (pos == members.size()) return meet_dim(cone) <= allowed;
      for (std::size_t r : loci[members[pos]]) {
        auto next = fan.minimal_common(cone, r);
        if (next && !ok(pos + 1, *next)) return false;
      }
      return true;
    };
    if (!ok(0, 0)) return false;
  }
  return true;
}

TropicalCycle corner_locus(const PiecewiseAffineFunction& phi, const TropicalCycle& c) {
  for (const auto& wc : c.cells())
    if (wc.cell.sedentarity() != 0) throw NotSedentarityZero("corner locus needs a cycle in N_R");
  return corner_locus_in_stratum(phi, c, 0);
}

TropicalCycle corner_locus_in_stratum(const PiecewiseAffineFunction& phi, const TropicalCycle& c, std::size_t sigma) {
  for (const auto& wc : c.cells())
    if (wc.cell.sedentarity() != sigma) throw DimensionMismatch("cell outside the stratum");
  if (c.dim() < 1) throw DimensionMismatch("corner locus of a zero-dimensional cycle");
  if (phi.ambient_dim() != c.fan().stratum_dim(sigma)) throw DimensionMismatch("function and cycle live in different spaces");
  TropicalCycle refined = subdivide_cycle(c, phi.hyperplanes(), sigma);
  std::vector<IntVec> slope_of;
  for (const auto& wc : refined.cells()) slope_of.push_back(phi.piece_at(wc.cell.finite_part().relint_point()).slope);

  struct Face {
    Polyhedron poly;
    RatVec normal_sum;
    Rat slope_sum;
    IntVec some_slope;
  };
  std::map<std::string, Face> faces;
  for (std::size_t i = 0; i < refined.cells().size(); ++i) {
    const auto& wc = refined.cells()[i];
    const Polyhedron& p = wc.cell.finite_part();
    for (const auto& f : facets(p)) {
      RatVec n = to_rat(scale(wc.weight, primitive_normal(p, f)));
      Rat s = dot(to_rat(slope_of[i]), n);
      auto it = faces.find(f.key());
      if (it == faces.end()) {
        faces.emplace(f.key(), Face{f, n, s, slope_of[i]});
      } else {
        it->second.normal_sum = add(it->second.normal_sum, n);
        it->second.slope_sum += s;
      }
    }
  }
  std::vector<WeightedCell> out;
  for (const auto& [k, f] : faces) {
    Lattice span = Lattice::saturated_span(f.poly.ambient_dim(), f.poly.direction_space());
    if (!span.coordinates(f.normal_sum)) throw InvariantViolation("corner locus of an unbalanced cycle");
    Rat w = -f.slope_sum + dot(to_rat(f.some_slope), f.normal_sum);
    if (w != 0) out.push_back({TropicalPolyhedron(c.fan_ptr(), sigma, f.poly), w.get_num()});
  }
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < refined.cells().size(); ++i) index_of[refined.cells()[i].cell.key()] = i;
  auto bnd = boundary_part(refined, [&](const WeightedCell& wc, std::size_t, const IntVec& omega) -> Int {
    return dot(slope_of[index_of.at(wc.cell.key())], omega);
  });
  out.insert(out.end(), bnd.begin(), bnd.end());
  return normalize(TropicalCycle(c.fan_ptr(), c.dim() - 1, out));
}

TropicalCycle toric_intersect(const ToricCartierDivisor& d, const TropicalCycle& c) {
  const Fan& fan = c.fan();
  if (!(d.psi.fan() == fan)) throw DimensionMismatch("divisor and cycle over different fans");
  if (c.dim() < 1) throw DimensionMismatch("intersecting a zero-dimensional cycle");
  auto bad = unbounded_locus(d);
  for (const auto& wc : c.cells())
    for (std::size_t r : bad)
      if (fan.is_face(r, wc.cell.sedentarity())) throw CycleInUnboundedLocus("stratum of the cycle lies in the unbounded locus");
  // On the chart of tau the divisor is -k_tau, which vanishes on span(sed) and so descends.
  auto bnd = boundary_part(c, [&](const WeightedCell& wc, std::size_t tau, const IntVec& omega) -> Int {
    IntVec lift = wc.cell.sedentarity() == 0 ? omega : mat_vec(fan.quotient(wc.cell.sedentarity()).section, omega);
    return -dot(d.psi.slope_on(tau), lift);
  });
  return normalize(TropicalCycle(c.fan_ptr(), c.dim() - 1, bnd));
}

bool check_commutativity(const ToricCartierDivisor& d1, const ToricCartierDivisor& d2, const TropicalCycle& c) {
  if (d1.psi == d2.psi) return true;
  return cycles_equal(toric_intersect(d1, toric_intersect(d2, c)), toric_intersect(d2, toric_intersect(d1, c)));
}

PLOnFan pull_back(const EquivariantMap& f, const PLOnFan& psi) {
  if (!(psi.fan() == *f.target)) throw IncompatibleMap("function is not on the target fan");
  std::vector<IntVec> slopes;
  IntMat lt = transpose(f.linear);
  for (std::size_t s : f.source->maximal_cones()) {
    std::size_t k = target_cone(f, s);
    slopes.push_back(f.target->ambient_dim() == 0 ? IntVec(f.source->ambient_dim()) : mat_vec(lt, psi.slope_on(k)));
  }
  return PLOnFan(f.source, slopes);
}

ToricCartierDivisor pull_back(const EquivariantMap& f, const ToricCartierDivisor& d) { return {pull_back(f, d.psi)}; }

}  // namespace tropkern
