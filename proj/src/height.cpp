#include "tropkern/height.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tropkern/errors.hpp"

namespace tropkern {

namespace {

std::vector<ToricCartierDivisor> divisors_of(const std::vector<GreenFunction>& greens) {
  std::vector<ToricCartierDivisor> out;
  for (const auto& g : greens) out.push_back(g.divisor);
  return out;
}

void require_proper(const std::vector<GreenFunction>& greens, const TropicalCycle& c) {
  if (!properly_intersects(divisors_of(greens), c)) throw ImproperIntersection("divisors do not intersect the cycle properly");
}

bool vanishes_on(const GreenFunction& g, std::size_t sigma) {
  const Fan& fan = g.divisor.psi.fan();
  for (std::size_t r : unbounded_locus(g.divisor))
    if (fan.is_face(r, sigma)) return false;
  return true;
}

std::vector<std::size_t> sedentarities(const TropicalCycle& c) {
  std::vector<std::size_t> out;
  for (const auto& wc : c.cells()) out.push_back(wc.cell.sedentarity());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

GreenFunction green_from_pa(const PiecewiseAffineFunction& phi, FanPtr fan) {
  if (!fan->is_complete()) throw NotComplete("Green functions need a complete fan");
  return {phi, {-recession_function(phi, std::move(fan))}};
}

GreenFunction pull_back(const EquivariantMap& f, const GreenFunction& g) {
  check_compatible(f);
  std::size_t n = f.source->ambient_dim();
  RatMat l = to_rat(f.linear);
  IntMat lt = transpose(f.linear);
  std::vector<AffinePiece> pieces;
  for (const auto& p : g.phi.pieces()) {
    // A (L x + t) >= b becomes (A L) x >= b - A t.
    HalfspaceRep h;
    h.dim = n;
    for (const auto& row : p.cell.hrep().ineqs) {
      RatVec a(row.begin(), row.end() - 1);
      RatVec r = n == 0 ? RatVec{} : mat_vec(transpose(l), a);
      r.push_back(row.back() - dot(a, f.translation));
      h.ineqs.push_back(r);
    }
    Polyhedron cell = Polyhedron::from_h(h);
    if (cell.dim() != static_cast<int>(n)) continue;
    pieces.push_back({cell, mat_vec(lt, p.slope), p.constant + dot(to_rat(p.slope), f.translation)});
  }
  std::map<std::string, AffinePiece> by_key;
  for (auto& p : pieces) by_key.emplace(p.cell.key(), p);
  pieces.clear();
  for (auto& [k, p] : by_key) pieces.push_back(p);
  return {PiecewiseAffineFunction::unchecked(n, pieces), pull_back(f, g.divisor)};
}

PiecewiseAffineFunction restrict_to_stratum(const GreenFunction& g, std::size_t sigma) {
  if (sigma == 0) return g.phi;
  if (!vanishes_on(g, sigma)) throw GreenUndefinedAtPoint("stratum lies in the unbounded locus of the divisor");
  const FanPtr& fan = g.divisor.psi.fan_ptr();
  std::size_t r = fan->stratum_dim(sigma);
  RatMat proj = fan->projection(sigma);
  const IntMat& sect = fan->quotient(sigma).section;
  std::map<std::string, AffinePiece> by_key;
  for (const auto& p : g.phi.pieces()) {
    if (!recession_cone(p.cell).contains(fan->cone(sigma))) continue;
    Polyhedron img = p.cell.linear_image(proj);
    if (img.dim() != static_cast<int>(r)) continue;
    IntVec k(r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < p.slope.size(); ++i) k[j] += p.slope[i] * sect[i][j];
    by_key.emplace(img.key(), AffinePiece{img, k, p.constant});
  }
  std::vector<AffinePiece> pieces;
  for (auto& [key, p] : by_key) pieces.push_back(p);
  if (pieces.empty()) throw InvariantViolation("no cell of the Green function reaches the stratum");
  return PiecewiseAffineFunction::unchecked(r, pieces);
}

Rat green_value(const GreenFunction& g, const TropicalPolyhedron& point) {
  if (point.dim() != 0) throw NotZeroDimensional("Green functions are integrated against points");
  std::size_t sigma = point.sedentarity();
  if (!vanishes_on(g, sigma)) throw GreenUndefinedAtPoint("point lies in the unbounded locus of the divisor");
  const RatVec& y = point.finite_part().vertices().at(0);
  if (sigma == 0) return g.phi(y);
  const Fan& fan = g.divisor.psi.fan();
  std::size_t n = fan.ambient_dim();
  RatVec lift(n);
  if (!y.empty()) lift = mat_vec(to_rat(fan.quotient(sigma).section), y);
  for (const auto& p : g.phi.pieces()) {
    if (!recession_cone(p.cell).contains(fan.cone(sigma))) continue;
    TropicalPolyhedron cell(g.divisor.psi.fan_ptr(), 0, p.cell);
    if (cell.stratum(sigma).contains(y)) return dot(to_rat(p.slope), lift) + p.constant;
  }
  throw InvariantViolation("no cell of the Green function reaches the point");
}

Rat integrate(const GreenFunction& g, const TropicalCycle& zero_cycle) {
  if (zero_cycle.dim() != 0) throw NotZeroDimensional("integration against a positive-dimensional cycle");
  Rat total = 0;
  for (const auto& wc : zero_cycle.cells()) total += Rat(wc.weight) * green_value(g, wc.cell);
  return total;
}

TropicalCycle chern_cycle(const GreenFunction& g, const TropicalCycle& c) {
  require_proper({g}, c);
  if (!(g.divisor.psi.fan() == c.fan())) throw DimensionMismatch("Green function and cycle over different fans");
  if (c.dim() < 1) throw DimensionMismatch("first Chern cycle of a zero-dimensional cycle");
  TropicalCycle total = TropicalCycle::zero(c.fan_ptr(), c.dim() - 1);
  for (std::size_t sigma : sedentarities(c)) {
    TropicalCycle part = c.part_of_sedentarity(sigma);
    if (c.fan().stratum_dim(sigma) == 0) continue;
    TropicalCycle dc = toric_intersect(g.divisor, part);
    TropicalCycle gc = corner_locus_in_stratum(restrict_to_stratum(g, sigma), part, sigma);
    total = total + dc - gc;
  }
  TropicalCycle out = normalize(total);
  // The boundary parts cancel; what remains lives in the strata of the input.
  auto own = sedentarities(c);
  for (const auto& wc : out.cells())
    if (!std::binary_search(own.begin(), own.end(), wc.cell.sedentarity()))
      throw InvariantViolation("boundary terms of the Chern cycle do not cancel");
  return out;
}

TropicalCycle ma_measure(const std::vector<GreenFunction>& greens, const TropicalCycle& c) {
  if (greens.size() != static_cast<std::size_t>(c.dim())) throw DimensionMismatch("one Green function per dimension expected");
  require_proper(greens, c);
  TropicalCycle cur = c;
  for (auto it = greens.rbegin(); it != greens.rend(); ++it) cur = chern_cycle(*it, cur);
  return cur;
}

NeronPair star_product(const GreenFunction& g, const NeronPair& pair) {
  require_proper({g}, pair.cycle);
  for (const auto& t : pair.accumulator.terms) require_proper({g}, t.support);
  // Past full depth the cycle part is the empty zero-cycle.
  NeronPair out{pair.cycle.dim() == 0 ? TropicalCycle::zero(pair.cycle.fan_ptr(), 0) : toric_intersect(g.divisor, pair.cycle), {}};
  out.accumulator.terms.push_back({g, pair.cycle});
  for (const auto& t : pair.accumulator.terms) out.accumulator.terms.push_back({t.green, chern_cycle(g, t.support)});
  return out;
}

std::vector<Rat> evaluate_terms(const HeightAccumulator& acc) {
  std::vector<Rat> out;
  for (const auto& t : acc.terms) out.push_back(integrate(t.green, t.support));
  return out;
}

Rat evaluate(const HeightAccumulator& acc) {
  auto terms = evaluate_terms(acc);
  return std::accumulate(terms.begin(), terms.end(), Rat(0));
}

Rat local_height(const std::vector<GreenFunction>& greens, const TropicalCycle& c) {
  if (greens.size() != static_cast<std::size_t>(c.dim()) + 1) throw DimensionMismatch("d+1 Green functions expected");
  require_proper(greens, c);
  if (c.dim() == 0) return integrate(greens[0], c);
  std::vector<GreenFunction> rest(greens.begin() + 1, greens.end());
  return local_height(rest, toric_intersect(greens[0].divisor, c)) + integrate(greens[0], ma_measure(rest, c));
}

Rat local_height_expanded(const std::vector<GreenFunction>& greens, const TropicalCycle& c) {
  if (greens.size() != static_cast<std::size_t>(c.dim()) + 1) throw DimensionMismatch("d+1 Green functions expected");
  require_proper(greens, c);
  NeronPair pair{c, {}};
  for (auto it = greens.rbegin(); it != greens.rend(); ++it) pair = star_product(*it, pair);
  return evaluate(pair.accumulator);
}

bool check_reciprocity(const std::vector<GreenFunction>& greens, const TropicalCycle& c) {
  std::vector<std::size_t> order(greens.size());
  std::iota(order.begin(), order.end(), 0);
  Rat first = local_height(greens, c);
  while (std::next_permutation(order.begin(), order.end())) {
    std::vector<GreenFunction> perm;
    for (std::size_t i : order) perm.push_back(greens[i]);
    if (local_height(perm, c) != first) return false;
  }
  return true;
}

bool same_function(const PiecewiseAffineFunction& a, const PiecewiseAffineFunction& b) {
  PiecewiseAffineFunction diff = a - b;
  for (const auto& p : diff.pieces())
    if (!is_zero(p.slope) || p.constant != 0) return false;
  return true;
}

NeronPair direct_image_pair(const EquivariantMap& f, const NeronPair& pair, const std::vector<GreenFunction>& target_greens) {
  if (target_greens.size() != pair.accumulator.terms.size()) throw DimensionMismatch("one target Green function per term expected");
  NeronPair out{push_forward(f, pair.cycle), {}};
  for (std::size_t j = 0; j < target_greens.size(); ++j) {
    const auto& t = pair.accumulator.terms[j];
    if (!same_function(pull_back(f, target_greens[j]).phi, t.green.phi)) throw IncompatibleMap("term is not a pull-back of the given Green function");
    out.accumulator.terms.push_back({target_greens[j], push_forward(f, t.support)});
  }
  return out;
}

}  // namespace tropkern
