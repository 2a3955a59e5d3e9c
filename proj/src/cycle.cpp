#include "tropkern/cycle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropkern/errors.hpp"
#include "tropkern/exactlin.hpp"

namespace tropkern {

namespace {

Hyperplane canonical_plane(const RatVec& row) {
  IntVec p = primitive_integer(row);
  std::size_t n = row.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] == 0) continue;
    if (p[i] < 0) p = scale(Int(-1), p);
    break;
  }
  return to_rat(p);
}

bool is_trivial_plane(const Hyperplane& h) {
  for (std::size_t i = 0; i + 1 < h.size(); ++i)
    if (h[i] != 0) return false;
  return true;
}

void collect_planes(const Polyhedron& p, std::set<Hyperplane>& out) {
  for (const auto* rows : {&p.hrep().ineqs, &p.hrep().eqs})
    for (const auto& r : *rows) {
      Hyperplane h = canonical_plane(r);
      if (!is_trivial_plane(h)) out.insert(h);
    }
}

// Which open sides of a.x = b the polyhedron reaches.
std::pair<bool, bool> sides(const Polyhedron& p, const Hyperplane& h) {
  std::size_t n = h.size() - 1;
  RatVec a(h.begin(), h.begin() + static_cast<long>(n));
  bool pos = false, neg = false;
  for (const auto& v : p.vertices()) {
    Rat s = dot(a, v) - h[n];
    pos |= s > 0;
    neg |= s < 0;
  }
  for (const auto& r : p.rays()) {
    Rat s = dot(a, r);
    pos |= s > 0;
    neg |= s < 0;
  }
  for (const auto& l : p.lineality())
    if (dot(a, l) != 0) pos = neg = true;
  return {pos, neg};
}

std::vector<Polyhedron> cut(const Polyhedron& p, const std::vector<Hyperplane>& planes) {
  std::vector<Polyhedron> pieces{p};
  for (const auto& h : planes) {
    std::vector<Polyhedron> next;
    for (const auto& q : pieces) {
      auto [pos, neg] = sides(q, h);
      if (!(pos && neg)) {
        next.push_back(q);
        continue;
      }
      RatVec up = h, down = scale(Rat(-1), h);
      next.push_back(q.add_inequalities({up}));
      next.push_back(q.add_inequalities({down}));
    }
    pieces = std::move(next);
  }
  return pieces;
}

std::string cell_key(const TropicalPolyhedron& c) { return c.key(); }

}  // namespace

TropicalCycle::TropicalCycle(FanPtr fan, int dim, std::vector<WeightedCell> cells)
    : fan_(std::move(fan)), dim_(dim), cells_(std::move(cells)) {
  if (!fan_) throw InvariantViolation("cycle without a fan");
  for (const auto& c : cells_) {
    if (c.cell.is_empty()) throw MixedDimension("empty cell in a cycle");
    if (c.cell.dim() != dim_) throw MixedDimension("cell dimension differs from the cycle dimension");
    if (!(c.cell.fan() == *fan_)) throw DimensionMismatch("cell over a different fan");
  }
}

std::optional<std::size_t> TropicalCycle::sedentarity() const {
  if (cells_.empty()) return std::nullopt;
  std::size_t s = cells_[0].cell.sedentarity();
  for (const auto& c : cells_)
    if (c.cell.sedentarity() != s) return std::nullopt;
  return s;
}

TropicalCycle TropicalCycle::part_of_sedentarity(std::size_t sigma) const {
  std::vector<WeightedCell> out;
  for (const auto& c : cells_)
    if (c.cell.sedentarity() == sigma) out.push_back(c);
  return TropicalCycle(fan_, dim_, out);
}

TropicalCycle subdivide_cycle(const TropicalCycle& c, const std::vector<Hyperplane>& extra, std::size_t extra_sed) {
  std::map<std::size_t, std::vector<const WeightedCell*>> groups;
  for (const auto& wc : c.cells())
    if (wc.weight != 0) groups[wc.cell.sedentarity()].push_back(&wc);
  std::map<std::string, WeightedCell> merged;
  for (auto& [sigma, members] : groups) {
    std::set<Hyperplane> planes;
    for (const auto* wc : members) collect_planes(wc->cell.finite_part(), planes);
    if (sigma == extra_sed)
      for (const auto& h : extra) {
        Hyperplane ch = canonical_plane(h);
        if (!is_trivial_plane(ch)) planes.insert(ch);
      }
    std::vector<Hyperplane> list(planes.begin(), planes.end());
    for (const auto* wc : members)
      for (const auto& piece : cut(wc->cell.finite_part(), list)) {
        if (piece.dim() != c.dim()) continue;
        TropicalPolyhedron tp(c.fan_ptr(), sigma, piece);
        auto it = merged.find(cell_key(tp));
        if (it == merged.end()) merged.emplace(cell_key(tp), WeightedCell{tp, wc->weight});
        else it->second.weight += wc->weight;
      }
  }
  std::vector<WeightedCell> out;
  for (auto& [k, wc] : merged)
    if (wc.weight != 0) out.push_back(wc);
  std::sort(out.begin(), out.end(), [](const WeightedCell& a, const WeightedCell& b) { return trop_less(a.cell, b.cell); });
  return TropicalCycle(c.fan_ptr(), c.dim(), out);
}

TropicalCycle normalize(const TropicalCycle& c) { return subdivide_cycle(c, {}); }

TropicalCycle operator+(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.dim() != b.dim()) throw MixedDimension("adding cycles of different dimensions");
  if (!(a.fan() == b.fan())) throw DimensionMismatch("adding cycles over different fans");
  std::vector<WeightedCell> cells = a.cells();
  cells.insert(cells.end(), b.cells().begin(), b.cells().end());
  return TropicalCycle(a.fan_ptr(), a.dim(), cells);
}

TropicalCycle scale(const Int& k, const TropicalCycle& c) {
  std::vector<WeightedCell> cells = c.cells();
  for (auto& wc : cells) wc.weight *= k;
  return TropicalCycle(c.fan_ptr(), c.dim(), cells);
}

TropicalCycle operator-(const TropicalCycle& a) { return scale(Int(-1), a); }
TropicalCycle operator-(const TropicalCycle& a, const TropicalCycle& b) { return a + (-b); }

bool cycles_equal(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.dim() != b.dim()) return a.empty() && b.empty();
  return normalize(a - b).empty();
}

IntVec primitive_normal(const Polyhedron& cell, const Polyhedron& face) {
  std::size_t n = cell.ambient_dim();
  Lattice big = Lattice::saturated_span(n, cell.direction_space());
  Lattice small = Lattice::saturated_span(n, face.direction_space());
  if (big.rank() != small.rank() + 1) throw DimensionMismatch("normal vector needs a codimension-one face");
  QuotientLattice q = quotient_by_span(big, small.basis());
  IntVec sect(big.rank());
  for (std::size_t i = 0; i < big.rank(); ++i) sect[i] = q.section[i][0];
  IntVec normal(n);
  for (std::size_t i = 0; i < big.rank(); ++i) normal = add(normal, scale(sect[i], big.basis()[i]));
  RatVec inward = sub(cell.relint_point(), face.relint_point());
  auto coords = big.coordinates(inward);
  if (!coords) throw InvariantViolation("interior direction outside the cell lattice");
  if (q.project(*coords)[0] < 0) normal = scale(Int(-1), normal);
  return normal;
}

BalanceReport check_balanced(const TropicalCycle& c) {
  TropicalCycle nc = normalize(c);
  BalanceReport report;
  if (nc.dim() == 0) return report;
  std::map<std::string, std::pair<TropicalPolyhedron, RatVec>> sums;
  std::vector<std::string> order;
  for (const auto& wc : nc.cells()) {
    const Polyhedron& p = wc.cell.finite_part();
    for (const auto& f : facets(p)) {
      TropicalPolyhedron face(nc.fan_ptr(), wc.cell.sedentarity(), f);
      std::string k = face.key();
      RatVec contrib = to_rat(scale(wc.weight, primitive_normal(p, f)));
      auto it = sums.find(k);
      if (it == sums.end()) {
        sums.emplace(k, std::make_pair(face, contrib));
        order.push_back(k);
      } else {
        it->second.second = add(it->second.second, contrib);
      }
    }
  }
  std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    return trop_less(sums.at(a).first, sums.at(b).first);
  });
  for (const auto& k : order) {
    const auto& [face, total] = sums.at(k);
    Lattice span = Lattice::saturated_span(total.size(), face.finite_part().direction_space());
    if (!span.coordinates(total)) {
      report.balanced = false;
      report.witness = face;
      return report;
    }
  }
  return report;
}

TropicalCycle push_forward(const EquivariantMap& f, const TropicalCycle& c) {
  check_compatible(f);
  if (!(c.fan() == *f.source)) throw IncompatibleMap("cycle is not over the source fan");
  std::vector<WeightedCell> out;
  for (const auto& wc : c.cells()) {
    std::size_t k = target_cone(f, wc.cell.sedentarity());
    auto [m, off] = stratum_map(f, wc.cell.sedentarity());
    const Polyhedron& p = wc.cell.finite_part();
    Polyhedron img = p.linear_image(m, off);
    if (img.dim() != c.dim()) continue;
    std::size_t tn = f.target->stratum_dim(k);
    Lattice src = Lattice::saturated_span(p.ambient_dim(), p.direction_space());
    IntMat pushed;
    for (const auto& b : src.basis()) {
      RatVec v = tn == 0 ? RatVec{} : mat_vec(m, to_rat(b));
      pushed.push_back(to_int(v));
    }
    Lattice image = Lattice::from_generators(tn, pushed);
    Lattice sat = Lattice::saturated_span(tn, img.direction_space());
    out.push_back({TropicalPolyhedron(f.target, k, img), wc.weight * lattice_index(image, sat)});
  }
  return normalize(TropicalCycle(f.target, c.dim(), out));
}

Int degree(const TropicalCycle& c) {
  if (c.dim() != 0) throw NotZeroDimensional("degree of a positive-dimensional cycle");
  Int total = 0;
  for (const auto& wc : c.cells()) total += wc.weight;
  return total;
}

}  // namespace tropkern
