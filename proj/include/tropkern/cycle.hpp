#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tropkern/tropictoric.hpp"

namespace tropkern {

// Weight is relative to the canonical lattice weight of the cell's lattice.
struct WeightedCell {
  TropicalPolyhedron cell;
  Int weight;
};

// Finite weighted family of d-dimensional polyhedra in N_Sigma. Cells may have
// different sedentarities; cycles equal up to subdivision compare equal via cycles_equal.
class TropicalCycle {
 public:
  TropicalCycle() = default;
  TropicalCycle(FanPtr fan, int dim, std::vector<WeightedCell> cells);
  static TropicalCycle zero(FanPtr fan, int dim) { return TropicalCycle(std::move(fan), dim, {}); }

  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  int dim() const { return dim_; }
  const std::vector<WeightedCell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  // Common sedentarity of all cells, if any.
  std::optional<std::size_t> sedentarity() const;
  TropicalCycle part_of_sedentarity(std::size_t sigma) const;

 private:
  FanPtr fan_;
  int dim_ = 0;
  std::vector<WeightedCell> cells_;
};

// Rows (a..., b) meaning a.x = b in the coordinates of N(sigma).
using Hyperplane = RatVec;

// Refines every sedentarity group by the arrangement of all facet and affine hull
// hyperplanes of its cells (plus the extra ones for the group of sedentarity extra_sed),
// merges equal pieces and drops zero weights. Cells of the result meet face to face.
TropicalCycle subdivide_cycle(const TropicalCycle& c, const std::vector<Hyperplane>& extra, std::size_t extra_sed = 0);
TropicalCycle normalize(const TropicalCycle& c);

TropicalCycle operator+(const TropicalCycle& a, const TropicalCycle& b);
TropicalCycle operator-(const TropicalCycle& a);
TropicalCycle operator-(const TropicalCycle& a, const TropicalCycle& b);
TropicalCycle scale(const Int& k, const TropicalCycle& c);
bool cycles_equal(const TropicalCycle& a, const TropicalCycle& b);

// Lattice vector generating N_cell / N_face and pointing into cell; both live in the same stratum.
IntVec primitive_normal(const Polyhedron& cell, const Polyhedron& face);

struct BalanceReport {
  bool balanced = true;
  std::optional<TropicalPolyhedron> witness;  // first unbalanced codimension-one face
};
BalanceReport check_balanced(const TropicalCycle& c);

TropicalCycle push_forward(const EquivariantMap& f, const TropicalCycle& c);
Int degree(const TropicalCycle& c);

}  // namespace tropkern
