#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropkern/polyhedron.hpp"
#include "tropkern/tropictoric.hpp"

namespace tropkern {

// Finite polyhedral complex in N_Sigma. Cells are face-closed and sorted with trop_less.
class PolyhedralComplex {
 public:
  PolyhedralComplex() = default;
  // Cells of sedentarity zero, closed under faces in N_R only.
  static PolyhedralComplex from_polyhedra(FanPtr fan, const std::vector<Polyhedron>& cells);
  // Cells closed under faces in N_Sigma; every cell must be constant towards the boundary.
  static PolyhedralComplex from_tropical(FanPtr fan, const std::vector<TropicalPolyhedron>& cells);

  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  const std::vector<TropicalPolyhedron>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  const TropicalPolyhedron& cell(std::size_t i) const { return cells_[i]; }
  // Indices of all faces of cell i, including i.
  const std::vector<std::size_t>& faces_of(std::size_t i) const { return faces_[i]; }
  std::optional<std::size_t> find(const TropicalPolyhedron& c) const;
  int dim() const;
  std::vector<std::size_t> maximal_cells() const;
  // Finite parts of the sedentarity-zero cells.
  std::vector<Polyhedron> finite_cells() const;
  bool is_simplicial() const;

 private:
  FanPtr fan_;
  std::vector<TropicalPolyhedron> cells_;
  std::vector<std::vector<std::size_t>> faces_;
  std::map<std::string, std::size_t> index_;
  void build(std::map<std::string, TropicalPolyhedron> all, const std::map<std::string, std::vector<std::string>>& face_keys);
};

// Cone((p_i, 1), (v_j, 0)) over a pointed polyhedron, with the barycentric interior vector.
struct LiftedCone {
  Polyhedron base;
  Polyhedron cone;
  RatVec interior;  // (1/(r+1)) sum (p_i, 1) + sum (v_j, 0)
};
LiftedCone lift_to_cone(const Polyhedron& t);

// A tropical polyhedron of sedentarity sigma is simplicial when its finite part is
// simplicial and its recession cone lies in the star fan of sigma.
bool is_simplicial_cell(const TropicalPolyhedron& d);

// pi must be a finite complete complex in N_R (given by its cells).
PolyhedralComplex complex_from_closures(const std::vector<Polyhedron>& pi, FanPtr fan);
// Complete means every facet of every maximal cell is shared and maximal cells are full-dimensional.
bool is_complete_complex(const std::vector<Polyhedron>& cells, std::size_t n);

PolyhedralComplex simplicial_refine(const PolyhedralComplex& pi, FanPtr fan);

// phi = smallest concave function on t with phi(points[i]) >= point_bounds[i] and
// recession slope phi'(rays[j]) >= ray_bounds[j].
struct LiftConstraints {
  std::vector<RatVec> points;
  std::vector<Rat> point_bounds;
  std::vector<RatVec> rays;
  std::vector<Rat> ray_bounds;
};
// Hypograph of phi in N_R x R.
Polyhedron lifted_hypograph(const Polyhedron& t, const LiftConstraints& c);
PolyhedralComplex regular_subdivision(const Polyhedron& t, const LiftConstraints& c);

PolyhedralComplex subdivide_for_family(const std::vector<TropicalPolyhedron>& family, FanPtr fan);
// Thickening of a polyhedron of non-zero sedentarity into N_R along its recession cone.
TropicalPolyhedron thickening(const TropicalPolyhedron& d, const Rat& m);
// Every cell meets each family member in a face of the cell or not at all.
bool is_union_of_cells(const TropicalPolyhedron& member, const PolyhedralComplex& c);

PolyhedralComplex common_refinement(const PolyhedralComplex& a, const PolyhedralComplex& b);

}  // namespace tropkern
