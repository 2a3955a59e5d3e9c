#pragma once

#include <string>
#include <vector>

#include "tropkern/rational.hpp"

namespace tropkern {

// Rows are (normal..., offset): normal . x >= offset, resp. normal . x = offset.
struct HalfspaceRep {
  std::size_t dim = 0;
  std::vector<RatVec> ineqs;
  std::vector<RatVec> eqs;
};

struct GeneratorRep {
  std::size_t dim = 0;
  std::vector<RatVec> vertices;
  std::vector<RatVec> rays;
  std::vector<RatVec> lineality;
};

GeneratorRep dd_convert(const HalfspaceRep& h);
HalfspaceRep dd_convert_back(const GeneratorRep& g);

// Closed rational polyhedron in Q^n. Both representations are kept in canonical
// minimal form, so structural equality is set equality.
class Polyhedron {
 public:
  Polyhedron() = default;
  static Polyhedron from_h(const HalfspaceRep& h);
  static Polyhedron from_v(const GeneratorRep& g);
  static Polyhedron empty(std::size_t n);
  static Polyhedron whole(std::size_t n);
  static Polyhedron point(const RatVec& p);
  static Polyhedron cone(std::size_t n, const std::vector<RatVec>& rays);

  std::size_t ambient_dim() const { return n_; }
  int dim() const { return dim_; }
  bool is_empty() const { return dim_ < 0; }
  bool is_bounded() const { return v_.rays.empty() && v_.lineality.empty(); }
  bool is_pointed() const { return v_.lineality.empty(); }
  bool is_cone() const;  // every vertex is the origin

  const HalfspaceRep& hrep() const { return h_; }
  const GeneratorRep& vrep() const { return v_; }
  const std::vector<RatVec>& vertices() const { return v_.vertices; }
  const std::vector<RatVec>& rays() const { return v_.rays; }
  const std::vector<RatVec>& lineality() const { return v_.lineality; }

  bool contains(const RatVec& x) const;
  bool contains(const Polyhedron& other) const;
  bool relint_contains(const RatVec& x) const;
  RatVec relint_point() const;
  // Spanning set of the direction space L_P (differences of vertices, rays, lineality).
  std::vector<RatVec> direction_space() const;

  Polyhedron intersect(const Polyhedron& other) const;
  Polyhedron add_equations(const std::vector<RatVec>& eqs) const;
  Polyhedron add_inequalities(const std::vector<RatVec>& ineqs) const;
  // x -> m x + t
  Polyhedron linear_image(const RatMat& m, const RatVec& t) const;
  Polyhedron linear_image(const RatMat& m) const;

  // Canonical text key; equal keys iff equal point sets.
  std::string key() const;
  bool operator==(const Polyhedron& o) const { return n_ == o.n_ && v_.vertices == o.v_.vertices && v_.rays == o.v_.rays && v_.lineality == o.v_.lineality && dim_ == o.dim_; }
  bool operator!=(const Polyhedron& o) const { return !(*this == o); }

 private:
  std::size_t n_ = 0;
  int dim_ = -1;
  HalfspaceRep h_;
  GeneratorRep v_;
  void finish_from_generators();
};

Polyhedron recession_cone(const Polyhedron& p);

struct Face {
  Polyhedron polyhedron;
  int dim;
};
// All non-empty faces including p itself, sorted by decreasing dimension then key.
std::vector<Face> faces(const Polyhedron& p);
// Faces of codimension one.
std::vector<Polyhedron> facets(const Polyhedron& p);

// relint(a) meets b.
bool relint_meets(const Polyhedron& a, const Polyhedron& b);
bool is_simplicial(const Polyhedron& p);
Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);

// Deterministic ordering helpers.
bool lex_less(const RatVec& a, const RatVec& b);

}  // namespace tropkern
