#pragma once

#include <optional>
#include <vector>

#include "tropkern/rational.hpp"

namespace tropkern {

struct SmithForm {
  IntMat left;   // unimodular, rows x rows
  IntMat diag;   // same shape as input
  IntMat right;  // unimodular, cols x cols
};

// left * m * right == diag, diag entries d1 | d2 | ... non-negative.
SmithForm smith_normal_form(const IntMat& m);

// Row Hermite normal form of the lattice spanned by the rows; zero rows dropped.
IntMat hermite_normal_form(const IntMat& rows);

// A free Z-submodule of Z^n, stored by its HNF basis (rows).
class Lattice {
 public:
  Lattice() = default;
  static Lattice standard(std::size_t n);
  static Lattice from_generators(std::size_t ambient_dim, const IntMat& gens);
  // Saturated lattice (span of vectors) cap Z^n.
  static Lattice saturated_span(std::size_t ambient_dim, const std::vector<RatVec>& spanning);

  std::size_t ambient_dim() const { return n_; }
  std::size_t rank() const { return basis_.size(); }
  const IntMat& basis() const { return basis_; }

  // Coordinates of v in the basis, if v lies in the rational span.
  std::optional<RatVec> coordinates(const RatVec& v) const;
  bool contains(const IntVec& v) const;
  bool contains(const Lattice& other) const;

  bool operator==(const Lattice& o) const { return n_ == o.n_ && basis_ == o.basis_; }

 private:
  std::size_t n_ = 0;
  IntMat basis_;
};

// [sup : sub]; throws RankMismatch or NotSublattice.
Int lattice_index(const Lattice& sub, const Lattice& sup);

// Content-one lattice point on the ray through v; throws ZeroVector.
IntVec primitive_vector(const RatVec& v, const Lattice& lattice);

// ambient / saturate(span(gens)). Maps act on coordinates w.r.t. the ambient basis.
struct QuotientLattice {
  Lattice ambient;
  Lattice kernel;     // in Z^n
  IntMat projection;  // rank(quotient) x rank(ambient)
  IntMat section;     // rank(ambient) x rank(quotient), projection * section = id

  std::size_t rank() const { return projection.size(); }
  IntVec project(const IntVec& v) const { return mat_vec(projection, v); }
  RatVec project(const RatVec& v) const;
  RatVec lift(const RatVec& v) const;
};

QuotientLattice quotient_by_span(const Lattice& ambient, const IntMat& cone_generators);

// Rational linear algebra.
struct RowEchelon {
  RatMat rows;                   // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;
};
RowEchelon rref(const RatMat& m);
std::size_t rank(const RatMat& m);
// Basis of {x : m x = 0}; cols is needed when m has no rows.
std::vector<RatVec> nullspace(const RatMat& m, std::size_t cols);
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);
Rat determinant(RatMat m);
Int determinant(const IntMat& m);
std::optional<RatMat> inverse(const RatMat& m);

// Integer kernel {x in Z^n : m x = 0} as a lattice.
Lattice integer_kernel(const IntMat& m, std::size_t cols);

}  // namespace tropkern
