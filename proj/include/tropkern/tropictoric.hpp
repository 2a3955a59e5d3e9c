#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tropkern/exactlin.hpp"
#include "tropkern/polyhedron.hpp"

namespace tropkern {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Finite rational fan in N = Z^n. Cones are kept closed under faces and sorted by
// dimension then canonical key, so index 0 is always the zero cone.
class Fan {
 public:
  Fan() = default;
  // Closes the given cones under faces and validates the fan axioms.
  static Fan from_cones(std::size_t n, const std::vector<std::vector<IntVec>>& cones);
  static Fan trivial(std::size_t n);

  std::size_t ambient_dim() const { return n_; }
  std::size_t size() const { return cones_.size(); }
  const Polyhedron& cone(std::size_t i) const { return cones_[i]; }
  // Primitive generators of the rays of cone i.
  const std::vector<IntVec>& generators(std::size_t i) const { return gens_[i]; }
  int cone_dim(std::size_t i) const { return cones_[i].dim(); }

  // Cone i is a face of cone j.
  bool is_face(std::size_t i, std::size_t j) const { return face_[j][i]; }
  std::vector<std::size_t> star(std::size_t i) const;
  std::vector<std::size_t> rays() const;
  std::vector<std::size_t> maximal_cones() const;
  std::optional<std::size_t> find(const Polyhedron& cone) const;
  // Smallest cone having both i and j as faces.
  std::optional<std::size_t> minimal_common(std::size_t i, std::size_t j) const;
  // The cone whose relative interior contains x.
  std::optional<std::size_t> cone_containing_relint(const RatVec& x) const;

  // N(sigma) = N / span(sigma), with coordinates from the canonical quotient basis.
  const QuotientLattice& quotient(std::size_t i) const { return quot_[i]; }
  std::size_t stratum_dim(std::size_t i) const { return quot_[i].rank(); }
  RatMat projection(std::size_t i) const;
  // N(i) -> N(j) for i a face of j.
  RatMat transport(std::size_t i, std::size_t j) const;
  // Image of cone j in N(i).
  Polyhedron star_cone(std::size_t i, std::size_t j) const;

  bool is_complete() const;
  bool is_simplicial() const;
  bool operator==(const Fan& o) const { return n_ == o.n_ && keys_ == o.keys_; }

 private:
  std::size_t n_ = 0;
  std::vector<Polyhedron> cones_;
  std::vector<std::string> keys_;
  std::vector<std::vector<IntVec>> gens_;
  std::vector<std::vector<bool>> face_;
  std::vector<QuotientLattice> quot_;
};

// Complete fan of P^n: rays e_1..e_n and -(e_1+...+e_n).
Fan projective_space_fan(std::size_t n);
Fan product_fan(const Fan& a, const Fan& b);

// The fan Sigma(sigma) in N(sigma), indexed both ways against the parent fan.
struct StarFan {
  std::size_t base = 0;
  Fan fan;
  std::vector<std::size_t> parent_of;  // star fan index -> parent index
  std::vector<std::size_t> local_of;   // parent index -> star fan index or npos
};
StarFan star_fan(const Fan& fan, std::size_t sigma);

using FanPtr = std::shared_ptr<const Fan>;

// Closure in N_Sigma of a polyhedron living in the stratum N(sigma).
class TropicalPolyhedron {
 public:
  TropicalPolyhedron() = default;
  TropicalPolyhedron(FanPtr fan, std::size_t sedentarity, Polyhedron finite_part);
  static TropicalPolyhedron empty(FanPtr fan);

  bool is_empty() const { return finite_.is_empty(); }
  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  std::size_t sedentarity() const { return sed_; }
  const Polyhedron& finite_part() const { return finite_; }
  int dim() const { return finite_.dim(); }
  const Polyhedron& recession() const;
  // Closure stratum in N(tau), cached.
  const Polyhedron& stratum(std::size_t tau) const;

  std::string key() const;
  bool operator==(const TropicalPolyhedron& o) const { return sed_ == o.sed_ && finite_ == o.finite_; }
  bool operator!=(const TropicalPolyhedron& o) const { return !(*this == o); }

 private:
  struct Cache;
  FanPtr fan_;
  std::size_t sed_ = 0;
  Polyhedron finite_;
  std::shared_ptr<Cache> cache_;
};

// Sedentarity first, then decreasing dimension, then key.
bool trop_less(const TropicalPolyhedron& a, const TropicalPolyhedron& b);

Polyhedron closure_stratum(const TropicalPolyhedron& d, std::size_t tau);
TropicalPolyhedron stratum_closure(const TropicalPolyhedron& d, std::size_t tau);
bool is_constant_towards_boundary(const TropicalPolyhedron& d);
bool is_compact(const TropicalPolyhedron& d);
TropicalPolyhedron intersect_ctb(const TropicalPolyhedron& a, const TropicalPolyhedron& b);
std::vector<TropicalPolyhedron> trop_faces(const TropicalPolyhedron& d);

// x -> L x + t, extended to the toric strata. The translation lives in N_R.
struct EquivariantMap {
  FanPtr source;
  FanPtr target;
  IntMat linear;
  RatVec translation;
};
// Target cone receiving the stratum of source cone i; throws IncompatibleMap.
std::size_t target_cone(const EquivariantMap& f, std::size_t i);
void check_compatible(const EquivariantMap& f);
// Stratum map N'(i) -> N(target_cone(i)) as (matrix, offset).
std::pair<RatMat, RatVec> stratum_map(const EquivariantMap& f, std::size_t i);
TropicalPolyhedron apply_equivariant(const EquivariantMap& f, const TropicalPolyhedron& d);

}  // namespace tropkern
