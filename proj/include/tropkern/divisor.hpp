#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tropkern/cycle.hpp"
#include "tropkern/tropictoric.hpp"

namespace tropkern {

struct AffinePiece {
  Polyhedron cell;
  IntVec slope;
  Rat constant;
};

// Continuous function on N_R that is affine with integral slope on each full-dimensional
// cell; the cells cover N_R.
class PiecewiseAffineFunction {
 public:
  PiecewiseAffineFunction() = default;
  PiecewiseAffineFunction(std::size_t n, std::vector<AffinePiece> pieces);
  static PiecewiseAffineFunction unchecked(std::size_t n, std::vector<AffinePiece> pieces);
  static PiecewiseAffineFunction affine(const IntVec& slope, const Rat& constant);
  // max_i (m_i . x + c_i) and min_i (m_i . x + c_i).
  static PiecewiseAffineFunction max_of(std::size_t n, const std::vector<std::pair<IntVec, Rat>>& terms);
  static PiecewiseAffineFunction min_of(std::size_t n, const std::vector<std::pair<IntVec, Rat>>& terms);

  std::size_t ambient_dim() const { return n_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const AffinePiece& piece_at(const RatVec& x) const;
  Rat operator()(const RatVec& x) const;
  // Facet hyperplanes of all cells, as rows (a..., b) for a.x = b.
  std::vector<RatVec> hyperplanes() const;

 private:
  std::size_t n_ = 0;
  std::vector<AffinePiece> pieces_;
};

PiecewiseAffineFunction operator+(const PiecewiseAffineFunction& a, const PiecewiseAffineFunction& b);
PiecewiseAffineFunction operator-(const PiecewiseAffineFunction& a);
PiecewiseAffineFunction operator-(const PiecewiseAffineFunction& a, const PiecewiseAffineFunction& b);

// Piecewise linear function on |fan|, given by a slope per maximal cone.
class PLOnFan {
 public:
  PLOnFan() = default;
  // Slopes are indexed like fan->maximal_cones().
  PLOnFan(FanPtr fan, std::vector<IntVec> slopes);
  // Values on the primitive ray generators, indexed like fan->rays(); needs a simplicial fan.
  static PLOnFan from_ray_values(FanPtr fan, const std::vector<Int>& values);
  static PLOnFan linear(FanPtr fan, const IntVec& m);

  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  const std::vector<IntVec>& slopes() const { return slopes_; }
  // Slope of a maximal cone containing cone i.
  const IntVec& slope_on(std::size_t cone) const;
  Rat operator()(const RatVec& v) const;

 private:
  FanPtr fan_;
  std::vector<IntVec> slopes_;
};

PLOnFan operator+(const PLOnFan& a, const PLOnFan& b);
PLOnFan operator-(const PLOnFan& a);
bool operator==(const PLOnFan& a, const PLOnFan& b);

// D(psi): on the chart of sigma it is given by -k_sigma.
struct ToricCartierDivisor {
  PLOnFan psi;
};

ToricCartierDivisor operator+(const ToricCartierDivisor& a, const ToricCartierDivisor& b);
ToricCartierDivisor operator-(const ToricCartierDivisor& a);

// Multiplicity -psi(omega_rho) of the boundary divisor of each ray, indexed like fan.rays().
std::vector<Int> ray_multiplicities(const ToricCartierDivisor& d);

PLOnFan recession_function(const PiecewiseAffineFunction& phi, FanPtr fan);
// Rays rho with psi(omega_rho) != 0.
std::vector<std::size_t> unbounded_locus(const ToricCartierDivisor& d);
bool properly_intersects(const std::vector<ToricCartierDivisor>& divs, const TropicalCycle& c);

TropicalCycle corner_locus(const PiecewiseAffineFunction& phi, const TropicalCycle& c);
// Corner locus inside the stratum N(sigma): phi lives on N(sigma), every cell of c has sedentarity sigma.
TropicalCycle corner_locus_in_stratum(const PiecewiseAffineFunction& phi, const TropicalCycle& c, std::size_t sigma);
TropicalCycle toric_intersect(const ToricCartierDivisor& d, const TropicalCycle& c);
bool check_commutativity(const ToricCartierDivisor& d1, const ToricCartierDivisor& d2, const TropicalCycle& c);

// F^*D = D(psi o L).
ToricCartierDivisor pull_back(const EquivariantMap& f, const ToricCartierDivisor& d);
// The function x -> psi(L x) as a piecewise linear function for the source fan.
PLOnFan pull_back(const EquivariantMap& f, const PLOnFan& psi);

}  // namespace tropkern
