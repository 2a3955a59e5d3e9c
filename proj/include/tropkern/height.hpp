#pragma once

#include <cstddef>
#include <vector>

#include "tropkern/cycle.hpp"
#include "tropkern/divisor.hpp"

namespace tropkern {

// Piecewise affine Green function g together with its divisor D(-rec(g)).
struct GreenFunction {
  PiecewiseAffineFunction phi;
  ToricCartierDivisor divisor;
};

GreenFunction green_from_pa(const PiecewiseAffineFunction& phi, FanPtr fan);
// g o F for an equivariant map F.
GreenFunction pull_back(const EquivariantMap& f, const GreenFunction& g);
// Continuous extension of g - m_sigma to N(sigma); throws GreenUndefinedAtPoint when
// N(sigma) lies in the unbounded locus.
PiecewiseAffineFunction restrict_to_stratum(const GreenFunction& g, std::size_t sigma);
// Value of g at a point of N_Sigma.
Rat green_value(const GreenFunction& g, const TropicalPolyhedron& point);
// Sum of w_P g(P) over a zero-cycle.
Rat integrate(const GreenFunction& g, const TropicalCycle& zero_cycle);

// D.C - g.C, the cycle carrying c_1(D,g) ^ delta_C. Cells of any sedentarity are handled
// through the restriction of g to their stratum.
TropicalCycle chern_cycle(const GreenFunction& g, const TropicalCycle& c);
// chern_cycle(g_1, chern_cycle(g_2, ... chern_cycle(g_d, c))).
TropicalCycle ma_measure(const std::vector<GreenFunction>& greens, const TropicalCycle& c);

struct AccumulatorTerm {
  GreenFunction green;
  TropicalCycle support;
};

struct HeightAccumulator {
  std::vector<AccumulatorTerm> terms;
};

struct NeronPair {
  TropicalCycle cycle;
  HeightAccumulator accumulator;
};

// (D,g) * (C,T) = (D.C, g ^ delta_C + c_1(D,g) ^ T).
NeronPair star_product(const GreenFunction& g, const NeronPair& pair);
// The current of the accumulator evaluated against 1, one value per term.
std::vector<Rat> evaluate_terms(const HeightAccumulator& acc);
Rat evaluate(const HeightAccumulator& acc);

// Local height by the induction formula.
Rat local_height(const std::vector<GreenFunction>& greens, const TropicalCycle& c);
// Local height by evaluating (D_0,g_0) * ... * (D_d,g_d) * (C,0) at 1.
Rat local_height_expanded(const std::vector<GreenFunction>& greens, const TropicalCycle& c);
bool check_reciprocity(const std::vector<GreenFunction>& greens, const TropicalCycle& c);

// Push the pair forward; target_greens[j] must pull back to the Green function of term j.
NeronPair direct_image_pair(const EquivariantMap& f, const NeronPair& pair, const std::vector<GreenFunction>& target_greens);
bool same_function(const PiecewiseAffineFunction& a, const PiecewiseAffineFunction& b);

}  // namespace tropkern
