#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tropkern/divisor.hpp"
#include "tropkern/errors.hpp"

using namespace tropkern;
using namespace tk_test;

namespace {

Polyhedron ray_from(const RatVec& p, const RatVec& d) {
  GeneratorRep g;
  g.dim = p.size();
  g.vertices = {p};
  g.rays = {d};
  return Polyhedron::from_v(g);
}

Polyhedron segment(const RatVec& a, const RatVec& b) {
  GeneratorRep g;
  g.dim = a.size();
  g.vertices = {a, b};
  return Polyhedron::from_v(g);
}

WeightedCell wc(const FanPtr& f, const Polyhedron& p, long w, std::size_t sed = 0) { return {TropicalPolyhedron(f, sed, p), Int(w)}; }

std::size_t cone_of(const FanPtr& f, std::vector<RatVec> rays) { return *f->find(Polyhedron::cone(f->ambient_dim(), rays)); }

TropicalCycle whole_space(const FanPtr& f, long w = 1) {
  return TropicalCycle(f, static_cast<int>(f->ambient_dim()), {wc(f, Polyhedron::whole(f->ambient_dim()), w)});
}

// Tropical line of P2 with vertex p.
TropicalCycle p2_line(const FanPtr& f, const RatVec& p, long w = 1) {
  return TropicalCycle(f, 1, {wc(f, ray_from(p, rv({1, 0})), w), wc(f, ray_from(p, rv({0, 1})), w), wc(f, ray_from(p, rv({-1, -1})), w)});
}

// Curve of bidegree (1,1) on P1xP1: rays -e1,-e2 at p, edge along (1,1) of length t, rays e1,e2 at the end.
TropicalCycle p1p1_curve(const FanPtr& f, const RatVec& p, long t, long w = 1) {
  RatVec q = add(p, rv({t, t}));
  std::vector<WeightedCell> cells{wc(f, ray_from(p, rv({-1, 0})), w), wc(f, ray_from(p, rv({0, -1})), w), wc(f, ray_from(q, rv({1, 0})), w),
                                  wc(f, ray_from(q, rv({0, 1})), w)};
  if (t > 0) cells.push_back(wc(f, segment(p, q), w));
  return TropicalCycle(f, 1, cells);
}

PiecewiseAffineFunction pa_max(std::size_t n, std::vector<std::pair<IntVec, long>> terms) {
  std::vector<std::pair<IntVec, Rat>> t;
  for (auto& [m, c] : terms) t.emplace_back(m, Rat(c));
  return PiecewiseAffineFunction::max_of(n, t);
}

PiecewiseAffineFunction pa_min(std::size_t n, std::vector<std::pair<IntVec, long>> terms) {
  std::vector<std::pair<IntVec, Rat>> t;
  for (auto& [m, c] : terms) t.emplace_back(m, Rat(c));
  return PiecewiseAffineFunction::min_of(n, t);
}

// Sum of k random min(a0, a1+x, a2+y); its cells are constant towards the boundary of P2.
PiecewiseAffineFunction random_p2_function(std::mt19937_64& g, int k) {
  PiecewiseAffineFunction phi = PiecewiseAffineFunction::affine(iv({uniform(g, -1, 1), uniform(g, -1, 1)}), uniform(g, -2, 2));
  for (int i = 0; i < k; ++i) {
    auto term = pa_min(2, {{iv({0, 0}), uniform(g, -3, 3)}, {iv({1, 0}), uniform(g, -3, 3)}, {iv({0, 1}), uniform(g, -3, 3)}});
    phi = uniform(g, 0, 1) ? phi + term : phi - term;
  }
  return phi;
}

// Values of psi on the given primitive ray directions; unlisted rays get 0.
ToricCartierDivisor from_values(const FanPtr& f, std::vector<std::pair<IntVec, long>> vals) {
  std::vector<Int> v;
  for (auto r : f->rays()) {
    Int x = 0;
    for (auto& [d, val] : vals)
      if (d == f->generators(r)[0]) x = val;
    v.push_back(x);
  }
  return {PLOnFan::from_ray_values(f, v)};
}

const IntVec E1 = iv({1, 0}), E2 = iv({0, 1}), E3 = iv({-1, -1});

// psi value on each primitive ray, ordered like fan.rays(), read off from the given direction.
long value_on(const PLOnFan& psi, const RatVec& v) { return psi(v).get_num().get_si(); }

Int boundary_weight(const TropicalCycle& c, std::size_t sed) {
  Int w = 0;
  for (const auto& x : c.cells())
    if (x.cell.sedentarity() == sed) w += x.weight;
  return w;
}

}  // namespace

TEST(PiecewiseAffine, BuildAndEvaluate) {
  auto phi = pa_max(2, {{iv({0, 0}), 0}, {iv({1, 0}), 0}, {iv({0, 1}), 0}});
  EXPECT_EQ(phi.pieces().size(), 3u);
  EXPECT_EQ(phi(rv({3, -1})), 3);
  EXPECT_EQ(phi(rv({-2, -5})), 0);
  auto psi = pa_min(2, {{iv({0, 0}), 1}, {iv({1, 0}), 0}});
  EXPECT_EQ(psi(rv({5, 0})), 1);
  EXPECT_EQ(psi(rv({-5, 0})), -5);
  auto sum = phi + psi;
  EXPECT_EQ(sum(rv({3, -1})), 4);
  auto diff = phi - phi;
  for (const auto& p : diff.pieces()) EXPECT_TRUE(is_zero(p.slope));
  // Validating constructor rejects gaps and discontinuities.
  HalfspaceRep right{1, {rv({1, 0})}, {}};
  HalfspaceRep left{1, {rv({-1, 1})}, {}};
  EXPECT_THROW(PiecewiseAffineFunction(1, {{Polyhedron::from_h(right), iv({1}), 0}}), NotComplete);
  EXPECT_THROW(PiecewiseAffineFunction(1, {{Polyhedron::from_h(right), iv({1}), 0}, {Polyhedron::from_h(HalfspaceRep{1, {rv({-1, 0})}, {}}), iv({0}), 1}}),
               InvariantViolation);
  EXPECT_THROW(PiecewiseAffineFunction(1, {{Polyhedron::from_h(right), iv({1}), 0}, {Polyhedron::from_h(left), iv({0}), 0}}), NotComplete);
  EXPECT_NO_THROW(PiecewiseAffineFunction(1, {{Polyhedron::from_h(right), iv({1}), 0}, {Polyhedron::from_h(HalfspaceRep{1, {rv({-1, 0})}, {}}), iv({0}), 0}}));
}

TEST(PiecewiseAffine, RandomSumsEvaluateTermwise) {
  auto g = rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<IntVec, long>> a, b;
    for (int i = 0; i < 3; ++i) a.push_back({iv({uniform(g, -2, 2), uniform(g, -2, 2)}), uniform(g, -3, 3)});
    for (int i = 0; i < 3; ++i) b.push_back({iv({uniform(g, -2, 2), uniform(g, -2, 2)}), uniform(g, -3, 3)});
    auto fa = pa_max(2, a), fb = pa_min(2, b);
    auto s = fa - fb;
    EXPECT_NO_THROW(PiecewiseAffineFunction(2, s.pieces()));
    for (int k = 0; k < 10; ++k) {
      RatVec x = random_vec(g, 2, 6);
      Rat ma = -1000, mb = 1000;
      for (auto& [m, c] : a) ma = std::max(ma, Rat(dot(to_rat(m), x) + c));
      for (auto& [m, c] : b) mb = std::min(mb, Rat(dot(to_rat(m), x) + c));
      EXPECT_EQ(s(x), ma - mb);
    }
  }
}

TEST(PLFunction, FromRayValuesAndAgreement) {
  auto f = share(projective_space_fan(2));
  auto d = from_values(f, {{E3, -1}});
  EXPECT_EQ(value_on(d.psi, rv({1, 0})), 0);
  EXPECT_EQ(value_on(d.psi, rv({0, 1})), 0);
  EXPECT_EQ(value_on(d.psi, rv({-1, -1})), -1);
  EXPECT_EQ(value_on(d.psi, rv({-3, -1})), -3);
  auto mult = ray_multiplicities(d);
  EXPECT_EQ(std::count(mult.begin(), mult.end(), Int(1)), 1);
  EXPECT_EQ(std::count(mult.begin(), mult.end(), Int(0)), 2);
  auto maxc = f->maximal_cones();
  std::vector<IntVec> bad(maxc.size(), iv({0, 0}));
  bad[0] = iv({1, 0});
  EXPECT_THROW(PLOnFan(f, bad), InvariantViolation);
}

TEST(Recession, Examples) {
  auto p1 = share(projective_space_fan(1));
  auto r1 = recession_function(pa_max(1, {{iv({0}), 0}, {iv({1}), 0}}), p1);
  EXPECT_EQ(r1(rv({1})), 1);
  EXPECT_EQ(r1(rv({-1})), 0);
  auto r2 = recession_function(pa_max(1, {{iv({0}), 1}, {iv({1}), 0}}), p1);
  EXPECT_EQ(r1, r2);
  auto r3 = recession_function(PiecewiseAffineFunction::affine(iv({3}), 7), p1);
  EXPECT_EQ(r3, PLOnFan::linear(p1, iv({3})));
  auto p2 = share(projective_space_fan(2));
  EXPECT_THROW(recession_function(pa_max(2, {{iv({0, 0}), 0}, {iv({1, 0}), 0}, {iv({0, 1}), 0}}), p2), NotConstantTowardsBoundary);
}

TEST(Recession, AgreesWithLimitAlongRays) {
  auto g = rng(53);
  auto f = share(projective_space_fan(2));
  for (int trial = 0; trial < 10; ++trial) {
    auto phi = random_p2_function(g, static_cast<int>(uniform(g, 1, 3)));
    auto rec = recession_function(phi, f);
    for (int k = 0; k < 8; ++k) {
      RatVec v = random_vec(g, 2, 4);
      // phi(t v) is affine in t for large t.
      Rat lim = (phi(scale(Rat(2000), v)) - phi(scale(Rat(1000), v))) / 1000;
      EXPECT_EQ(rec(v), lim);
    }
  }
}

TEST(UnboundedLocus, Examples) {
  auto p1 = share(projective_space_fan(1));
  EXPECT_TRUE(unbounded_locus({PLOnFan::linear(p1, iv({0}))}).empty());
  auto o1 = from_values(p1, {{iv({1}), -1}});
  EXPECT_EQ(unbounded_locus(o1).size(), 1u);
  // Support function of the segment [1,2]: both rays.
  std::vector<IntVec> s;
  for (auto m : p1->maximal_cones()) s.push_back(p1->cone(m).contains(rv({1})) ? iv({1}) : iv({2}));
  auto o1b = ToricCartierDivisor{PLOnFan(p1, s)};
  std::vector<long> vals{value_on(o1b.psi, rv({1})), value_on(o1b.psi, rv({-1}))};
  EXPECT_EQ(vals, (std::vector<long>{1, -2}));
  EXPECT_EQ(unbounded_locus(o1b).size(), 2u);
  auto p2 = share(projective_space_fan(2));
  EXPECT_EQ(unbounded_locus({PLOnFan::linear(p2, iv({1, 0}))}).size(), 2u);
  EXPECT_EQ(unbounded_locus({PLOnFan::linear(p2, iv({1, -1}))}).size(), 2u);
}

TEST(ProperIntersection, Examples) {
  auto f = share(projective_space_fan(2));
  auto plane = whole_space(f);
  EXPECT_TRUE(properly_intersects({}, plane));
  auto d0 = from_values(f, {{E3, -1}}), d1 = from_values(f, {{E1, -1}}), d2 = from_values(f, {{E2, -1}});
  EXPECT_TRUE(properly_intersects({d0, d1, d2}, plane));
  EXPECT_FALSE(properly_intersects({d0, d0}, plane));
  std::size_t r = cone_of(f, {rv({-1, -1})});
  TropicalCycle at_infinity(f, 1, {wc(f, Polyhedron::whole(1), 1, r)});
  EXPECT_FALSE(properly_intersects({d0}, at_infinity));
  EXPECT_TRUE(properly_intersects({d1}, at_infinity));
  EXPECT_TRUE(properly_intersects({d1, d2}, at_infinity));
  EXPECT_FALSE(properly_intersects({d1, d0}, at_infinity));
}

TEST(CornerLocus, MaxOnProjectiveLine) {
  auto p1 = share(projective_space_fan(1));
  auto c = corner_locus(pa_max(1, {{iv({0}), 0}, {iv({1}), 0}}), whole_space(p1));
  std::size_t plus = cone_of(p1, {rv({1})});
  TropicalCycle expect(p1, 0, {wc(p1, Polyhedron::point(rv({0})), -1), wc(p1, Polyhedron::point(RatVec{}), 1, plus)});
  EXPECT_TRUE(cycles_equal(c, expect));
  EXPECT_EQ(degree(c), 0);
}

TEST(CornerLocus, MinAndMaxOnProjectivePlane) {
  auto f = share(projective_space_fan(2));
  std::size_t r1 = cone_of(f, {rv({1, 0})}), r2 = cone_of(f, {rv({0, 1})}), r3 = cone_of(f, {rv({-1, -1})});
  auto lo = corner_locus(pa_min(2, {{iv({0, 0}), 0}, {iv({1, 0}), 0}, {iv({0, 1}), 0}}), whole_space(f));
  auto expect_lo = p2_line(f, rv({0, 0})) + TropicalCycle(f, 1, {wc(f, Polyhedron::whole(1), -1, r3)});
  EXPECT_TRUE(cycles_equal(lo, expect_lo));
  EXPECT_TRUE(check_balanced(lo).balanced);

  auto hi = corner_locus(pa_max(2, {{iv({0, 0}), 0}, {iv({1, 0}), 0}, {iv({0, 1}), 0}}), whole_space(f));
  TropicalCycle expect_hi(f, 1,
                          {wc(f, ray_from(rv({0, 0}), rv({-1, 0})), -1), wc(f, ray_from(rv({0, 0}), rv({0, -1})), -1),
                           wc(f, ray_from(rv({0, 0}), rv({1, 1})), -1), wc(f, Polyhedron::whole(1), 1, r1), wc(f, Polyhedron::whole(1), 1, r2)});
  EXPECT_TRUE(cycles_equal(hi, expect_hi));
}

TEST(CornerLocus, AffineAndZero) {
  auto f = share(projective_space_fan(2));
  auto c = corner_locus(PiecewiseAffineFunction::affine(iv({2, -1}), 5), whole_space(f));
  EXPECT_TRUE(c.part_of_sedentarity(0).empty());
  EXPECT_EQ(boundary_weight(c, cone_of(f, {rv({1, 0})})), 2);
  EXPECT_EQ(boundary_weight(c, cone_of(f, {rv({0, 1})})), -1);
  EXPECT_EQ(boundary_weight(c, cone_of(f, {rv({-1, -1})})), -1);
  EXPECT_TRUE(corner_locus(PiecewiseAffineFunction::affine(iv({0, 0}), 3), whole_space(f)).empty());
  std::size_t r = cone_of(f, {rv({1, 0})});
  EXPECT_THROW(corner_locus(PiecewiseAffineFunction::affine(iv({0, 0}), 0), TropicalCycle(f, 1, {wc(f, Polyhedron::whole(1), 1, r)})),
               NotSedentarityZero);
}

TEST(CornerLocusProperty, BalancedBilinearPrincipal) {
  auto g = rng(57);
  auto f = share(projective_space_fan(2));
  for (int trial = 0; trial < 6; ++trial) {
    auto p1 = random_p2_function(g, 2), p2 = random_p2_function(g, 1);
    auto plane = whole_space(f, uniform(g, 1, 2));
    auto c1 = corner_locus(p1, plane), c2 = corner_locus(p2, plane), c12 = corner_locus(p1 + p2, plane);
    EXPECT_TRUE(check_balanced(c12).balanced);
    EXPECT_TRUE(cycles_equal(c12, c1 + c2)) << "trial " << trial;
    // A principal divisor has degree zero on every curve.
    auto curve = p2_line(f, random_vec(g, 2, 3), uniform(g, 1, 2)) + p2_line(f, random_vec(g, 2, 3));
    EXPECT_EQ(degree(corner_locus(p1, curve)), 0);
    EXPECT_EQ(degree(corner_locus(p1 + p2, curve)), 0);
  }
}

TEST(ToricIntersect, Examples) {
  auto p1 = share(projective_space_fan(1));
  EXPECT_TRUE(toric_intersect({PLOnFan::linear(p1, iv({0}))}, whole_space(p1)).empty());
  auto o1 = from_values(p1, {{iv({1}), -1}});
  auto pt = toric_intersect(o1, whole_space(p1));
  ASSERT_EQ(pt.cells().size(), 1u);
  EXPECT_EQ(pt.cells()[0].weight, 1);
  EXPECT_EQ(pt.cells()[0].cell.sedentarity(), cone_of(p1, {rv({1})}));

  auto f = share(p1xp1_fan());
  std::size_t e1 = cone_of(f, {rv({1, 0})});
  ToricCartierDivisor o10{PLOnFan(f, std::vector<IntVec>(4, iv({0, 0})))};
  // psi = -max(0, x): slope (-1,0) on cones containing e1.
  std::vector<IntVec> s;
  for (auto m : f->maximal_cones()) s.push_back(f->cone(m).contains(rv({1, 0})) ? iv({-1, 0}) : iv({0, 0}));
  o10 = {PLOnFan(f, s)};
  auto line = toric_intersect(o10, whole_space(f));
  EXPECT_TRUE(cycles_equal(line, TropicalCycle(f, 1, {wc(f, Polyhedron::whole(1), 1, e1)})));
  EXPECT_THROW(toric_intersect(o10, line), CycleInUnboundedLocus);
}

TEST(ToricIntersect, DegreeOnLinesIsSumOfMultiplicities) {
  auto g = rng(59);
  auto f = share(projective_space_fan(2));
  for (int trial = 0; trial < 10; ++trial) {
    auto d = from_values(f, {{E1, uniform(g, -3, 3)}, {E2, uniform(g, -3, 3)}, {E3, uniform(g, -3, 3)}});
    long w = uniform(g, 1, 3);
    auto pts = toric_intersect(d, p2_line(f, random_vec(g, 2, 4), w));
    Int expect = 0;
    for (const auto& m : ray_multiplicities(d)) expect += m;
    EXPECT_EQ(degree(pts), expect * w);
  }
}

TEST(Commutativity, Examples) {
  auto f = share(p1xp1_fan());
  std::vector<IntVec> s1, s2;
  for (auto m : f->maximal_cones()) {
    s1.push_back(f->cone(m).contains(rv({1, 0})) ? iv({-1, 0}) : iv({0, 0}));
    s2.push_back(f->cone(m).contains(rv({0, 1})) ? iv({0, -1}) : iv({0, 0}));
  }
  ToricCartierDivisor a{PLOnFan(f, s1)}, b{PLOnFan(f, s2)};
  auto plane = whole_space(f);
  EXPECT_TRUE(check_commutativity(a, b, plane));
  auto ab = toric_intersect(a, toric_intersect(b, plane));
  std::size_t corner = cone_of(f, {rv({1, 0}), rv({0, 1})});
  EXPECT_TRUE(cycles_equal(ab, TropicalCycle(f, 0, {wc(f, Polyhedron::point(RatVec{}), 1, corner)})));
  EXPECT_TRUE(check_commutativity(a, a, plane));
}

TEST(CommutativityProperty, RandomPairsOnP2) {
  auto g = rng(61);
  auto f = share(projective_space_fan(2));
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<IntVec> dirs{E1, E2, E3};
    long i = uniform(g, 0, 2), j = (i + uniform(g, 1, 2)) % 3;
    long a = uniform(g, -3, 3), b = uniform(g, -3, 3), w = uniform(g, 1, 3);
    auto d1 = from_values(f, {{dirs[i], a}}), d2 = from_values(f, {{dirs[j], b}});
    auto c = whole_space(f, w);
    EXPECT_TRUE(check_commutativity(d1, d2, c));
    EXPECT_EQ(degree(toric_intersect(d1, toric_intersect(d2, c))), a * b * w);
  }
}

TEST(ProjectionFormula, ProductProjection) {
  auto g = rng(67);
  auto pp = share(p1xp1_fan());
  auto p1 = share(projective_space_fan(1));
  for (int trial = 0; trial < 10; ++trial) {
    int axis = static_cast<int>(uniform(g, 0, 1));
    EquivariantMap f{pp, p1, {axis == 0 ? iv({1, 0}) : iv({0, 1})}, rv({uniform(g, -2, 2)})};
    auto d = from_values(p1, {{iv({1}), uniform(g, -3, 3)}, {iv({-1}), uniform(g, -3, 3)}});
    auto c = p1p1_curve(pp, random_vec(g, 2, 3), uniform(g, 0, 3), uniform(g, 1, 2));
    auto lhs = push_forward(f, toric_intersect(pull_back(f, d), c));
    auto rhs = toric_intersect(d, push_forward(f, c));
    EXPECT_TRUE(cycles_equal(lhs, rhs)) << "trial " << trial;
  }
}

TEST(ProjectionFormula, DoublingAndDiagonal) {
  auto g = rng(71);
  auto p1 = share(projective_space_fan(1));
  auto pp = share(p1xp1_fan());
  for (int trial = 0; trial < 6; ++trial) {
    auto d = from_values(p1, {{iv({1}), uniform(g, -3, 3)}, {iv({-1}), uniform(g, -3, 3)}});
    EquivariantMap twice{p1, p1, {iv({2})}, rv({uniform(g, -2, 2)})};
    auto c = whole_space(p1, uniform(g, 1, 3));
    EXPECT_TRUE(cycles_equal(push_forward(twice, toric_intersect(pull_back(twice, d), c)), toric_intersect(d, push_forward(twice, c))));
    auto dd = ToricCartierDivisor{PLOnFan::from_ray_values(pp, {Int(uniform(g, -2, 2)), Int(uniform(g, -2, 2)), Int(uniform(g, -2, 2)), Int(uniform(g, -2, 2))})};
    EquivariantMap diag{p1, pp, {iv({1}), iv({1})}, rv({0, uniform(g, -2, 2)})};
    EXPECT_TRUE(cycles_equal(push_forward(diag, toric_intersect(pull_back(diag, dd), c)), toric_intersect(dd, push_forward(diag, c))));
  }
}
