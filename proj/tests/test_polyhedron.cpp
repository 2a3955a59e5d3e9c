#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"
#include "tropkern/errors.hpp"
#include "tropkern/exactlin.hpp"
#include "tropkern/polyhedron.hpp"

using namespace tropkern;
using tk_test::rv;

namespace {

Polyhedron from_ineqs(std::size_t n, std::vector<RatVec> ineqs, std::vector<RatVec> eqs = {}) {
  return Polyhedron::from_h(HalfspaceRep{n, std::move(ineqs), std::move(eqs)});
}

Polyhedron conv(std::vector<RatVec> verts, std::vector<RatVec> rays = {}, std::vector<RatVec> lin = {}) {
  std::size_t n = verts.empty() ? 0 : verts[0].size();
  return Polyhedron::from_v(GeneratorRep{n, std::move(verts), std::move(rays), std::move(lin)});
}

bool satisfies(const HalfspaceRep& h, const RatVec& x) {
  std::size_t n = h.dim;
  for (const auto& e : h.eqs) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) s += e[j] * x[j];
    if (s != e[n]) return false;
  }
  for (const auto& e : h.ineqs) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) s += e[j] * x[j];
    if (s < e[n]) return false;
  }
  return true;
}

// Support function max_{x in P} c.x for a polytope given by points.
Rat support(const std::vector<RatVec>& pts, const RatVec& c) {
  Rat best = dot(pts[0], c);
  for (const auto& p : pts) best = std::max(best, dot(p, c));
  return best;
}

std::vector<RatVec> random_points(std::mt19937_64& g, std::size_t count, std::size_t n, long bound) {
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < count; ++i) {
    RatVec p(n);
    for (auto& x : p) x = tk_test::uniform(g, -bound, bound);
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(DoubleDescription, Quadrant) {
  auto g = dd_convert(HalfspaceRep{2, {rv({1, 0, 0}), rv({0, 1, 0})}, {}});
  EXPECT_EQ(g.vertices, std::vector<RatVec>{rv({0, 0})});
  EXPECT_EQ(g.rays, (std::vector<RatVec>{rv({0, 1}), rv({1, 0})}));
  EXPECT_TRUE(g.lineality.empty());
}

TEST(DoubleDescription, SegmentToHalfspaces) {
  auto h = dd_convert_back(GeneratorRep{2, {rv({0, 0}), rv({1, 2})}, {}, {}});
  ASSERT_EQ(h.ineqs.size(), 2u);
  ASSERT_EQ(h.eqs.size(), 1u);
  // Incidence oracle: every facet is tight on exactly one endpoint, the equation on both.
  std::vector<RatVec> ends{rv({0, 0}), rv({1, 2})};
  for (const auto& f : h.ineqs) {
    int tight = 0;
    for (const auto& e : ends) {
      Rat s = f[0] * e[0] + f[1] * e[1];
      EXPECT_GE(s, f[2]);
      if (s == f[2]) ++tight;
    }
    EXPECT_EQ(tight, 1);
  }
  for (const auto& e : ends) EXPECT_EQ(h.eqs[0][0] * e[0] + h.eqs[0][1] * e[1], h.eqs[0][2]);
  EXPECT_FALSE(satisfies(h, rv({2, 4})));
  EXPECT_TRUE(satisfies(h, RatVec{frac(1, 2), Rat(1)}));
}

TEST(DoubleDescription, Infeasible) {
  auto g = dd_convert(HalfspaceRep{1, {rv({1, 1}), rv({-1, 0})}, {}});
  EXPECT_TRUE(g.vertices.empty());
  EXPECT_TRUE(from_ineqs(1, {rv({1, 1}), rv({-1, 0})}).is_empty());
  EXPECT_EQ(from_ineqs(1, {rv({1, 1}), rv({-1, 0})}).dim(), -1);
}

TEST(DoubleDescription, RandomRoundTripIsSameSet) {
  auto g = tk_test::rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = tk_test::uniform(g, 1, 5);
    std::size_t nv = tk_test::uniform(g, 1, 6), nr = tk_test::uniform(g, 0, 2), nl = tk_test::uniform(g, 0, 1);
    GeneratorRep gen{n, random_points(g, nv, n, 4), random_points(g, nr, n, 3), random_points(g, nl, n, 2)};
    HalfspaceRep h = dd_convert_back(gen);
    // Every input generator satisfies H; every sampled combination too.
    for (const auto& v : gen.vertices) ASSERT_TRUE(satisfies(h, v));
    RatVec base = gen.vertices[0];
    for (const auto& r : gen.rays) EXPECT_TRUE(satisfies(h, add(base, scale(7, r))));
    for (const auto& l : gen.lineality) EXPECT_TRUE(satisfies(h, sub(base, scale(5, l))));
    GeneratorRep back = dd_convert(h);
    // Mutual containment: back's generators satisfy H; original generators lie in conv(back).
    Polyhedron p = Polyhedron::from_v(back);
    Polyhedron q = Polyhedron::from_v(gen);
    EXPECT_TRUE(p.contains(q));
    EXPECT_TRUE(q.contains(p));
    EXPECT_EQ(p, q);
    for (const auto& v : back.vertices) EXPECT_TRUE(satisfies(h, v));
  }
}

TEST(RecessionCone, Examples) {
  auto diag = from_ineqs(2, {rv({1, 0, 0})}, {rv({1, -1, 0})});
  EXPECT_EQ(recession_cone(diag), Polyhedron::cone(2, {rv({1, 1})}));
  auto square = conv({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
  EXPECT_EQ(recession_cone(square), Polyhedron::point(rv({0, 0})));
  auto orth = Polyhedron::cone(3, {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  EXPECT_EQ(recession_cone(orth), orth);
  EXPECT_THROW(recession_cone(Polyhedron::empty(2)), EmptyPolyhedron);
}

TEST(RecessionCone, TranslationInvariantAndConvex) {
  auto g = tk_test::rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = tk_test::uniform(g, 1, 3);
    GeneratorRep gen{n, random_points(g, 3, n, 3), random_points(g, 2, n, 3), {}};
    auto p = Polyhedron::from_v(gen);
    auto rc = recession_cone(p);
    RatVec t = random_points(g, 1, n, 5)[0];
    EXPECT_EQ(recession_cone(p.linear_image(identity_rat(n), t)), rc);
    for (const auto& a : rc.rays())
      for (const auto& b : rc.rays()) EXPECT_TRUE(rc.contains(add(a, scale(3, b))));
    // Delta + v inside Delta for v in rec.
    for (const auto& r : rc.rays())
      for (const auto& v : p.vertices()) EXPECT_TRUE(p.contains(add(v, r)));
  }
}

TEST(Faces, SquareRayTriangle) {
  auto square = conv({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
  auto fs = faces(square);
  std::map<int, int> count;
  for (const auto& f : fs) count[f.dim]++;
  EXPECT_EQ(count[2], 1);
  EXPECT_EQ(count[1], 4);
  EXPECT_EQ(count[0], 4);
  auto ray = Polyhedron::cone(2, {rv({1, 1})});
  EXPECT_EQ(faces(ray).size(), 2u);
  EXPECT_THROW(faces(Polyhedron::empty(2)), EmptyPolyhedron);
}

TEST(Faces, TriangleMatchesSupportingHyperplaneOracle) {
  std::vector<RatVec> verts{rv({0, 0}), rv({1, 0}), rv({0, 1})};
  auto tri = conv(verts);
  // Oracle: minimizers of c.x over a grid of normals, plus c = 0 for the whole triangle.
  std::set<std::set<std::size_t>> oracle;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      RatVec c = rv({a, b});
      Rat best = dot(c, verts[0]);
      for (const auto& v : verts) best = std::min(best, dot(c, v));
      std::set<std::size_t> s;
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (dot(c, verts[i]) == best) s.insert(i);
      oracle.insert(s);
    }
  std::set<std::set<std::size_t>> got;
  for (const auto& f : faces(tri)) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (f.polyhedron.contains(verts[i])) s.insert(i);
    got.insert(s);
  }
  EXPECT_EQ(got, oracle);
  EXPECT_EQ(got.size(), 7u);
}

TEST(Faces, ClosedUnderIntersectionAndDimensionsDrop) {
  auto g = tk_test::rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = tk_test::uniform(g, 2, 3);
    GeneratorRep gen{n, random_points(g, 5, n, 3), random_points(g, tk_test::uniform(g, 0, 1), n, 2), {}};
    auto p = Polyhedron::from_v(gen);
    auto fs = faces(p);
    std::set<std::string> keys;
    for (const auto& f : fs) keys.insert(f.polyhedron.key());
    for (const auto& a : fs)
      for (const auto& b : fs) {
        auto i = a.polyhedron.intersect(b.polyhedron);
        if (i.is_empty()) continue;
        EXPECT_TRUE(keys.count(i.key()));
        if (a.polyhedron.contains(b.polyhedron) && a.polyhedron != b.polyhedron) EXPECT_LT(b.dim, a.dim);
      }
  }
}

TEST(RelintMeets, Examples) {
  auto quadrant = Polyhedron::cone(2, {rv({1, 0}), rv({0, 1})});
  EXPECT_TRUE(relint_meets(Polyhedron::cone(2, {rv({1, 1})}), quadrant));
  EXPECT_FALSE(relint_meets(Polyhedron::cone(2, {rv({1, 0})}), Polyhedron::cone(2, {rv({0, 1})})));
  auto seg = conv({rv({0, 0}), rv({2, 2})});
  auto pt = Polyhedron::point(rv({1, 1}));
  // Direct membership oracle: (1,1) is a strict convex combination of the endpoints.
  ASSERT_TRUE(seg.relint_contains(rv({1, 1})));
  EXPECT_TRUE(relint_meets(seg, pt));
  EXPECT_FALSE(relint_meets(seg, Polyhedron::point(rv({0, 0}))));
}

TEST(RelintMeets, SelfMeetsIffNonEmpty) {
  auto g = tk_test::rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = tk_test::uniform(g, 1, 4);
    GeneratorRep gen{n, random_points(g, tk_test::uniform(g, 1, 4), n, 3), random_points(g, tk_test::uniform(g, 0, 2), n, 2), {}};
    auto p = Polyhedron::from_v(gen);
    EXPECT_TRUE(relint_meets(p, p));
  }
  EXPECT_FALSE(relint_meets(Polyhedron::empty(2), Polyhedron::empty(2)));
}

TEST(Simplicial, Examples) {
  EXPECT_TRUE(is_simplicial(conv({rv({0, 0}), rv({1, 0}), rv({0, 1})})));
  EXPECT_FALSE(is_simplicial(conv({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})})));
  EXPECT_TRUE(is_simplicial(conv({rv({0, 0, 0})}, {rv({1, 0, 0}), rv({0, 1, 0})})));
  EXPECT_THROW(is_simplicial(conv({rv({0, 0})}, {}, {rv({1, 0})})), HasLineality);
}

TEST(MinkowskiSum, SupportFunctionOracle) {
  std::vector<RatVec> sq{rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})};
  std::vector<RatVec> seg{rv({0, 0}), rv({1, 1})};
  auto sum = minkowski_sum(conv(sq), conv(seg));
  EXPECT_EQ(sum.vertices().size(), 6u);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      RatVec c = rv({a, b});
      EXPECT_EQ(support(sum.vertices(), c), support(sq, c) + support(seg, c));
    }
  auto axis = minkowski_sum(conv(sq), conv({rv({0, 0}), rv({2, 0})}));
  EXPECT_EQ(axis.vertices().size(), 4u);
  EXPECT_EQ(minkowski_sum(conv(sq), Polyhedron::point(rv({0, 0}))), conv(sq));
  auto c = Polyhedron::cone(2, {rv({1, 0}), rv({0, 1})});
  EXPECT_EQ(minkowski_sum(c, Polyhedron::cone(2, {rv({1, 0})})), c);
}
