#include "tropkern/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "tropkern/errors.hpp"

namespace tropkern::io {

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& what) { throw ValidationError(ptr, what); }

std::string child(const std::string& ptr, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return ptr + "/" + k;
}

std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

void expect_object(const Json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(ptr, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) fail(child(ptr, k), "unknown field '" + k + "'");
}

const Json& field(const Json& j, const std::string& ptr, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(ptr, std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_at(const Json& j, const std::string& ptr) {
  if (!j.is_array()) fail(ptr, "expected an array");
  return j;
}

Rat read_rat(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (j.is_string()) {
    static const std::regex re(R"(-?[0-9]+(/[0-9]+)?)");
    const std::string& s = j.get_ref<const std::string&>();
    if (!std::regex_match(s, re)) fail(ptr, "expected a rational 'p' or 'p/q'");
    auto slash = s.find('/');
    if (slash != std::string::npos && Int(s.substr(slash + 1)) == 0) fail(ptr, "zero denominator");
    return parse_rational(s);
  }
  fail(ptr, "expected an integer or a rational string");
}

Int read_int(const Json& j, const std::string& ptr) {
  Rat q = read_rat(j, ptr);
  if (q.get_den() != 1) fail(ptr, "expected an integer");
  return q.get_num();
}

std::size_t read_size(const Json& j, const std::string& ptr) {
  if (!j.is_number_unsigned()) fail(ptr, "expected a non-negative integer");
  return j.get<std::size_t>();
}

RatVec read_ratvec(const Json& j, std::size_t n, const std::string& ptr) {
  array_at(j, ptr);
  if (j.size() != n) fail(ptr, "expected a vector of length " + std::to_string(n));
  RatVec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(read_rat(j[i], child(ptr, i)));
  return v;
}

IntVec read_intvec(const Json& j, std::size_t n, const std::string& ptr) {
  array_at(j, ptr);
  if (j.size() != n) fail(ptr, "expected a vector of length " + std::to_string(n));
  IntVec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(read_int(j[i], child(ptr, i)));
  return v;
}

std::vector<RatVec> read_rows(const Json& j, std::size_t n, const std::string& ptr) {
  std::vector<RatVec> out;
  array_at(j, ptr);
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_ratvec(j[i], n, child(ptr, i)));
  return out;
}

std::size_t read_sedentarity(const Json& j, const Fan& fan, const std::string& ptr) {
  array_at(j, ptr);
  std::size_t n = fan.ambient_dim();
  std::vector<RatVec> rays;
  for (std::size_t i = 0; i < j.size(); ++i) {
    IntVec r = read_intvec(j[i], n, child(ptr, i));
    if (is_zero(r)) fail(child(ptr, i), "zero ray");
    rays.push_back(to_rat(r));
  }
  auto idx = fan.find(Polyhedron::cone(n, rays));
  if (!idx) fail(ptr, "not a cone of the fan");
  return *idx;
}

Json write_vec(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(write_rat(x));
  return a;
}

Json write_intvec(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(write_rat(Rat(x)));
  return a;
}

Json write_rows(const std::vector<RatVec>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(write_vec(r));
  return a;
}

std::vector<std::pair<IntVec, Rat>> read_terms(const Json& j, std::size_t n, const std::string& ptr) {
  array_at(j, ptr);
  if (j.empty()) fail(ptr, "expected at least one term");
  std::vector<std::pair<IntVec, Rat>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = child(ptr, i);
    expect_object(j[i], p, {"slope", "constant"});
    out.emplace_back(read_intvec(field(j[i], p, "slope"), n, child(p, "slope")), read_rat(field(j[i], p, "constant"), child(p, "constant")));
  }
  return out;
}

template <class F>
auto guarded(const std::string& ptr, F&& f) -> decltype(f()) {
  // Construction failures on well-typed input are still input errors at this location.
  try {
    return f();
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    if (e.kind() == "InvariantViolation" || e.kind() == "DimensionMismatch" || e.kind() == "MixedDimension" || e.kind() == "ZeroVector" ||
        e.kind() == "EmptyPolyhedron")
      fail(ptr, e.what());
    throw;
  }
}

}  // namespace

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("", std::string("malformed JSON: ") + e.what());
  }
}

std::string object_type(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  const Json& f = field(j, "", "format");
  if (!f.is_string() || f.get<std::string>() != kFormat) fail("/format", std::string("expected \"") + kFormat + "\"");
  const Json& t = field(j, "", "type");
  if (!t.is_string()) fail("/type", "expected a string");
  return t.get<std::string>();
}

FanPtr read_fan_at(const Json& j, const std::string& ptr, bool top) {
  if (top)
    expect_object(j, ptr, {"format", "type", "preset", "ambient_dim", "cones"});
  else
    expect_object(j, ptr, {"preset", "ambient_dim", "cones"});
  if (j.contains("preset")) {
    if (j.contains("cones") || j.contains("ambient_dim")) fail(ptr, "'preset' excludes 'cones' and 'ambient_dim'");
    const Json& p = j["preset"];
    std::string name = p.is_string() ? p.get<std::string>() : "";
    if (name == "P1") return std::make_shared<const Fan>(projective_space_fan(1));
    if (name == "P2") return std::make_shared<const Fan>(projective_space_fan(2));
    if (name == "P3") return std::make_shared<const Fan>(projective_space_fan(3));
    if (name == "P1xP1") return std::make_shared<const Fan>(product_fan(projective_space_fan(1), projective_space_fan(1)));
    fail(child(ptr, "preset"), "unknown preset (P1, P2, P3, P1xP1)");
  }
  std::size_t n = read_size(field(j, ptr, "ambient_dim"), child(ptr, "ambient_dim"));
  const Json& cones = array_at(field(j, ptr, "cones"), child(ptr, "cones"));
  std::vector<std::vector<IntVec>> gens;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    std::string p = child(child(ptr, "cones"), i);
    array_at(cones[i], p);
    std::vector<IntVec> c;
    for (std::size_t k = 0; k < cones[i].size(); ++k) c.push_back(read_intvec(cones[i][k], n, child(p, k)));
    gens.push_back(c);
  }
  return guarded(child(ptr, "cones"), [&] { return std::make_shared<const Fan>(Fan::from_cones(n, gens)); });
}

FanPtr read_fan(const Json& j) {
  std::string t = object_type(j);
  if (t != "fan") fail("/type", "expected a fan");
  return read_fan_at(j, "", true);
}

FanPtr fan_for(const Json& j, const FanPtr& fallback) {
  if (!j.contains("fan")) {
    if (!fallback) fail("", "no fan: embed one under 'fan' or pass --fan");
    return fallback;
  }
  FanPtr own = read_fan_at(j["fan"], "/fan", false);
  if (fallback && !(*fallback == *own)) fail("/fan", "embedded fan differs from --fan");
  return own;
}

Polyhedron read_polyhedron(const Json& j, std::size_t n, const std::string& ptr) {
  expect_object(j, ptr, {"vertices", "rays", "lineality", "ineqs", "eqs"});
  bool v = j.contains("vertices") || j.contains("rays") || j.contains("lineality");
  bool h = j.contains("ineqs") || j.contains("eqs");
  if (v && h) fail(ptr, "give either generators or inequalities, not both");
  if (h) {
    HalfspaceRep r;
    r.dim = n;
    if (j.contains("ineqs")) r.ineqs = read_rows(j["ineqs"], n + 1, child(ptr, "ineqs"));
    if (j.contains("eqs")) r.eqs = read_rows(j["eqs"], n + 1, child(ptr, "eqs"));
    return Polyhedron::from_h(r);
  }
  GeneratorRep g;
  g.dim = n;
  if (j.contains("vertices")) g.vertices = read_rows(j["vertices"], n, child(ptr, "vertices"));
  if (j.contains("rays")) g.rays = read_rows(j["rays"], n, child(ptr, "rays"));
  if (j.contains("lineality")) g.lineality = read_rows(j["lineality"], n, child(ptr, "lineality"));
  if (g.vertices.empty() && (!g.rays.empty() || !g.lineality.empty())) fail(ptr, "generators need at least one vertex");
  return Polyhedron::from_v(g);
}

TropicalPolyhedron read_tropical(const Json& j, const FanPtr& fan, const std::string& ptr) {
  expect_object(j, ptr, {"sedentarity", "polyhedron"});
  std::size_t sed = j.contains("sedentarity") ? read_sedentarity(j["sedentarity"], *fan, child(ptr, "sedentarity")) : 0;
  Polyhedron p = read_polyhedron(field(j, ptr, "polyhedron"), fan->stratum_dim(sed), child(ptr, "polyhedron"));
  return TropicalPolyhedron(fan, sed, p);
}

TropicalCycle read_cycle(const Json& j, const FanPtr& fallback) {
  if (object_type(j) != "cycle") fail("/type", "expected a cycle");
  expect_object(j, "", {"format", "type", "fan", "dim", "cells"});
  FanPtr fan = fan_for(j, fallback);
  int d = static_cast<int>(read_size(field(j, "", "dim"), "/dim"));
  const Json& cells = array_at(field(j, "", "cells"), "/cells");
  std::vector<WeightedCell> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string p = child("/cells", i);
    expect_object(cells[i], p, {"sedentarity", "polyhedron", "weight"});
    Json cell = cells[i];
    Int w = read_int(field(cell, p, "weight"), child(p, "weight"));
    cell.erase("weight");
    TropicalPolyhedron t = read_tropical(cell, fan, p);
    if (t.is_empty()) fail(child(p, "polyhedron"), "empty cell");
    if (t.dim() != d) fail(child(p, "polyhedron"), "cell dimension differs from 'dim'");
    out.push_back({t, w});
  }
  return guarded("/cells", [&] { return TropicalCycle(fan, d, out); });
}

std::vector<TropicalPolyhedron> read_family(const Json& j, const FanPtr& fallback) {
  if (object_type(j) != "family") fail("/type", "expected a family");
  expect_object(j, "", {"format", "type", "fan", "members"});
  FanPtr fan = fan_for(j, fallback);
  const Json& m = array_at(field(j, "", "members"), "/members");
  std::vector<TropicalPolyhedron> out;
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(read_tropical(m[i], fan, child("/members", i)));
  return out;
}

PolyhedralComplex read_complex(const Json& j, const FanPtr& fallback) {
  if (object_type(j) != "complex") fail("/type", "expected a complex");
  expect_object(j, "", {"format", "type", "fan", "cells"});
  FanPtr fan = fan_for(j, fallback);
  const Json& c = array_at(field(j, "", "cells"), "/cells");
  std::vector<TropicalPolyhedron> cells;
  bool finite = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    cells.push_back(read_tropical(c[i], fan, child("/cells", i)));
    if (cells.back().is_empty()) fail(child("/cells", i), "empty cell");
    finite = finite && cells.back().sedentarity() == 0;
  }
  if (finite) {
    std::vector<Polyhedron> ps;
    for (const auto& t : cells) ps.push_back(t.finite_part());
    return guarded("/cells", [&] { return PolyhedralComplex::from_polyhedra(fan, ps); });
  }
  return guarded("/cells", [&] { return PolyhedralComplex::from_tropical(fan, cells); });
}

PiecewiseAffineFunction read_function_at(const Json& j, const std::string& ptr, std::size_t n) {
  expect_object(j, ptr, {"affine", "max", "min", "pieces", "sum", "negate"});
  if (j.size() != 1) fail(ptr, "expected exactly one of affine, max, min, pieces, sum, negate");
  if (j.contains("affine")) {
    Json wrapped = Json::array({j["affine"]});
    auto t = read_terms(wrapped, n, child(ptr, "affine"));
    return PiecewiseAffineFunction::affine(t[0].first, t[0].second);
  }
  if (j.contains("max")) return PiecewiseAffineFunction::max_of(n, read_terms(j["max"], n, child(ptr, "max")));
  if (j.contains("min")) return PiecewiseAffineFunction::min_of(n, read_terms(j["min"], n, child(ptr, "min")));
  if (j.contains("negate")) return -read_function_at(j["negate"], child(ptr, "negate"), n);
  if (j.contains("sum")) {
    const Json& s = array_at(j["sum"], child(ptr, "sum"));
    if (s.empty()) fail(child(ptr, "sum"), "expected at least one summand");
    PiecewiseAffineFunction acc = read_function_at(s[0], child(child(ptr, "sum"), 0), n);
    for (std::size_t i = 1; i < s.size(); ++i) acc = acc + read_function_at(s[i], child(child(ptr, "sum"), i), n);
    return acc;
  }
  const Json& ps = array_at(j["pieces"], child(ptr, "pieces"));
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::string p = child(child(ptr, "pieces"), i);
    expect_object(ps[i], p, {"polyhedron", "slope", "constant"});
    pieces.push_back({read_polyhedron(field(ps[i], p, "polyhedron"), n, child(p, "polyhedron")),
                      read_intvec(field(ps[i], p, "slope"), n, child(p, "slope")), read_rat(field(ps[i], p, "constant"), child(p, "constant"))});
  }
  return guarded(child(ptr, "pieces"), [&] { return PiecewiseAffineFunction(n, pieces); });
}

PiecewiseAffineFunction read_function(const Json& j, const std::string& ptr) {
  if (ptr.empty()) {
    if (object_type(j) != "function") fail("/type", "expected a function");
    expect_object(j, "", {"format", "type", "ambient_dim", "definition"});
    std::size_t n = read_size(field(j, "", "ambient_dim"), "/ambient_dim");
    return read_function_at(field(j, "", "definition"), "/definition", n);
  }
  expect_object(j, ptr, {"ambient_dim", "definition"});
  std::size_t n = read_size(field(j, ptr, "ambient_dim"), child(ptr, "ambient_dim"));
  return read_function_at(field(j, ptr, "definition"), child(ptr, "definition"), n);
}

ToricCartierDivisor read_divisor(const Json& j, const FanPtr& fallback) {
  if (object_type(j) != "divisor") fail("/type", "expected a divisor");
  expect_object(j, "", {"format", "type", "fan", "ray_values", "cone_slopes"});
  FanPtr fan = fan_for(j, fallback);
  std::size_t n = fan->ambient_dim();
  if (j.contains("ray_values") == j.contains("cone_slopes")) fail("", "expected exactly one of ray_values, cone_slopes");
  if (j.contains("ray_values")) {
    const Json& rv = array_at(j["ray_values"], "/ray_values");
    std::map<IntVec, Int> value;
    for (std::size_t i = 0; i < rv.size(); ++i) {
      std::string p = child("/ray_values", i);
      expect_object(rv[i], p, {"ray", "value"});
      IntVec r = read_intvec(field(rv[i], p, "ray"), n, child(p, "ray"));
      if (is_zero(r)) fail(child(p, "ray"), "zero ray");
      r = primitive_integer(to_rat(r));
      if (value.count(r)) fail(child(p, "ray"), "ray given twice");
      value[r] = read_int(field(rv[i], p, "value"), child(p, "value"));
    }
    std::vector<Int> vals;
    for (std::size_t r : fan->rays()) {
      auto it = value.find(fan->generators(r)[0]);
      if (it == value.end()) fail("/ray_values", "missing a value for a ray of the fan");
      vals.push_back(it->second);
      value.erase(it);
    }
    if (!value.empty()) fail("/ray_values", "value given for a vector that is not a ray of the fan");
    return {PLOnFan::from_ray_values(fan, vals)};
  }
  const Json& cs = array_at(j["cone_slopes"], "/cone_slopes");
  std::map<std::size_t, IntVec> slope;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string p = child("/cone_slopes", i);
    expect_object(cs[i], p, {"cone", "slope"});
    std::size_t c = read_sedentarity(field(cs[i], p, "cone"), *fan, child(p, "cone"));
    slope[c] = read_intvec(field(cs[i], p, "slope"), n, child(p, "slope"));
  }
  std::vector<IntVec> slopes;
  for (std::size_t c : fan->maximal_cones()) {
    auto it = slope.find(c);
    if (it == slope.end()) fail("/cone_slopes", "missing a slope for a maximal cone");
    slopes.push_back(it->second);
    slope.erase(it);
  }
  if (!slope.empty()) fail("/cone_slopes", "slope given for a cone that is not maximal");
  return guarded("/cone_slopes", [&] { return ToricCartierDivisor{PLOnFan(fan, slopes)}; });
}

std::vector<GreenFunction> read_greens(const Json& j, const FanPtr& fallback) {
  if (object_type(j) != "greens") fail("/type", "expected a list of Green functions");
  expect_object(j, "", {"format", "type", "fan", "functions"});
  FanPtr fan = fan_for(j, fallback);
  const Json& fs = array_at(field(j, "", "functions"), "/functions");
  std::vector<GreenFunction> out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::string p = child("/functions", i);
    PiecewiseAffineFunction phi = read_function(fs[i], p);
    if (phi.ambient_dim() != fan->ambient_dim()) fail(child(p, "ambient_dim"), "does not match the fan");
    out.push_back(green_from_pa(phi, fan));
  }
  return out;
}

Json write_rat(const Rat& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

Json write_fan(const Fan& f) {
  Json cones = Json::array();
  for (std::size_t c : f.maximal_cones()) {
    Json g = Json::array();
    for (const auto& r : f.generators(c)) g.push_back(write_intvec(r));
    cones.push_back(g);
  }
  return Json{{"ambient_dim", f.ambient_dim()}, {"cones", cones}};
}

Json write_polyhedron(const Polyhedron& p) {
  Json j = Json::object();
  j["vertices"] = write_rows(p.vertices());
  if (!p.rays().empty()) j["rays"] = write_rows(p.rays());
  if (!p.lineality().empty()) j["lineality"] = write_rows(p.lineality());
  return j;
}

Json write_tropical(const TropicalPolyhedron& d) {
  Json j = Json::object();
  if (d.sedentarity() != 0) {
    Json s = Json::array();
    for (const auto& r : d.fan().generators(d.sedentarity())) s.push_back(write_intvec(r));
    j["sedentarity"] = s;
  }
  j["polyhedron"] = write_polyhedron(d.finite_part());
  return j;
}

Json write_cycle(const TropicalCycle& c) {
  TropicalCycle nf = normalize(c);
  std::vector<const WeightedCell*> order;
  for (const auto& wc : nf.cells()) order.push_back(&wc);
  std::sort(order.begin(), order.end(), [](const WeightedCell* a, const WeightedCell* b) { return trop_less(a->cell, b->cell); });
  Json cells = Json::array();
  for (const auto* wc : order) {
    Json t = write_tropical(wc->cell);
    t["weight"] = write_rat(Rat(wc->weight));
    cells.push_back(t);
  }
  return Json{{"format", kFormat}, {"type", "cycle"}, {"fan", write_fan(c.fan())}, {"dim", c.dim()}, {"cells", cells}};
}

Json write_complex(const PolyhedralComplex& c) {
  Json cells = Json::array();
  for (std::size_t i : c.maximal_cells()) cells.push_back(write_tropical(c.cell(i)));
  return Json{{"format", kFormat}, {"type", "complex"}, {"fan", write_fan(c.fan())}, {"cells", cells}};
}

}  // namespace tropkern::io
