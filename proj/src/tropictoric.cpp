#include "tropkern/tropictoric.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "tropkern/errors.hpp"

namespace tropkern {

namespace {

IntMat rays_as_int(const Polyhedron& c) {
  IntMat out;
  for (const auto& r : c.rays()) out.push_back(primitive_integer(r));
  return out;
}

RatVec rays_sum(const Fan& fan, std::size_t i) {
  RatVec s(fan.ambient_dim());
  for (const auto& g : fan.generators(i)) s = add(s, to_rat(g));
  return s;
}

}  // namespace

Fan Fan::from_cones(std::size_t n, const std::vector<std::vector<IntVec>>& cones) {
  std::map<std::string, Polyhedron> all;
  all.emplace(Polyhedron::point(RatVec(n)).key(), Polyhedron::point(RatVec(n)));
  for (const auto& gens : cones) {
    std::vector<RatVec> rays;
    for (const auto& g : gens) {
      if (g.size() != n) throw DimensionMismatch("cone generator has wrong length");
      if (!is_zero(g)) rays.push_back(to_rat(g));
    }
    Polyhedron c = Polyhedron::cone(n, rays);
    if (!c.is_pointed()) throw InvariantViolation("fan cone is not strictly convex");
    for (const auto& f : faces(c)) all.emplace(f.polyhedron.key(), f.polyhedron);
  }
  std::vector<Polyhedron> list;
  for (auto& [k, c] : all) list.push_back(c);
  std::stable_sort(list.begin(), list.end(), [](const Polyhedron& a, const Polyhedron& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.key() < b.key();
  });

  Fan fan;
  fan.n_ = n;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < list.size(); ++i) {
    fan.cones_.push_back(list[i]);
    fan.keys_.push_back(list[i].key());
    fan.gens_.push_back(rays_as_int(list[i]));
    index[fan.keys_.back()] = i;
  }
  std::size_t m = list.size();
  fan.face_.assign(m, std::vector<bool>(m, false));
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& f : faces(list[j])) fan.face_[j][index.at(f.polyhedron.key())] = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Polyhedron c = list[i].intersect(list[j]);
      auto it = index.find(c.key());
      if (it == index.end() || !fan.face_[i][it->second] || !fan.face_[j][it->second])
        throw InvariantViolation("fan cones do not meet in a common face");
    }
  Lattice z = Lattice::standard(n);
  for (std::size_t i = 0; i < m; ++i) fan.quot_.push_back(quotient_by_span(z, fan.gens_[i]));
  return fan;
}

Fan Fan::trivial(std::size_t n) { return from_cones(n, {}); }

std::vector<std::size_t> Fan::star(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j)
    if (is_face(i, j)) out.push_back(j);
  return out;
}

std::vector<std::size_t> Fan::rays() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j)
    if (cone_dim(j) == 1) out.push_back(j);
  return out;
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j) {
    bool maximal = true;
    for (std::size_t k = 0; k < size() && maximal; ++k)
      if (k != j && is_face(j, k)) maximal = false;
    if (maximal) out.push_back(j);
  }
  return out;
}

std::optional<std::size_t> Fan::find(const Polyhedron& cone) const {
  auto it = std::find(keys_.begin(), keys_.end(), cone.key());
  if (it == keys_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

std::optional<std::size_t> Fan::minimal_common(std::size_t i, std::size_t j) const {
  // Cones are sorted by dimension, so the first hit is minimal.
  for (std::size_t k = 0; k < size(); ++k)
    if (is_face(i, k) && is_face(j, k)) return k;
  return std::nullopt;
}

std::optional<std::size_t> Fan::cone_containing_relint(const RatVec& x) const {
  for (std::size_t k = 0; k < size(); ++k)
    if (cones_[k].relint_contains(x)) return k;
  return std::nullopt;
}

RatMat Fan::projection(std::size_t i) const { return to_rat(quot_[i].projection); }

RatMat Fan::transport(std::size_t i, std::size_t j) const {
  if (!is_face(i, j)) throw NotAFaceRelation("transport needs a face relation");
  if (quot_[j].rank() == 0) return RatMat{};
  if (quot_[i].rank() == 0) return RatMat(quot_[j].rank(), RatVec{});
  return to_rat(mat_mul(quot_[j].projection, quot_[i].section));
}

Polyhedron Fan::star_cone(std::size_t i, std::size_t j) const {
  std::vector<RatVec> imgs;
  for (const auto& g : gens_[j]) {
    IntVec p = quot_[i].project(g);
    if (!is_zero(p)) imgs.push_back(to_rat(p));
  }
  return Polyhedron::cone(quot_[i].rank(), imgs);
}

bool Fan::is_complete() const {
  if (n_ == 0) return true;
  for (std::size_t j : maximal_cones())
    if (cone_dim(j) != static_cast<int>(n_)) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (cone_dim(i) != static_cast<int>(n_) - 1) continue;
    int count = 0;
    for (std::size_t j = 0; j < size(); ++j)
      if (cone_dim(j) == static_cast<int>(n_) && is_face(i, j)) ++count;
    if (count != 2) return false;
  }
  return true;
}

bool Fan::is_simplicial() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (gens_[i].size() != static_cast<std::size_t>(cone_dim(i))) return false;
  return true;
}

Fan projective_space_fan(std::size_t n) {
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVec(n, Int(-1)));
  std::vector<std::vector<IntVec>> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<IntVec> c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(rays[i]);
    cones.push_back(c);
  }
  return Fan::from_cones(n, cones);
}

Fan product_fan(const Fan& a, const Fan& b) {
  std::size_t na = a.ambient_dim(), nb = b.ambient_dim();
  std::vector<std::vector<IntVec>> cones;
  for (std::size_t i : a.maximal_cones())
    for (std::size_t j : b.maximal_cones()) {
      std::vector<IntVec> c;
      for (const auto& g : a.generators(i)) {
        IntVec v(na + nb);
        std::copy(g.begin(), g.end(), v.begin());
        c.push_back(v);
      }
      for (const auto& g : b.generators(j)) {
        IntVec v(na + nb);
        std::copy(g.begin(), g.end(), v.begin() + na);
        c.push_back(v);
      }
      cones.push_back(c);
    }
  return Fan::from_cones(na + nb, cones);
}

StarFan star_fan(const Fan& fan, std::size_t sigma) {
  StarFan s;
  s.base = sigma;
  std::vector<std::size_t> st = fan.star(sigma);
  std::vector<std::vector<IntVec>> cones;
  std::vector<Polyhedron> imgs;
  for (std::size_t t : st) {
    imgs.push_back(fan.star_cone(sigma, t));
    cones.push_back(rays_as_int(imgs.back()));
  }
  s.fan = Fan::from_cones(fan.stratum_dim(sigma), cones);
  s.parent_of.assign(s.fan.size(), npos);
  s.local_of.assign(fan.size(), npos);
  for (std::size_t k = 0; k < st.size(); ++k) {
    auto idx = s.fan.find(imgs[k]);
    if (!idx) throw InvariantViolation("star cone missing from star fan");
    s.parent_of[*idx] = st[k];
    s.local_of[st[k]] = *idx;
  }
  return s;
}

struct TropicalPolyhedron::Cache {
  std::mutex mu;
  std::optional<Polyhedron> rec;
  std::vector<std::optional<Polyhedron>> strata;
};

TropicalPolyhedron::TropicalPolyhedron(FanPtr fan, std::size_t sedentarity, Polyhedron finite_part)
    : fan_(std::move(fan)), sed_(sedentarity), finite_(std::move(finite_part)), cache_(std::make_shared<Cache>()) {
  if (!fan_) throw InvariantViolation("tropical polyhedron without a fan");
  if (sed_ >= fan_->size()) throw DimensionMismatch("sedentarity is not a cone of the fan");
  if (finite_.ambient_dim() != fan_->stratum_dim(sed_))
    throw DimensionMismatch("finite part does not live in the sedentarity stratum");
  cache_->strata.resize(fan_->size());
}

TropicalPolyhedron TropicalPolyhedron::empty(FanPtr fan) {
  std::size_t n = fan->ambient_dim();
  return TropicalPolyhedron(std::move(fan), 0, Polyhedron::empty(n));
}

const Polyhedron& TropicalPolyhedron::recession() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->rec) cache_->rec = recession_cone(finite_);
  return *cache_->rec;
}

const Polyhedron& TropicalPolyhedron::stratum(std::size_t tau) const {
  if (tau >= fan_->size() || !fan_->is_face(sed_, tau))
    throw NotAFaceRelation("sedentarity is not a face of the requested cone");
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->strata[tau]) return *cache_->strata[tau];
  }
  Polyhedron out;
  if (is_empty()) {
    out = Polyhedron::empty(fan_->stratum_dim(tau));
  } else if (tau == sed_) {
    out = finite_;
  } else {
    Polyhedron tp = fan_->star_cone(sed_, tau);
    if (relint_meets(tp, recession())) {
      RatMat t = fan_->transport(sed_, tau);
      out = finite_.linear_image(t, RatVec(fan_->stratum_dim(tau)));
    } else {
      out = Polyhedron::empty(fan_->stratum_dim(tau));
    }
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->strata[tau]) cache_->strata[tau] = std::move(out);
  return *cache_->strata[tau];
}

std::string TropicalPolyhedron::key() const {
  if (is_empty()) return "empty";
  return "sed" + std::to_string(sed_) + ":" + finite_.key();
}

bool trop_less(const TropicalPolyhedron& a, const TropicalPolyhedron& b) {
  if (a.sedentarity() != b.sedentarity()) return a.sedentarity() < b.sedentarity();
  if (a.dim() != b.dim()) return a.dim() > b.dim();
  return a.key() < b.key();
}

Polyhedron closure_stratum(const TropicalPolyhedron& d, std::size_t tau) { return d.stratum(tau); }

TropicalPolyhedron stratum_closure(const TropicalPolyhedron& d, std::size_t tau) {
  const Polyhedron& s = d.stratum(tau);
  if (s.is_empty()) return TropicalPolyhedron::empty(d.fan_ptr());
  return TropicalPolyhedron(d.fan_ptr(), tau, s);
}

bool is_constant_towards_boundary(const TropicalPolyhedron& d) {
  if (d.is_empty()) return true;
  const Fan& fan = d.fan();
  const Polyhedron& rec = d.recession();
  for (std::size_t t : fan.star(d.sedentarity())) {
    Polyhedron tp = fan.star_cone(d.sedentarity(), t);
    if (rec.contains(tp)) continue;
    if (relint_meets(tp, rec)) return false;
  }
  return true;
}

bool is_compact(const TropicalPolyhedron& d) {
  if (d.is_empty()) return true;
  const Fan& fan = d.fan();
  std::size_t s = d.sedentarity();
  std::vector<Polyhedron> cones;
  std::map<IntVec, bool> planes;
  for (std::size_t t : fan.star(s)) {
    cones.push_back(fan.star_cone(s, t));
    const auto& h = cones.back().hrep();
    for (const auto* rows : {&h.ineqs, &h.eqs})
      for (const auto& row : *rows) {
        IntVec nrm = primitive_integer(RatVec(row.begin(), row.end() - 1));
        auto lead = std::find_if(nrm.begin(), nrm.end(), [](const Int& x) { return x != 0; });
        if (lead == nrm.end()) continue;
        if (*lead < 0) nrm = scale(Int(-1), nrm);
        planes[nrm] = true;
      }
  }
  const Polyhedron& rec = d.recession();
  std::vector<Polyhedron> pieces{rec};
  for (const auto& [nrm, unused] : planes) {
    RatVec pos = to_rat(nrm), neg = scale(Rat(-1), to_rat(nrm));
    pos.push_back(0);
    neg.push_back(0);
    std::vector<Polyhedron> next;
    for (const auto& p : pieces) {
      Polyhedron a = p.add_inequalities({pos}), b = p.add_inequalities({neg});
      if (a.dim() == p.dim() && b.dim() == p.dim()) {
        next.push_back(a);
        next.push_back(b);
      } else {
        next.push_back(p);
      }
    }
    pieces = std::move(next);
  }
  for (const auto& p : pieces) {
    RatVec x = p.relint_point();
    bool covered = std::any_of(cones.begin(), cones.end(), [&](const Polyhedron& c) { return c.contains(x); });
    if (!covered) return false;
  }
  return true;
}

TropicalPolyhedron intersect_ctb(const TropicalPolyhedron& a, const TropicalPolyhedron& b) {
  if (!(a.fan() == b.fan())) throw DimensionMismatch("tropical polyhedra over different fans");
  if (!is_constant_towards_boundary(a) || !is_constant_towards_boundary(b))
    throw NotConstantTowardsBoundary("intersection of closures needs both operands constant towards the boundary");
  if (a.is_empty() || b.is_empty()) return TropicalPolyhedron::empty(a.fan_ptr());
  auto rho = a.fan().minimal_common(a.sedentarity(), b.sedentarity());
  if (!rho) return TropicalPolyhedron::empty(a.fan_ptr());
  Polyhedron i = a.stratum(*rho).intersect(b.stratum(*rho));
  if (i.is_empty()) return TropicalPolyhedron::empty(a.fan_ptr());
  return TropicalPolyhedron(a.fan_ptr(), *rho, i);
}

std::vector<TropicalPolyhedron> trop_faces(const TropicalPolyhedron& d) {
  if (d.is_empty()) return {};
  if (!is_constant_towards_boundary(d)) throw NotConstantTowardsBoundary("faces need a polyhedron constant towards the boundary");
  std::map<std::string, TropicalPolyhedron> out;
  for (std::size_t t : d.fan().star(d.sedentarity())) {
    const Polyhedron& s = d.stratum(t);
    if (s.is_empty()) continue;
    for (const auto& f : faces(s)) {
      TropicalPolyhedron tf(d.fan_ptr(), t, f.polyhedron);
      out.emplace(tf.key(), tf);
    }
  }
  std::vector<TropicalPolyhedron> list;
  for (auto& [k, f] : out) list.push_back(f);
  std::sort(list.begin(), list.end(), trop_less);
  return list;
}

std::size_t target_cone(const EquivariantMap& f, std::size_t i) {
  const Fan& src = *f.source;
  const Fan& tgt = *f.target;
  if (f.linear.size() != tgt.ambient_dim()) throw IncompatibleMap("linear part has wrong number of rows");
  for (const auto& row : f.linear)
    if (row.size() != src.ambient_dim()) throw IncompatibleMap("linear part has wrong number of columns");
  RatMat l = to_rat(f.linear);
  auto k = tgt.cone_containing_relint(tgt.ambient_dim() == 0 ? RatVec{} : mat_vec(l, rays_sum(src, i)));
  if (!k) throw IncompatibleMap("image of a source cone is not contained in a target cone");
  for (const auto& g : src.generators(i))
    if (!tgt.cone(*k).contains(mat_vec(l, to_rat(g))))
      throw IncompatibleMap("image of a source cone is not contained in a target cone");
  return *k;
}

void check_compatible(const EquivariantMap& f) {
  if (f.translation.size() != f.target->ambient_dim()) throw IncompatibleMap("translation has wrong length");
  for (std::size_t i = 0; i < f.source->size(); ++i) target_cone(f, i);
}

std::pair<RatMat, RatVec> stratum_map(const EquivariantMap& f, std::size_t i) {
  std::size_t k = target_cone(f, i);
  const Fan& src = *f.source;
  const Fan& tgt = *f.target;
  RatMat p = tgt.projection(k);
  RatMat pl = p.empty() ? RatMat{} : mat_mul(p, to_rat(f.linear));
  RatMat m;
  if (!pl.empty()) {
    RatMat s = to_rat(src.quotient(i).section);
    if (src.stratum_dim(i) == 0) m.assign(pl.size(), RatVec{});
    else m = mat_mul(pl, s);
  }
  RatVec off = p.empty() ? RatVec{} : mat_vec(p, f.translation);
  return {m, off};
}

TropicalPolyhedron apply_equivariant(const EquivariantMap& f, const TropicalPolyhedron& d) {
  check_compatible(f);
  if (!(d.fan() == *f.source)) throw IncompatibleMap("polyhedron is not over the source fan");
  if (d.is_empty()) return TropicalPolyhedron::empty(f.target);
  std::size_t k = target_cone(f, d.sedentarity());
  auto [m, off] = stratum_map(f, d.sedentarity());
  return TropicalPolyhedron(f.target, k, d.finite_part().linear_image(m, off));
}

}  // namespace tropkern
