#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tropkern/errors.hpp"

namespace tropkern::svg {

namespace {

struct Pt {
  double x, y;
};

constexpr double kScale = 40.0;
constexpr double kBand = 1.2;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Window {
  double lo_x, hi_x, lo_y, hi_y;
  double width() const { return hi_x - lo_x; }
  double height() const { return hi_y - lo_y; }
  // Canvas coordinates with room for the boundary bands.
  std::string at(const Pt& p) const { return num((p.x - lo_x + 2 * kBand) * kScale) + "," + num((hi_y - p.y + 2 * kBand) * kScale); }
};

Pt to_pt(const RatVec& v) { return {v[0].get_d(), v[1].get_d()}; }

std::vector<Pt> ordered(std::vector<Pt> pts) {
  Pt c{0, 0};
  for (const auto& p : pts) c = {c.x + p.x / pts.size(), c.y + p.y / pts.size()};
  std::sort(pts.begin(), pts.end(), [&](const Pt& a, const Pt& b) { return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x); });
  return pts;
}

Polyhedron box(const Window& w) {
  HalfspaceRep h;
  h.dim = 2;
  auto r = [](double v) { return Rat(static_cast<long>(std::floor(v))); };
  auto s = [](double v) { return Rat(static_cast<long>(std::ceil(v))); };
  h.ineqs = {{1, 0, r(w.lo_x)}, {-1, 0, -s(w.hi_x)}, {0, 1, r(w.lo_y)}, {0, -1, -s(w.hi_y)}};
  return Polyhedron::from_h(h);
}

// Where the ray x + t d, t >= 0, leaves the window, pushed into the band.
std::optional<Pt> band_point(const Window& w, const Pt& x, const Pt& d) {
  double t_hi = 1e18, t_lo = -1e18;
  auto clip = [&](double p, double dp, double lo, double hi) {
    if (std::abs(dp) < 1e-12) return p >= lo && p <= hi;
    double a = (lo - p) / dp, b = (hi - p) / dp;
    t_lo = std::max(t_lo, std::min(a, b));
    t_hi = std::min(t_hi, std::max(a, b));
    return true;
  };
  if (!clip(x.x, d.x, w.lo_x, w.hi_x) || !clip(x.y, d.y, w.lo_y, w.hi_y) || t_lo > t_hi) return std::nullopt;
  double len = std::hypot(d.x, d.y);
  return Pt{x.x + t_hi * d.x + kBand * 0.5 * d.x / len, x.y + t_hi * d.y + kBand * 0.5 * d.y / len};
}

}  // namespace

std::string render(const Fan& fan, const std::vector<Item>& items) {
  if (fan.ambient_dim() != 2) throw DimensionMismatch("plotting needs ambient rank 2");
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& it : items) {
    std::vector<RatVec> pts = it.cell.finite_part().vertices();
    if (it.cell.sedentarity() != 0) {
      const auto& q = fan.quotient(it.cell.sedentarity());
      for (auto& v : pts) v = v.empty() ? RatVec{0, 0} : mat_vec(to_rat(q.section), v);
    }
    for (const auto& v : pts) {
      Pt p = to_pt(v);
      lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x), lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
    }
  }
  Window w{std::floor(lo_x) - 2, std::ceil(hi_x) + 2, std::floor(lo_y) - 2, std::ceil(hi_y) + 2};
  Polyhedron frame = box(w);
  std::ostringstream out;
  double cw = (w.width() + 4 * kBand) * kScale, ch = (w.height() + 4 * kBand) * kScale;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cw) << "\" height=\"" << num(ch) << "\" viewBox=\"0 0 " << num(cw) << " "
      << num(ch) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"#eef2f7\"/>\n";
  out << "<rect x=\"" << num(2 * kBand * kScale) << "\" y=\"" << num(2 * kBand * kScale) << "\" width=\"" << num(w.width() * kScale) << "\" height=\""
      << num(w.height() * kScale) << "\" fill=\"white\" stroke=\"#99a\"/>\n";
  auto label = [&](const Pt& p, const std::optional<Int>& wt) {
    if (wt) out << "<text x=\"" << w.at(p).substr(0, w.at(p).find(',')) << "\" y=\"" << w.at(p).substr(w.at(p).find(',') + 1)
                << "\" font-size=\"12\" fill=\"#c22\">" << to_string(*wt) << "</text>\n";
  };
  for (const auto& it : items) {
    std::size_t sed = it.cell.sedentarity();
    if (sed == 0) {
      Polyhedron clipped = it.cell.finite_part().intersect(frame);
      if (clipped.is_empty()) continue;
      std::vector<Pt> pts;
      for (const auto& v : clipped.vertices()) pts.push_back(to_pt(v));
      pts = ordered(pts);
      Pt c{0, 0};
      for (const auto& p : pts) c = {c.x + p.x / pts.size(), c.y + p.y / pts.size()};
      if (clipped.dim() == 0) {
        out << "<circle cx=\"" << w.at(pts[0]).substr(0, w.at(pts[0]).find(',')) << "\" cy=\"" << w.at(pts[0]).substr(w.at(pts[0]).find(',') + 1)
            << "\" r=\"4\" fill=\"#225\"/>\n";
      } else {
        out << (clipped.dim() == 2 ? "<polygon fill=\"#cfe0f5\" stroke=\"#557\" points=\"" : "<polyline fill=\"none\" stroke=\"#225\" stroke-width=\"2\" points=\"");
        for (const auto& p : pts) out << w.at(p) << " ";
        out << "\"/>\n";
      }
      label(c, it.weight);
      continue;
    }
    std::vector<IntVec> gens = fan.generators(sed);
    Pt dir{0, 0};
    for (const auto& g : gens) dir = {dir.x + g[0].get_d(), dir.y + g[1].get_d()};
    if (fan.stratum_dim(sed) == 0) {
      auto p = band_point(w, {0, 0}, dir);
      if (!p) continue;
      out << "<rect x=\"" << num((p->x - w.lo_x + 2 * kBand) * kScale - 5) << "\" y=\"" << num((w.hi_y - p->y + 2 * kBand) * kScale - 5)
          << "\" width=\"10\" height=\"10\" fill=\"#522\"/>\n";
      label(*p, it.weight);
      continue;
    }
    // One-dimensional stratum: sample the interval and trace it in the band.
    const auto& q = fan.quotient(sed);
    const Polyhedron& fp = it.cell.finite_part();
    double r = 2 * std::max(w.width(), w.height());
    double a = -r, b = r;
    Polyhedron seg = fp.intersect(Polyhedron::from_h(HalfspaceRep{1, {{1, Rat(static_cast<long>(-r))}, {-1, Rat(static_cast<long>(-r))}}, {}}));
    if (seg.is_empty()) continue;
    a = seg.vertices().front()[0].get_d();
    b = seg.vertices().back()[0].get_d();
    if (a > b) std::swap(a, b);
    std::vector<Pt> trace;
    int steps = a == b ? 1 : 64;
    for (int s = 0; s < steps; ++s) {
      double y = steps == 1 ? a : a + (b - a) * s / (steps - 1);
      Pt lift{q.section[0][0].get_d() * y, q.section[1][0].get_d() * y};
      if (auto p = band_point(w, lift, dir)) trace.push_back(*p);
    }
    if (trace.empty()) continue;
    if (trace.size() == 1) {
      out << "<circle cx=\"" << w.at(trace[0]).substr(0, w.at(trace[0]).find(',')) << "\" cy=\""
          << w.at(trace[0]).substr(w.at(trace[0]).find(',') + 1) << "\" r=\"4\" fill=\"#522\"/>\n";
    } else {
      out << "<polyline fill=\"none\" stroke=\"#a33\" stroke-width=\"3\" points=\"";
      for (const auto& p : trace) out << w.at(p) << " ";
      out << "\"/>\n";
    }
    label(trace[trace.size() / 2], it.weight);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tropkern::svg
