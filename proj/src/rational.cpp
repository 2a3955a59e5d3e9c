#include "tropkern/rational.hpp"

#include <stdexcept>

namespace tropkern {

Rat frac(const Int& n, const Int& d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Int& z) { return z.get_str(); }

Rat parse_rational(const std::string& s) {
  auto valid = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false)) throw std::invalid_argument("not a rational: " + s);
  if (num[0] == '+') num = num.substr(1);
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rat q(Int(num), d);
  q.canonicalize();
  return q;
}

RatVec to_rat(const IntVec& v) {
  RatVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

RatMat to_rat(const IntMat& m) {
  RatMat r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(to_rat(row));
  return r;
}

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IntVec to_int(const RatVec& v) {
  IntVec r;
  r.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw std::logic_error("to_int: non-integral entry");
    r.push_back(x.get_num());
  }
  return r;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVec primitive_integer(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  IntVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.get_num() * (l / x.get_den()));
  Int g = content(r);
  if (g == 0) return r;
  for (auto& x : r) x /= g;
  return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

RatVec scale(const Rat& s, const RatVec& a) {
  RatVec r(a);
  for (auto& x : r) x *= s;
  return r;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

IntVec scale(const Int& s, const IntVec& a) {
  IntVec r(a);
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatVec mat_vec(const RatMat& m, const RatVec& v) {
  RatVec r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(dot(row, v));
  return r;
}

IntVec mat_vec(const IntMat& m, const IntVec& v) {
  IntVec r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(dot(row, v));
  return r;
}

template <class M>
static M mul_impl(const M& a, const M& b, std::size_t inner, std::size_t cols) {
  M r(a.size(), typename M::value_type(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  std::size_t cols = b.empty() ? 0 : b[0].size();
  return mul_impl(a, b, b.size(), cols);
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  std::size_t cols = b.empty() ? 0 : b[0].size();
  return mul_impl(a, b, b.size(), cols);
}

template <class M>
static M transpose_impl(const M& m) {
  if (m.empty()) return {};
  M r(m[0].size(), typename M::value_type(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
  return r;
}

RatMat transpose(const RatMat& m) { return transpose_impl(m); }
IntMat transpose(const IntMat& m) { return transpose_impl(m); }

IntMat identity_int(std::size_t n) {
  IntMat r(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

RatMat identity_rat(std::size_t n) {
  RatMat r(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

}  // namespace tropkern
