#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tropkern {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMat = std::vector<IntVec>;  // row-major
using RatMat = std::vector<RatVec>;

// Canonicalized n/d.
Rat frac(const Int& n, const Int& d);

// "p/q", or "p" when q = 1.
std::string to_string(const Rat& q);
std::string to_string(const Int& z);
Rat parse_rational(const std::string& s);

RatVec to_rat(const IntVec& v);
RatMat to_rat(const IntMat& m);
bool is_integral(const RatVec& v);
IntVec to_int(const RatVec& v);  // requires integral entries

// Smallest positive integer multiple of v that is integral, divided by its content.
IntVec primitive_integer(const RatVec& v);
Int content(const IntVec& v);

Rat dot(const RatVec& a, const RatVec& b);
Int dot(const IntVec& a, const IntVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& s, const RatVec& a);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& s, const IntVec& a);
bool is_zero(const RatVec& v);
bool is_zero(const IntVec& v);

RatVec mat_vec(const RatMat& m, const RatVec& v);
IntVec mat_vec(const IntMat& m, const IntVec& v);
RatMat mat_mul(const RatMat& a, const RatMat& b);
IntMat mat_mul(const IntMat& a, const IntMat& b);
RatMat transpose(const RatMat& m);
IntMat transpose(const IntMat& m);
IntMat identity_int(std::size_t n);
RatMat identity_rat(std::size_t n);

}  // namespace tropkern
