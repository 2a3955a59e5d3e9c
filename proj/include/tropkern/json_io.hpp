#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropkern/complex.hpp"
#include "tropkern/cycle.hpp"
#include "tropkern/divisor.hpp"
#include "tropkern/height.hpp"

namespace tropkern::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "tropkern/1";

// Malformed input; pointer is the JSON pointer of the offending value.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string pointer, const std::string& what) : std::runtime_error(what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

Json load_file(const std::string& path);
// Checks "format" and returns the value of "type".
std::string object_type(const Json& j);

// Fans: {"preset": "P1" | "P2" | "P3" | "P1xP1"} or {"ambient_dim": n, "cones": [[ray, ...], ...]}.
FanPtr read_fan(const Json& j);
// A fan embedded under "fan", else the fallback; both present must agree.
FanPtr fan_for(const Json& j, const FanPtr& fallback);

Polyhedron read_polyhedron(const Json& j, std::size_t n, const std::string& ptr);
TropicalPolyhedron read_tropical(const Json& j, const FanPtr& fan, const std::string& ptr);
TropicalCycle read_cycle(const Json& j, const FanPtr& fan);
std::vector<TropicalPolyhedron> read_family(const Json& j, const FanPtr& fan);
PolyhedralComplex read_complex(const Json& j, const FanPtr& fan);
PiecewiseAffineFunction read_function(const Json& j, const std::string& ptr = "");
ToricCartierDivisor read_divisor(const Json& j, const FanPtr& fan);
std::vector<GreenFunction> read_greens(const Json& j, const FanPtr& fan);

Json write_rat(const Rat& q);
Json write_fan(const Fan& f);
Json write_polyhedron(const Polyhedron& p);
Json write_tropical(const TropicalPolyhedron& d);
// Cycles are written in normal form.
Json write_cycle(const TropicalCycle& c);
Json write_complex(const PolyhedralComplex& c);

}  // namespace tropkern::io
