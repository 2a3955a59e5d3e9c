#pragma once

#include <stdexcept>
#include <string>

namespace tropkern {

// Mathematical precondition failures. kind() is the stable name surfaced by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define TROPKERN_ERROR(Name)                                               \
  struct Name : Error {                                                    \
    explicit Name(const std::string& what = "") : Error(#Name, what) {}    \
  };

TROPKERN_ERROR(RankMismatch)
TROPKERN_ERROR(NotSublattice)
TROPKERN_ERROR(ZeroVector)
TROPKERN_ERROR(EmptyPolyhedron)
TROPKERN_ERROR(HasLineality)
TROPKERN_ERROR(NotAFaceRelation)
TROPKERN_ERROR(NotConstantTowardsBoundary)
TROPKERN_ERROR(IncompatibleMap)
TROPKERN_ERROR(NotComplete)
TROPKERN_ERROR(RecessionNotInFan)
TROPKERN_ERROR(UnboundedMinimalFunction)
TROPKERN_ERROR(FanNotSimplicial)
TROPKERN_ERROR(MixedDimension)
TROPKERN_ERROR(NotZeroDimensional)
TROPKERN_ERROR(UnboundedDifference)
TROPKERN_ERROR(NotSedentarityZero)
TROPKERN_ERROR(CycleInUnboundedLocus)
TROPKERN_ERROR(ImproperIntersection)
TROPKERN_ERROR(GreenUndefinedAtPoint)
TROPKERN_ERROR(DimensionMismatch)
TROPKERN_ERROR(InvariantViolation)

#undef TROPKERN_ERROR

}  // namespace tropkern
