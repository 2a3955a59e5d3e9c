#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropkern/tropictoric.hpp"

namespace tropkern::svg {

struct Item {
  TropicalPolyhedron cell;
  std::optional<Int> weight;
};

// Finite parts are drawn in a window of the plane; cells of ray sedentarity in a band
// beyond the window edge they run off to; point strata as corner markers. Rank 2 only.
std::string render(const Fan& fan, const std::vector<Item>& items);

}  // namespace tropkern::svg
