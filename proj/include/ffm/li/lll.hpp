#pragma once

#include <vector>

#include "ffm/zeta/intpoly.hpp"

namespace ffm::li {

using IntMatrix = std::vector<std::vector<BigInt>>;  // rows are basis vectors

// Integral LLL reduction (all arithmetic exact). Rows must be linearly
// independent. delta = delta_num / delta_den in (1/4, 1].
IntMatrix lll_reduce(IntMatrix basis, long delta_num = 99, long delta_den = 100);

}  // namespace ffm::li
