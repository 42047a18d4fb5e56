#pragma once

#include <cstddef>

#include "radix.hpp"
#include "sagan/constant.hpp"

namespace sagan::detail {

// Enclosure of the constant with scale 2^bits and width at most a few
// units in the last place. Only Pi, Sqrt2, Log2 and E are handled here.
Enclosure enclose_real(ConstantKind kind, std::size_t bits);

bool is_series_constant(ConstantKind kind);

}  // namespace sagan::detail
