#pragma once

#include <string>
#include <string_view>

#include "pslet/leading_order.hpp"

namespace pslet {

// Spectroscopic labels: principal number n = l + nr + 1 followed by the
// orbital letter (s p d f g h i k l m for l = 0..9). "l,nr" numeric pairs are
// accepted everywhere a label is.
StateSpec parse_state(std::string_view text);

// inverse of parse_state for l <= 9; falls back to the "l,nr" form
std::string state_label(const StateSpec& s);

}  // namespace pslet
