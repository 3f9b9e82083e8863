#pragma once

// Tower elements from text: integers, x<i>, y<i>, z<i>, + - * / ^ (integer
// exponents, negative allowed), parentheses and unary minus.
// e.g. "x0^2 - 3/4*y0 + 1/(x1+2)".

#include <string>

#include "fermat/tower.hpp"

namespace fermat {

/// ConfigError on a syntax error or a generator beyond the tower,
/// DivisionByZero when a divisor is zero.
TowerElem parse_element(const Tower& tower, const std::string& text);

}  // namespace fermat
