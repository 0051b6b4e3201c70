#pragma once

#include <string>

#include "frob/scalar.hpp"

namespace frob {

struct ParseError : Error {
  size_t pos;
  ParseError(const std::string& msg, size_t at)
      : Error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

// Grammar (whitespace insignificant):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' nonnegative-integer]
//   atom   := integer | variable | 'i' | 'exp' '(' linear-form ')' | '(' expr ')'
// Rationals are written a/b through the division operator.
ScalarField parse_field(const std::string& source, const ChartPtr& chart);
}  // namespace frob
