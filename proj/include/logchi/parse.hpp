#pragma once

#include <string_view>
#include <variant>

#include "logchi/poly.hpp"

namespace logchi {

using ParsedExpr = std::variant<Poly, RatFunc>;

// Parses an arithmetic expression over the context variables with
// + - * / ^, integer/rational literals and parentheses. Standard
// precedence; '^' takes a non-negative integer exponent and binds
// tightest. Returns a Poly unless a division by a non-constant occurs,
// in which case the result is an (unreduced) RatFunc. Errors carry the
// offending position.
ParsedExpr parse_expr(std::string_view text, const ContextPtr& ctx);

// Same, but requires the result to be polynomial.
Poly parse_poly(std::string_view text, const ContextPtr& ctx);

} // namespace logchi
