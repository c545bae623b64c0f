#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "towerlift/element.hpp"

namespace towerlift {

// Textual syntax: variables by name (z1.., x1.., y1.., t), integer literals,
// + - * / ^ and parentheses; `*` may be omitted between factors.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'|'/'] factor)*
//   factor := ['-'] atom ['^' ['-'] integer]
//   atom   := integer | name | '(' expr ')'
//
// Division and negative powers are only allowed for units: nonzero
// constants for plain polynomials, c*y^beta*f^k for tower elements. In tower
// elements the name `f` denotes the localizing polynomial.

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, Field field);

Element parse_element(std::string_view text, const RingPtr& ring);

}  // namespace towerlift
