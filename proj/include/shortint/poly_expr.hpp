#ifndef SHORTINT_POLY_EXPR_HPP
#define SHORTINT_POLY_EXPR_HPP

#include <shortint/polynomial.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace shortint {

/// expr := ['-'] term (('+'|'-') term)*
/// term := coeff | coeff '*' mono | mono
/// mono := 'x' ('^' uint)?
/// coeff := uint | '(' uint (':' uint)* ')'
/// The parenthesised tuple names an element of an extension field by its
/// coordinates in the power basis, which is what Poly::to_string prints.
/// Whitespace is ignored. Throws SyntaxError with the byte offset.
Poly parse_poly(std::string_view text, const FieldPtr& ctx);

/// As parse_poly, then DegreeZero unless the degree is at least min_degree.
Poly parse_poly(std::string_view text, const FieldPtr& ctx, int min_degree);

/// "5", "-1" or "a0:a1:...": one field element.
FieldElement parse_element(std::string_view text, const FieldPtr& ctx);

/// Comma-separated list of parse_element entries.
std::vector<FieldElement> parse_element_list(std::string_view text, const FieldPtr& ctx);

}  // namespace shortint

#endif
