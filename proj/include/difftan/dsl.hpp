#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "difftan/polynomial.hpp"
#include "difftan/space.hpp"

namespace difftan {

// expr := FAMILY ['(' args ')'] | 'product' '[' expr (',' expr)* ']'
SpacePresentation parse_space(std::string_view text);

// 'origin', a number, or '(' number (',' number)* ')'; checked against the space.
Point parse_point(std::string_view text, const SpacePresentation& space);

// Exact numbers: integers, '/', '*', '+', '-', sqrt(INT), parentheses.
QuadNumber parse_number(std::string_view text);
std::vector<QuadNumber> parse_number_list(std::string_view text);

// Polynomials over the named variables, with '^' for powers.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars);
// A single polynomial or a parenthesized tuple of them.
PolyMap parse_polynomial_tuple(std::string_view text, const std::vector<std::string>& vars);

std::vector<std::string> split_names(std::string_view text);

}  // namespace difftan
