#pragma once

// Expression grammar shared by spec files, tensor files and the command
// line:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*        '/' only by generator-free values
//   unary  := '-' unary | power
//   power  := atom ['^' integer]              integer >= 1
//   atom   := integer | identifier | '(' expr ')'
//
// `*` is mandatory between factors and whitespace is insignificant.

#include <string_view>

#include "qbrst/ncpoly.hpp"

namespace qbrst {

/// Parses a noncommutative polynomial. Identifiers resolve to generators of
/// `alphabet` first, then to `parameters`. Throws ParseError.
Poly parse_expression(std::string_view text, const AlphabetPtr& alphabet,
                      const ParameterSet& parameters);

/// Parses a generator-free expression into a Scalar.
Scalar parse_scalar(std::string_view text, const ParameterSet& parameters);

/// Parses a word given as a product of generators ("chi3*chi1", "c1^2").
Word parse_word(std::string_view text, const AlphabetPtr& alphabet);

}  // namespace qbrst
