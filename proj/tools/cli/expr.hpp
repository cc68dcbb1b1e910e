#pragma once

// Scalar expressions in the curve parameter s, compiled to jet functions so the
// free functions a(s), b(s) of the lightlike family can come from a config file.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ('+' | '-') unary | power
//   power := atom ('^' unary)?
//   atom  := number | 's' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
//   fn    := sin | cos | exp | log | sqrt | sinh | cosh | abs

#include <string_view>

#include "imcf/jet.hpp"

namespace imcf::cli {

/// Throws ConfigError with the offending column on malformed input.
ScalarFn compile_expression(std::string_view text);

} // namespace imcf::cli
