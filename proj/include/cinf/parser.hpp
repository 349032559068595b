#pragma once

#include <map>
#include <string>
#include <string_view>

#include "cinf/term.hpp"

namespace cinf {

/// Names bound by `let`; identifiers found here expand to their terms.
using TermEnv = std::map<std::string, Term>;

/// S-expression form: (exp (+ x y)), (^ x 2), (bump[0,1;-1,1] x y).
Term parse_sexpr(std::string_view text, const TermEnv& env = {});

/// Infix form: exp(x+y) - 1, x^2, 3/4*x, bump[0,1](x). Division only by
/// constants. A bare primitive name such as `sin` stands for sin(x).
Term parse_infix(std::string_view text, const TermEnv& env = {});

/// Tries the s-expression form first, then infix. Throws SyntaxError.
Term parse_term(std::string_view text, const TermEnv& env = {});

bool is_identifier(std::string_view s);
bool is_reserved_name(std::string_view s);

}  // namespace cinf
