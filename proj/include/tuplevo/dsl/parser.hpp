#ifndef TUPLEVO_DSL_PARSER_HPP
#define TUPLEVO_DSL_PARSER_HPP

#include <string>
#include <string_view>

#include "tuplevo/dsl/ast.hpp"

namespace tuplevo::dsl {

// Parses `rho=<number>; score = <expr>`. The removal fraction is clamped
// into [0.05, 0.5]; depth/node caps raise LimitExceeded. Unknown identifiers
// are accepted here and rejected at bind time.
Program parse(std::string_view source);

// Canonical source text; parse(render(p)) is structurally equal to p and
// render is idempotent on its own output.
std::string render(const Program& p);
std::string render_expr(const ExprRef& e);

// 64-bit digest of the canonical rendering.
std::uint64_t digest(const Program& p);

}  // namespace tuplevo::dsl

#endif
