#ifndef TUPLEVO_DSL_INTERPRETER_HPP
#define TUPLEVO_DSL_INTERPRETER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tuplevo/dsl/ast.hpp"

namespace tuplevo::dsl {

// Per-element feature rows. Every row has one value per schema entry and
// all values are finite.
struct FeatureTable {
    std::vector<std::string> schema;
    std::vector<std::vector<double>> rows;

    void validate() const;  // throws InvariantViolation
};

struct EvalContext {
    std::uint64_t seed = 0;
    int step_budget = 10000;  // AST-node evaluations allowed per row
};

// Evaluates the scoring expression on every row and returns the
// ceil(rho * rows) highest-scoring row indices, ascending. Ties prefer the
// lower row index. rand() draws from a stream keyed by (ctx.seed, row index).
std::vector<std::size_t> select_removals(const Program& p, const FeatureTable& table,
                                         const EvalContext& ctx);

// Row scores, exposed for tests and diagnostics.
std::vector<double> score_rows(const Program& p, const FeatureTable& table,
                               const EvalContext& ctx);

}  // namespace tuplevo::dsl

#endif
