#ifndef TUPLEVO_DSL_TRANSFORM_HPP
#define TUPLEVO_DSL_TRANSFORM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tuplevo/dsl/ast.hpp"

namespace tuplevo::dsl {

enum class TransformKind { Generate, Mutate, Crossover, PerturbConstants };

// Deterministic program synthesis over a feature schema. generate takes no
// parents, mutate and perturb_constants take one, crossover at least two.
// Outputs always satisfy the Program invariants.
//
// perturb_constants multiplies each numeric literal, and the removal
// fraction, by an independent factor drawn uniformly from [0.5, 2.0]. Draw
// order: the removal-fraction factor first, then literals in pre-order.
Program transform(TransformKind kind, const std::vector<Program>& parents,
                  std::uint64_t seed, const std::vector<std::string>& schema);

}  // namespace tuplevo::dsl

#endif
