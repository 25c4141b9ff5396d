#ifndef TUPLEVO_EVO_PROMPT_HPP
#define TUPLEVO_EVO_PROMPT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tuplevo/core/tuple.hpp"
#include "tuplevo/evo/config.hpp"

namespace tuplevo::evo {

// Everything a prompt needs. `active` lists 1-based subproblem indices; in
// integrated mode it covers all of them. Parents carry one component per
// active subproblem, in the same order.
struct PromptInputs {
    Strategy strategy = Strategy::I1;
    std::string problem_name;
    std::string problem_summary;
    std::vector<int> active;
    std::vector<std::string> active_names;
    std::vector<std::vector<std::string>> schemas;  // per active subproblem
    std::vector<std::vector<HeuristicComponent>> parents;
    std::uint64_t seed = 0;
};

// Deterministic prompt document. Embeds the DSL grammar, the feature schema
// of each active subproblem, the parents' rendered code and thoughts, the
// response format, and a machine-readable metadata block that the mock
// provider acts on and real providers ignore as a comment.
std::string build_prompt(const PromptInputs& inputs);

// The grammar text shipped in every prompt (and in docs/dsl.md).
std::string dsl_grammar_text();

inline constexpr const char* kMetaBegin = "<!--tuplevo:meta";
inline constexpr const char* kMetaEnd = "-->";

}  // namespace tuplevo::evo

#endif
