#include "tuplevo/evo/prompt.hpp"

#include "nlohmann/json.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/dsl/parser.hpp"

namespace tuplevo::evo {

namespace {

const char* strategy_instruction(Strategy s) {
    switch (s) {
        case Strategy::I1:
            return "Construct a destroy heuristic designed to address the optimization "
                   "problem described above.";
        case Strategy::E1:
            return "Create a destroy heuristic that is significantly different from every "
                   "parent heuristic listed below.";
        case Strategy::E2:
            return "Generate a destroy heuristic that preserves the main conceptual "
                   "principles of the parent heuristics below while introducing a novel "
                   "variation.";
        case Strategy::M1:
            return "Refine the parent heuristic below to improve its effectiveness.";
        case Strategy::M2:
            return "Adjust the parameter settings (numeric constants and the removal "
                   "fraction) of the parent heuristic below to enhance its overall "
                   "performance.";
    }
    return "";
}

}  // namespace

std::string dsl_grammar_text() {
    return
        "program    = \"rho\" \"=\" number \";\" \"score\" \"=\" expr ;\n"
        "expr       = additive { (\"<\" | \"<=\" | \">\" | \">=\" | \"==\") additive } ;\n"
        "additive   = term { (\"+\" | \"-\") term } ;\n"
        "term       = unary { (\"*\" | \"/\") unary } ;\n"
        "unary      = \"-\" unary | primary ;\n"
        "primary    = number | feature | \"(\" expr \")\"\n"
        "           | \"min\" \"(\" expr \",\" expr \")\" | \"max\" \"(\" expr \",\" expr \")\"\n"
        "           | \"if\" \"(\" expr \",\" expr \",\" expr \")\" | \"rand\" \"(\" \")\" ;\n"
        "\n"
        "rho is clamped into [0.05, 0.5]. The score is evaluated per removable\n"
        "element; the ceil(rho * n) highest-scoring elements are removed.\n"
        "Comparisons yield 1 or 0, division by zero yields 0, rand() is a\n"
        "uniform draw in [0, 1).\n";
}

std::string build_prompt(const PromptInputs& inputs) {
    int expected = strategy_arity(inputs.strategy, -1);
    if (inputs.strategy == Strategy::E1 || inputs.strategy == Strategy::E2) {
        if (inputs.parents.empty()) throw ArityError("exploration prompts need parents");
    } else if (static_cast<int>(inputs.parents.size()) != expected) {
        throw ArityError(std::string(strategy_name(inputs.strategy)) + " takes " +
                         std::to_string(expected) + " parents, got " +
                         std::to_string(inputs.parents.size()));
    }
    for (const auto& parent : inputs.parents) {
        if (parent.size() != inputs.active.size()) {
            throw ArityError("each parent needs one component per active subproblem");
        }
    }

    std::string out;
    out += "# Destroy-heuristic design task\n\n";
    out += inputs.problem_summary;
    out += "\n\nHeuristics are scoring programs in the following grammar:\n\n";
    out += dsl_grammar_text();
    out += "\nActive subproblem";
    out += inputs.active.size() > 1 ? "s" : "";
    out += ":\n";
    for (std::size_t i = 0; i < inputs.active.size(); ++i) {
        out += "- " + inputs.active_names[i] + " (features: ";
        for (std::size_t f = 0; f < inputs.schemas[i].size(); ++f) {
            if (f) out += ", ";
            out += inputs.schemas[i][f];
        }
        out += ")\n";
    }
    out += "\n";
    out += strategy_instruction(inputs.strategy);
    out += "\n";

    for (std::size_t p = 0; p < inputs.parents.size(); ++p) {
        out += "\n### parent " + std::to_string(p + 1) + "\n";
        for (std::size_t i = 0; i < inputs.active.size(); ++i) {
            const HeuristicComponent& comp = inputs.parents[p][i];
            if (inputs.active.size() > 1) out += "component " + inputs.active_names[i] + ":\n";
            out += "thought: " + comp.thought + "\n```\n" + comp.code + "\n```\n";
        }
    }

    out += "\nRespond with exactly one section per active subproblem, in order. Each "
           "section is one line `thought: <one-line idea>` followed by a fenced code "
           "block containing a single program in the grammar above.\n";

    nlohmann::json meta;
    meta["strategy"] = strategy_name(inputs.strategy);
    meta["seed"] = inputs.seed;
    meta["components"] = inputs.active.size();
    nlohmann::json schemas = nlohmann::json::array();
    for (const auto& schema : inputs.schemas) schemas.push_back(schema);
    meta["schemas"] = schemas;
    nlohmann::json parents = nlohmann::json::array();
    nlohmann::json digests = nlohmann::json::array();
    for (const auto& parent : inputs.parents) {
        nlohmann::json codes = nlohmann::json::array();
        for (const auto& comp : parent) codes.push_back(comp.code);
        parents.push_back(codes);
        std::string joined;
        for (const auto& comp : parent) joined += comp.code + "\n";
        digests.push_back(hash_string(joined));
    }
    meta["parents"] = parents;
    meta["parent_digests"] = digests;

    out += "\n";
    out += kMetaBegin;
    out += "\n";
    out += meta.dump();
    out += "\n";
    out += kMetaEnd;
    out += "\n";
    return out;
}

}  // namespace tuplevo::evo
