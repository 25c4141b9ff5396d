#ifndef TUPLEVO_CORE_TUPLE_HPP
#define TUPLEVO_CORE_TUPLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tuplevo/dsl/ast.hpp"

namespace tuplevo {

// 1-based subproblem identifier within a coupled problem.
struct SubproblemId {
    int index = 1;
};

// One (code, thought) pair. The code is destroy-program source; if it does
// not parse, the component is flagged invalid and carries the parse error.
struct HeuristicComponent {
    std::string code;
    std::string thought;
    bool valid = false;
    std::string parse_error;
    std::optional<dsl::Program> program;

    bool operator==(const HeuristicComponent& other) const {
        return code == other.code && thought == other.thought;
    }
};

HeuristicComponent make_component(std::string code, std::string thought);

// One component per subproblem; the unit of evolution and evaluation.
// Immutable after construction. The creation counter is bookkeeping for
// deterministic tie-breaking and does not take part in equality.
struct HeuristicTuple {
    std::vector<HeuristicComponent> components;
    std::uint64_t creation = 0;

    bool operator==(const HeuristicTuple& other) const {
        return components == other.components;
    }
    bool all_valid() const {
        for (const auto& c : components)
            if (!c.valid) return false;
        return !components.empty();
    }
};

// Builds a tuple from (code, thought) pairs; throws LengthMismatch when the
// list size differs from the subproblem count.
HeuristicTuple make_tuple(const std::vector<std::pair<std::string, std::string>>& parts,
                          std::size_t subproblem_count);

// Returns a copy of `h` with component k (1-based) replaced; h is untouched.
HeuristicTuple replace_component(const HeuristicTuple& h, SubproblemId k,
                                 HeuristicComponent component);

}  // namespace tuplevo

#endif
