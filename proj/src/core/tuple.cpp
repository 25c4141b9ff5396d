#include "tuplevo/core/tuple.hpp"

#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/dsl/parser.hpp"

namespace tuplevo {

HeuristicComponent make_component(std::string code, std::string thought) {
    HeuristicComponent c;
    c.code = std::move(code);
    // thought is kept to a single line so the tuple document stays parseable
    for (char& ch : thought) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    c.thought = std::move(thought);
    try {
        c.program = dsl::parse(c.code);
        c.valid = true;
    } catch (const Error& err) {
        c.valid = false;
        c.parse_error = err.what();
    }
    return c;
}

HeuristicTuple make_tuple(const std::vector<std::pair<std::string, std::string>>& parts,
                          std::size_t subproblem_count) {
    if (parts.size() != subproblem_count) {
        throw LengthMismatch("expected " + std::to_string(subproblem_count) +
                             " components, got " + std::to_string(parts.size()));
    }
    HeuristicTuple tuple;
    tuple.components.reserve(parts.size());
    for (const auto& [code, thought] : parts) {
        tuple.components.push_back(make_component(code, thought));
    }
    return tuple;
}

HeuristicTuple replace_component(const HeuristicTuple& h, SubproblemId k,
                                 HeuristicComponent component) {
    if (k.index < 1 || static_cast<std::size_t>(k.index) > h.components.size()) {
        throw IndexOutOfRange("subproblem index " + std::to_string(k.index) +
                              " outside 1.." + std::to_string(h.components.size()));
    }
    HeuristicTuple out = h;
    out.components[static_cast<std::size_t>(k.index - 1)] = std::move(component);
    return out;
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) {
        throw LengthMismatch("cannot sample " + std::to_string(k) + " of " +
                             std::to_string(n));
    }
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + uniform_index(n - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

}  // namespace tuplevo
