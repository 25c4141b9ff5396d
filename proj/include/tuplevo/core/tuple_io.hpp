#ifndef TUPLEVO_CORE_TUPLE_IO_HPP
#define TUPLEVO_CORE_TUPLE_IO_HPP

#include <string>
#include <vector>

#include "tuplevo/core/tuple.hpp"

namespace tuplevo {

// Canonical tuple document: one section per subproblem with a `thought:`
// line and a fenced code block. render/parse round-trip bit-exactly for
// documents produced by render_tuple.
std::string render_tuple(const HeuristicTuple& tuple,
                         const std::vector<std::string>& names = {});

HeuristicTuple parse_tuple(const std::string& text);

}  // namespace tuplevo

#endif
