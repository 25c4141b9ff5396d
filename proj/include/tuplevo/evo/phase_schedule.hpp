#ifndef TUPLEVO_EVO_PHASE_SCHEDULE_HPP
#define TUPLEVO_EVO_PHASE_SCHEDULE_HPP

#include <vector>

#include "tuplevo/evo/config.hpp"

namespace tuplevo::evo {

// One generation phase. subproblem is 1-based; 0 marks the integrated mode
// where every component evolves at once.
struct PhaseRef {
    int round = 1;
    int subproblem = 0;
    int generation = 1;

    bool operator==(const PhaseRef&) const = default;
};

// Ordered generation phases for a run. Initialization phases are implicit:
// each subproblem is initialized at its first appearance (round 1), and the
// integrated mode runs one initialization phase up front.
std::vector<PhaseRef> phase_schedule(const EvolutionConfig& cfg, int subproblem_count);

}  // namespace tuplevo::evo

#endif
