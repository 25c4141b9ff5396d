#include "tuplevo/evo/phase_schedule.hpp"

namespace tuplevo::evo {

std::vector<PhaseRef> phase_schedule(const EvolutionConfig& cfg, int subproblem_count) {
    std::vector<PhaseRef> phases;
    switch (cfg.coordination) {
        case Coordination::Sequential:
        case Coordination::Iterative: {
            int rounds = cfg.coordination == Coordination::Sequential ? 1 : cfg.rounds;
            for (int round = 1; round <= rounds; ++round) {
                for (int k = 1; k <= subproblem_count; ++k) {
                    for (int g = 1; g <= cfg.generations; ++g) {
                        phases.push_back({round, k, g});
                    }
                }
            }
            break;
        }
        case Coordination::Integrated: {
            for (int g = 1; g <= cfg.generations; ++g) {
                phases.push_back({1, 0, g});
            }
            break;
        }
    }
    return phases;
}

}  // namespace tuplevo::evo
