#ifndef TUPLEVO_LNS_ENGINE_HPP
#define TUPLEVO_LNS_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tuplevo/core/problem.hpp"
#include "tuplevo/dsl/ast.hpp"

namespace tuplevo::lns {

enum class ClockMode { Wall, Logical };

struct LnsConfig {
    double global_time_limit_s = 60.0;
    std::vector<int> max_iterations;      // per subproblem, 1-based order
    std::vector<double> time_limit_s;     // per subproblem
    ClockMode clock = ClockMode::Wall;
    int logical_cycles = 1;               // full passes over subproblems in logical mode
    int step_budget = 10000;              // DSL step budget per row
    bool validate_accepted = false;       // run the problem's feasibility check on accepts

    int iterations_for(int k) const;      // throws ConfigError when unset
    double time_limit_for(int k) const;
};

struct LnsRecord {
    int subproblem = 0;      // 1-based
    int iteration = 0;       // 1-based within the phase
    double objective = 0;    // candidate objective after repair (incumbent on skips)
    bool accepted = false;
    double elapsed_ms = 0;   // 0 in logical mode
};

struct LnsTrace {
    std::vector<LnsRecord> records;
    std::string to_csv() const;
};

struct LnsStats {
    int iterations = 0;
    int accepted = 0;
    int skipped = 0;             // destroy-program failures
    int validation_failures = 0; // only counted with validate_accepted
};

struct LnsResult {
    CoupledSolution best;
    LnsTrace trace;
    LnsStats stats;
};

// One LNS pass over subproblem k, destroying from the incumbent best and
// accepting strictly improving candidates. Returns the best solution found,
// which seeds the next phase.
LnsResult run_subproblem(const CoupledInstance& instance, const CoupledSolution& start, int k,
                         const dsl::Program& program, const LnsConfig& cfg, std::uint64_t seed);

// Alternating scheme: cycles the subproblem-specific LNS modules round-robin
// from the problem's initial solution, handing the phase best to the next
// phase, until the global limit is reached.
LnsResult run_alternating(const CoupledInstance& instance,
                          const std::vector<dsl::Program>& programs, const LnsConfig& cfg,
                          std::uint64_t seed);

}  // namespace tuplevo::lns

#endif
