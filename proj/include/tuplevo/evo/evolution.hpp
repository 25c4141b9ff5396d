#ifndef TUPLEVO_EVO_EVOLUTION_HPP
#define TUPLEVO_EVO_EVOLUTION_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tuplevo/core/problem.hpp"
#include "tuplevo/core/tuple.hpp"
#include "tuplevo/evo/config.hpp"
#include "tuplevo/evo/phase_schedule.hpp"
#include "tuplevo/provider/provider.hpp"

namespace tuplevo::evo {

inline constexpr double kInvalidWorst = std::numeric_limits<double>::infinity();

struct Individual {
    HeuristicTuple tuple;
    double fitness = kInvalidWorst;  // +inf encodes invalid-worst
    std::uint64_t creation = 0;
    std::string strategy;
    std::vector<std::uint64_t> parent_digests;
};

// lower fitness first, earlier creation breaks ties
bool better(const Individual& a, const Individual& b);

struct Population {
    std::vector<Individual> members;

    void insert(Individual ind) { members.push_back(std::move(ind)); }
    void truncate(std::size_t capacity);
    const Individual& best() const;
    double best_fitness() const;
    double mean_fitness() const;  // over finite-fitness members
};

struct BudgetLedger {
    // (phase kind, strategy) -> prompt count; phase kind is "init" or "gen"
    std::map<std::pair<std::string, std::string>, long long> counts;
    long long total = 0;

    void count(const std::string& phase_kind, const std::string& strategy) {
        ++counts[{phase_kind, strategy}];
        ++total;
    }
};

struct GenerationRecord {
    int phase_index = 0;  // 1-based position in the generation schedule
    int round = 1;
    int subproblem = 0;  // 0 = integrated
    int generation = 1;
    double best_fitness = kInvalidWorst;
    double mean_fitness = kInvalidWorst;
};

struct CandidateRecord {
    long long prompt_index = 0;
    int round = 1;
    int subproblem = 0;
    int generation = 0;  // 0 = initialization
    std::string strategy;
    std::vector<std::uint64_t> parent_digests;
    std::uint64_t response_digest = 0;
    double fitness = kInvalidWorst;
    bool valid = false;
    std::uint64_t creation = 0;
};

struct RunResult {
    HeuristicTuple best_tuple;
    double best_fitness = kInvalidWorst;
    std::vector<GenerationRecord> trace;
    std::vector<CandidateRecord> candidates;
    BudgetLedger ledger;
};

using InstanceSet = std::vector<std::shared_ptr<const CoupledInstance>>;

// Fitness of a full tuple: invalid-worst unless every component parses,
// otherwise the configured aggregate of the per-instance alternating-LNS
// objectives. Pure in (tuple, instances, cfg, seed) under the logical clock.
double evaluate(const HeuristicTuple& tuple, const InstanceSet& instances,
                const EvolutionConfig& cfg, std::uint64_t seed);

// One generation: every strategy applied `repetitions` times against the
// live population, then elitist truncation. Exposed for tests; run() drives
// it internally.
class EvolutionDriver {
  public:
    EvolutionDriver(const ProblemDescriptor& descriptor, InstanceSet instances,
                    EvolutionConfig cfg, provider::Provider& provider,
                    std::uint64_t master_seed);

    RunResult run();

    // visible for white-box tests
    void step_generation(Population& pop, const PhaseRef& phase);
    void initialize_population(Population& pop, int round, int subproblem);
    Population& population(int subproblem) { return populations_[subproblem]; }
    const std::vector<HeuristicComponent>& fixed_components() const { return fixed_; }

  private:
    Individual spawn_candidate(Strategy strategy, const std::vector<const Individual*>& parents,
                               const PhaseRef& phase, int repetition,
                               const std::string& phase_kind);
    std::vector<int> active_subproblems(int subproblem) const;
    void note_candidate(const Individual& ind, const PhaseRef& phase,
                        const std::string& strategy, std::uint64_t response_digest,
                        const std::string& phase_kind);
    std::uint64_t phase_seed(const PhaseRef& phase, int strategy_index, int repetition,
                             std::uint64_t salt) const;

    ProblemDescriptor descriptor_;
    InstanceSet instances_;
    EvolutionConfig cfg_;
    provider::Provider& provider_;
    std::uint64_t master_seed_;

    std::vector<HeuristicComponent> fixed_;  // current best component per subproblem
    std::map<int, Population> populations_;  // keyed by subproblem (0 = integrated)
    std::uint64_t next_creation_ = 1;
    RunResult result_;
    bool have_best_ = false;
};

RunResult run(const ProblemDescriptor& descriptor, const InstanceSet& instances,
              const EvolutionConfig& cfg, provider::Provider& provider,
              std::uint64_t master_seed);

}  // namespace tuplevo::evo

#endif
