#include "tuplevo/evo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/dsl/parser.hpp"
#include "tuplevo/evo/fitness.hpp"
#include "tuplevo/evo/prompt.hpp"
#include "tuplevo/lns/engine.hpp"

namespace tuplevo::evo {

bool better(const Individual& a, const Individual& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return a.creation < b.creation;
}

void Population::truncate(std::size_t capacity) {
    std::stable_sort(members.begin(), members.end(),
                     [](const Individual& a, const Individual& b) { return better(a, b); });
    if (members.size() > capacity) members.resize(capacity);
}

const Individual& Population::best() const {
    if (members.empty()) throw EmptyInput("population is empty");
    const Individual* best = &members.front();
    for (const Individual& ind : members) {
        if (better(ind, *best)) best = &ind;
    }
    return *best;
}

double Population::best_fitness() const { return best().fitness; }

double Population::mean_fitness() const {
    double sum = 0;
    int n = 0;
    for (const Individual& ind : members) {
        if (std::isfinite(ind.fitness)) {
            sum += ind.fitness;
            ++n;
        }
    }
    return n == 0 ? kInvalidWorst : sum / n;
}

double evaluate(const HeuristicTuple& tuple, const InstanceSet& instances,
                const EvolutionConfig& cfg, std::uint64_t seed) {
    if (!tuple.all_valid()) return kInvalidWorst;
    std::vector<dsl::Program> programs;
    programs.reserve(tuple.components.size());
    for (const auto& comp : tuple.components) programs.push_back(*comp.program);

    auto run_one = [&](std::size_t i) {
        auto result = lns::run_alternating(*instances[i], programs, cfg.lns,
                                           mix_seed(seed, static_cast<std::uint64_t>(i)));
        return result.best.objective;
    };

    std::vector<double> objectives(instances.size());
    if (cfg.parallel_instances > 1 && instances.size() > 1) {
        std::vector<std::future<double>> futures;
        futures.reserve(instances.size());
        for (std::size_t i = 0; i < instances.size(); ++i) {
            futures.push_back(std::async(std::launch::async, run_one, i));
        }
        for (std::size_t i = 0; i < instances.size(); ++i) objectives[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < instances.size(); ++i) objectives[i] = run_one(i);
    }

    return cfg.fitness_mode == FitnessMode::RelativeGap
               ? fitness_rel_gap(objectives, cfg.references)
               : fitness_avg_obj(objectives);
}

EvolutionDriver::EvolutionDriver(const ProblemDescriptor& descriptor, InstanceSet instances,
                                 EvolutionConfig cfg, provider::Provider& provider,
                                 std::uint64_t master_seed)
    : descriptor_(descriptor),
      instances_(std::move(instances)),
      cfg_(std::move(cfg)),
      provider_(provider),
      master_seed_(master_seed) {
    cfg_.validate(descriptor_.subproblem_count, instances_.size());
    if (static_cast<int>(descriptor_.seed_components.size()) != descriptor_.subproblem_count) {
        throw ConfigError("problem descriptor needs one seed component per subproblem");
    }
    for (const auto& [code, thought] : descriptor_.seed_components) {
        fixed_.push_back(make_component(code, thought));
    }
}

std::uint64_t EvolutionDriver::phase_seed(const PhaseRef& phase, int strategy_index,
                                          int repetition, std::uint64_t salt) const {
    std::uint64_t s = master_seed_;
    s = mix_seed(s, static_cast<std::uint64_t>(phase.round));
    s = mix_seed(s, static_cast<std::uint64_t>(phase.subproblem));
    s = mix_seed(s, static_cast<std::uint64_t>(phase.generation));
    s = mix_seed(s, static_cast<std::uint64_t>(strategy_index));
    s = mix_seed(s, static_cast<std::uint64_t>(repetition));
    return mix_seed(s, salt);
}

std::vector<int> EvolutionDriver::active_subproblems(int subproblem) const {
    if (subproblem != 0) return {subproblem};
    std::vector<int> all;
    for (int k = 1; k <= descriptor_.subproblem_count; ++k) all.push_back(k);
    return all;
}

void EvolutionDriver::note_candidate(const Individual& ind, const PhaseRef& phase,
                                     const std::string& strategy,
                                     std::uint64_t response_digest,
                                     const std::string& phase_kind) {
    CandidateRecord record;
    record.prompt_index = result_.ledger.total;
    record.round = phase.round;
    record.subproblem = phase.subproblem;
    record.generation = phase_kind == "init" ? 0 : phase.generation;
    record.strategy = strategy;
    record.parent_digests = ind.parent_digests;
    record.response_digest = response_digest;
    record.fitness = ind.fitness;
    record.valid = ind.tuple.all_valid();
    record.creation = ind.creation;
    result_.candidates.push_back(record);

    if (!have_best_ || ind.fitness < result_.best_fitness ||
        (ind.fitness == result_.best_fitness && ind.creation < result_.best_tuple.creation)) {
        result_.best_tuple = ind.tuple;
        result_.best_fitness = ind.fitness;
        have_best_ = true;
    }
}

Individual EvolutionDriver::spawn_candidate(Strategy strategy,
                                            const std::vector<const Individual*>& parents,
                                            const PhaseRef& phase, int repetition,
                                            const std::string& phase_kind) {
    const std::vector<int> active = active_subproblems(phase.subproblem);

    PromptInputs inputs;
    inputs.strategy = strategy;
    inputs.problem_name = descriptor_.name;
    inputs.problem_summary = "Problem: " + descriptor_.name +
                             ". Subproblems are solved by an alternating large neighborhood "
                             "search; each destroy heuristic selects which elements of its "
                             "subproblem's current solution are removed before the "
                             "deterministic repair rebuilds it.";
    inputs.active = active;
    const CoupledInstance& probe = *instances_.front();
    for (int k : active) {
        inputs.active_names.push_back(probe.subproblem_name(k));
        inputs.schemas.push_back(probe.feature_schema(k));
    }
    for (const Individual* parent : parents) {
        std::vector<HeuristicComponent> comps;
        for (int k : active) {
            comps.push_back(parent->tuple.components[static_cast<std::size_t>(k - 1)]);
        }
        inputs.parents.push_back(std::move(comps));
    }
    int strategy_index = static_cast<int>(std::find(cfg_.strategies.begin(),
                                                    cfg_.strategies.end(), strategy) -
                                          cfg_.strategies.begin());
    inputs.seed = phase_seed(phase, strategy_index, repetition, 0x9e37);

    provider::ProviderRequest request;
    request.prompt = build_prompt(inputs);
    request.temperature = 0.7;
    request.seed = inputs.seed;

    Individual ind;
    ind.strategy = strategy_name(strategy);
    for (const auto& parent : inputs.parents) {
        std::string joined;
        for (const auto& comp : parent) joined += comp.code + "\n";
        ind.parent_digests.push_back(hash_string(joined));
    }

    std::uint64_t response_digest = 0;
    std::vector<provider::ResponseComponent> parsed;
    try {
        std::string raw = provider_.generate(request);
        response_digest = hash_string(raw);
        parsed = provider::parse_response(raw, static_cast<int>(active.size()));
    } catch (const Error&) {
        parsed.clear();  // provider failure: candidate stays invalid-worst
    }

    // assemble the full tuple: evolved components in the active slots, the
    // current best (or seed) components everywhere else
    std::vector<std::pair<std::string, std::string>> parts;
    for (int k = 1; k <= descriptor_.subproblem_count; ++k) {
        auto pos = std::find(active.begin(), active.end(), k);
        if (pos == active.end()) {
            const auto& comp = fixed_[static_cast<std::size_t>(k - 1)];
            parts.emplace_back(comp.code, comp.thought);
        } else {
            auto idx = static_cast<std::size_t>(pos - active.begin());
            if (idx < parsed.size()) {
                parts.emplace_back(parsed[idx].code, parsed[idx].thought);
            } else {
                parts.emplace_back("", "missing component");  // flags the tuple invalid
            }
        }
    }
    ind.tuple = tuplevo::make_tuple(parts, static_cast<std::size_t>(descriptor_.subproblem_count));
    ind.tuple.creation = next_creation_;
    ind.creation = next_creation_++;
    ind.fitness = evaluate(ind.tuple, instances_, cfg_,
                           phase_seed(phase, strategy_index, repetition, 0xe7a1));

    result_.ledger.count(phase_kind, strategy_name(strategy));
    note_candidate(ind, phase, strategy_name(strategy), response_digest, phase_kind);
    return ind;
}

void EvolutionDriver::initialize_population(Population& pop, int round, int subproblem) {
    PhaseRef phase{round, subproblem, 0};
    const int init_prompts = 2 * cfg_.repetitions *
                             (subproblem == 0 ? descriptor_.subproblem_count : 1);
    for (int r = 1; r <= init_prompts; ++r) {
        pop.insert(spawn_candidate(Strategy::I1, {}, phase, r, "init"));
    }
    pop.truncate(static_cast<std::size_t>(cfg_.population_size));
}

void EvolutionDriver::step_generation(Population& pop, const PhaseRef& phase) {
    if (pop.members.empty()) {
        throw InvariantViolation("generation stepped on an empty population");
    }
    for (std::size_t s = 0; s < cfg_.strategies.size(); ++s) {
        Strategy strategy = cfg_.strategies[s];
        for (int r = 1; r <= cfg_.repetitions; ++r) {
            int arity = strategy_arity(strategy, cfg_.parents);
            Rng rng(phase_seed(phase, static_cast<int>(s), r, 0x5a3d));
            auto count = static_cast<std::size_t>(arity);
            count = std::min(count, pop.members.size());
            std::vector<const Individual*> parents;
            for (std::size_t idx : rng.sample_without_replacement(pop.members.size(), count)) {
                parents.push_back(&pop.members[idx]);
            }
            pop.insert(spawn_candidate(strategy, parents, phase, r, "gen"));
        }
    }
    pop.truncate(static_cast<std::size_t>(cfg_.population_size));
}

RunResult EvolutionDriver::run() {
    const int K = descriptor_.subproblem_count;
    std::vector<PhaseRef> schedule = phase_schedule(cfg_, K);
    int phase_index = 0;

    auto record_generation = [&](const Population& pop, const PhaseRef& phase) {
        GenerationRecord rec;
        rec.phase_index = ++phase_index;
        rec.round = phase.round;
        rec.subproblem = phase.subproblem;
        rec.generation = phase.generation;
        rec.best_fitness = pop.best_fitness();
        rec.mean_fitness = pop.mean_fitness();
        result_.trace.push_back(rec);
    };

    if (cfg_.coordination == Coordination::Integrated) {
        Population& pop = populations_[0];
        initialize_population(pop, 1, 0);
        for (int g = 1; g <= cfg_.generations; ++g) {
            PhaseRef phase{1, 0, g};
            step_generation(pop, phase);
            record_generation(pop, phase);
        }
    } else {
        const int rounds = cfg_.coordination == Coordination::Sequential ? 1 : cfg_.rounds;
        for (int round = 1; round <= rounds; ++round) {
            for (int k = 1; k <= K; ++k) {
                Population& pop = populations_[k];
                if (round == 1) {
                    initialize_population(pop, round, k);
                } else {
                    // the previous round's retained component heuristics are
                    // re-evaluated against the refreshed fixed complements
                    for (std::size_t i = 0; i < pop.members.size(); ++i) {
                        Individual& ind = pop.members[i];
                        std::vector<std::pair<std::string, std::string>> parts;
                        for (int j = 1; j <= K; ++j) {
                            const HeuristicComponent& comp =
                                j == k ? ind.tuple.components[static_cast<std::size_t>(j - 1)]
                                       : fixed_[static_cast<std::size_t>(j - 1)];
                            parts.emplace_back(comp.code, comp.thought);
                        }
                        HeuristicTuple refreshed =
                            tuplevo::make_tuple(parts, static_cast<std::size_t>(K));
                        refreshed.creation = ind.creation;
                        ind.tuple = std::move(refreshed);
                        ind.fitness = evaluate(
                            ind.tuple, instances_, cfg_,
                            phase_seed({round, k, 0}, -1, static_cast<int>(i), 0x4e7d));
                        if (!have_best_ || ind.fitness < result_.best_fitness) {
                            result_.best_tuple = ind.tuple;
                            result_.best_fitness = ind.fitness;
                            have_best_ = true;
                        }
                    }
                    pop.truncate(static_cast<std::size_t>(cfg_.population_size));
                }
                for (int g = 1; g <= cfg_.generations; ++g) {
                    PhaseRef phase{round, k, g};
                    step_generation(pop, phase);
                    record_generation(pop, phase);
                }
                // fix this subproblem's best-so-far for later phases
                fixed_[static_cast<std::size_t>(k - 1)] =
                    pop.best().tuple.components[static_cast<std::size_t>(k - 1)];
            }
        }
    }

    if (!have_best_) {
        // degenerate zero-prompt configuration: fall back to the seed tuple
        std::vector<std::pair<std::string, std::string>> parts;
        for (const auto& comp : fixed_) parts.emplace_back(comp.code, comp.thought);
        result_.best_tuple = tuplevo::make_tuple(parts, fixed_.size());
        result_.best_fitness = evaluate(result_.best_tuple, instances_, cfg_,
                                        mix_seed(master_seed_, 0x5eed));
    }
    (void)schedule;
    return result_;
}

RunResult run(const ProblemDescriptor& descriptor, const InstanceSet& instances,
              const EvolutionConfig& cfg, provider::Provider& provider,
              std::uint64_t master_seed) {
    EvolutionDriver driver(descriptor, instances, cfg, provider, master_seed);
    return driver.run();
}

}  // namespace tuplevo::evo
