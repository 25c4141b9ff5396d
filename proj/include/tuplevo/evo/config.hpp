#ifndef TUPLEVO_EVO_CONFIG_HPP
#define TUPLEVO_EVO_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tuplevo/core/problem.hpp"
#include "tuplevo/lns/engine.hpp"

namespace tuplevo::evo {

enum class Strategy { I1, E1, E2, M1, M2 };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);
int strategy_arity(Strategy s, int parents);  // parents needed for a prompt

enum class Coordination { Sequential, Iterative, Integrated };

const char* coordination_name(Coordination c);
Coordination coordination_from_name(const std::string& name);

struct EvolutionConfig {
    Coordination coordination = Coordination::Sequential;
    int population_size = 20;  // retained per generation
    int generations = 20;      // per subproblem phase (total stream if integrated)
    int rounds = 1;            // control rounds; sequential is rounds == 1
    int repetitions = 20;      // prompts per strategy per generation
    int parents = 5;           // parents for the exploration prompts
    std::vector<Strategy> strategies = {Strategy::E1, Strategy::E2, Strategy::M1,
                                        Strategy::M2};
    FitnessMode fitness_mode = FitnessMode::AverageObjective;
    std::vector<double> references;  // aligned with the instance list
    lns::LnsConfig lns;
    int parallel_instances = 1;

    void validate(int subproblem_count, std::size_t instance_count) const;

    // prompts issued over a full run: one init phase per subproblem (one
    // shared init phase of the same total size in integrated mode) plus
    // |S| * repetitions per generation
    long long expected_prompts(int subproblem_count) const;
};

struct ProviderSettings {
    std::string type = "mock";  // mock | http
    std::string base_url;
    std::string path = "/v1/chat/completions";
    std::string model;
    double temperature = 0.7;
    double timeout_s = 60.0;
    int retries = 3;
    std::string api_key_env = "TUPLEVO_API_KEY";
};

struct RunSpec {
    std::string problem;  // irp | mrmupmp
    std::vector<std::string> instance_paths;
    bool legacy_import = false;  // use the experimental benchmark importers
    EvolutionConfig evo;
    ProviderSettings provider;
    std::uint64_t seed = 1;
};

RunSpec load_run_spec(const std::string& path);
RunSpec parse_run_spec(const std::string& json_text, const std::string& base_dir);

}  // namespace tuplevo::evo

#endif
