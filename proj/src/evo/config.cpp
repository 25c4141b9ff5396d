#include "tuplevo/evo/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"
#include "tuplevo/core/errors.hpp"

namespace tuplevo::evo {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::I1: return "I1";
        case Strategy::E1: return "E1";
        case Strategy::E2: return "E2";
        case Strategy::M1: return "M1";
        case Strategy::M2: return "M2";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "I1") return Strategy::I1;
    if (name == "E1") return Strategy::E1;
    if (name == "E2") return Strategy::E2;
    if (name == "M1") return Strategy::M1;
    if (name == "M2") return Strategy::M2;
    throw ConfigError("unknown prompt strategy '" + name + "'");
}

int strategy_arity(Strategy s, int parents) {
    switch (s) {
        case Strategy::I1: return 0;
        case Strategy::E1:
        case Strategy::E2: return parents;
        case Strategy::M1:
        case Strategy::M2: return 1;
    }
    return 0;
}

const char* coordination_name(Coordination c) {
    switch (c) {
        case Coordination::Sequential: return "sequential";
        case Coordination::Iterative: return "iterative";
        case Coordination::Integrated: return "integrated";
    }
    return "?";
}

Coordination coordination_from_name(const std::string& name) {
    if (name == "sequential") return Coordination::Sequential;
    if (name == "iterative") return Coordination::Iterative;
    if (name == "integrated") return Coordination::Integrated;
    throw ConfigError("unknown coordination mode '" + name + "'");
}

void EvolutionConfig::validate(int subproblem_count, std::size_t instance_count) const {
    if (subproblem_count < 1) throw ConfigError("problem declares no subproblems");
    if (population_size < 1) throw ConfigError("population_size must be >= 1");
    if (generations < 0) throw ConfigError("generations must be >= 0");
    if (rounds < 1) throw ConfigError("rounds must be >= 1");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (parents < 1) throw ConfigError("parents must be >= 1");
    if (coordination == Coordination::Sequential && rounds != 1) {
        throw ConfigError("sequential coordination is a single control round");
    }
    if (strategies.empty()) throw ConfigError("at least one prompt strategy is required");
    // parents must always be samplable from the smallest population we keep
    int floor = std::min(population_size, 2 * repetitions);
    if (parents > floor) {
        throw ConfigError("parents must not exceed min(population_size, 2*repetitions)");
    }
    if (instance_count == 0) throw ConfigError("at least one instance is required");
    if (fitness_mode == FitnessMode::RelativeGap) {
        if (references.size() != instance_count) {
            throw ConfigError("relative-gap fitness needs one reference per instance");
        }
        for (double r : references) {
            if (r <= 0) throw ConfigError("reference objectives must be positive");
        }
    }
    if (parallel_instances < 1) throw ConfigError("parallel_instances must be >= 1");
}

long long EvolutionConfig::expected_prompts(int subproblem_count) const {
    long long init = 2LL * repetitions * subproblem_count;
    long long per_gen = static_cast<long long>(strategies.size()) * repetitions;
    long long gens = 0;
    switch (coordination) {
        case Coordination::Sequential:
            gens = static_cast<long long>(generations) * subproblem_count;
            break;
        case Coordination::Iterative:
            gens = static_cast<long long>(rounds) * subproblem_count * generations;
            break;
        case Coordination::Integrated:
            gens = generations;
            break;
    }
    return init + gens * per_gen;
}

namespace {

lns::LnsConfig parse_lns(const nlohmann::json& doc) {
    lns::LnsConfig cfg;
    cfg.global_time_limit_s = doc.value("global_time_limit_s", 60.0);
    if (doc.contains("max_iterations")) {
        if (doc["max_iterations"].is_array()) {
            for (const auto& v : doc["max_iterations"]) cfg.max_iterations.push_back(v.get<int>());
        } else {
            cfg.max_iterations = {doc["max_iterations"].get<int>()};
        }
    }
    if (doc.contains("time_limit_s")) {
        if (doc["time_limit_s"].is_array()) {
            for (const auto& v : doc["time_limit_s"]) cfg.time_limit_s.push_back(v.get<double>());
        } else {
            cfg.time_limit_s = {doc["time_limit_s"].get<double>()};
        }
    } else {
        cfg.time_limit_s = {10.0};
    }
    std::string clock = doc.value("clock", std::string("wall"));
    if (clock == "wall") {
        cfg.clock = lns::ClockMode::Wall;
    } else if (clock == "logical") {
        cfg.clock = lns::ClockMode::Logical;
    } else {
        throw ConfigError("clock must be 'wall' or 'logical'");
    }
    cfg.logical_cycles = doc.value("cycles", 1);
    cfg.step_budget = doc.value("step_budget", 10000);
    if (cfg.max_iterations.empty()) throw ConfigError("lns.max_iterations is required");
    return cfg;
}

}  // namespace

RunSpec parse_run_spec(const std::string& json_text, const std::string& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunSpec spec;
    try {
        spec.problem = doc.at("problem").get<std::string>();
        for (const auto& p : doc.at("instances")) {
            std::filesystem::path path = p.get<std::string>();
            if (path.is_relative() && !base_dir.empty()) {
                path = std::filesystem::path(base_dir) / path;
            }
            spec.instance_paths.push_back(path.string());
        }
        spec.legacy_import = doc.value("legacy_import", false);
        spec.seed = doc.value("seed", 1ULL);

        EvolutionConfig& evo = spec.evo;
        evo.coordination =
            coordination_from_name(doc.value("coordination", std::string("sequential")));
        evo.population_size = doc.value("population_size", 20);
        evo.generations = doc.value("generations", 20);
        evo.rounds = doc.value("rounds", evo.coordination == Coordination::Iterative ? 4 : 1);
        evo.repetitions = doc.value("repetitions", 20);
        evo.parents = doc.value("parents", 5);
        if (doc.contains("strategies")) {
            evo.strategies.clear();
            for (const auto& s : doc["strategies"]) {
                evo.strategies.push_back(strategy_from_name(s.get<std::string>()));
            }
        }
        if (doc.contains("fitness")) {
            std::string f = doc["fitness"].get<std::string>();
            if (f == "relative_gap") {
                evo.fitness_mode = FitnessMode::RelativeGap;
            } else if (f == "average_objective") {
                evo.fitness_mode = FitnessMode::AverageObjective;
            } else {
                throw ConfigError("fitness must be 'relative_gap' or 'average_objective'");
            }
        } else {
            evo.fitness_mode = spec.problem == "irp" ? FitnessMode::RelativeGap
                                                     : FitnessMode::AverageObjective;
        }
        if (doc.contains("references")) {
            for (const auto& r : doc["references"]) evo.references.push_back(r.get<double>());
        }
        evo.lns = parse_lns(doc.at("lns"));
        evo.parallel_instances = doc.value("parallel_instances", 1);

        if (doc.contains("provider")) {
            const auto& p = doc["provider"];
            spec.provider.type = p.value("type", std::string("mock"));
            spec.provider.base_url = p.value("base_url", std::string());
            spec.provider.path = p.value("path", std::string("/v1/chat/completions"));
            spec.provider.model = p.value("model", std::string());
            spec.provider.temperature = p.value("temperature", 0.7);
            spec.provider.timeout_s = p.value("timeout_s", 60.0);
            spec.provider.retries = p.value("retries", 3);
            spec.provider.api_key_env = p.value("api_key_env", std::string("TUPLEVO_API_KEY"));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    return spec;
}

RunSpec load_run_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_spec(buf.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace tuplevo::evo
