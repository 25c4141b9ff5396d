#include "tuplevo/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nlohmann/json.hpp"
#include "tuplevo/cli/gap_table.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/core/tuple_io.hpp"
#include "tuplevo/evo/phase_schedule.hpp"
#include "tuplevo/evo/problems.hpp"
#include "tuplevo/provider/provider.hpp"

namespace tuplevo::cli {

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out << content;
}

std::string subproblem_label(int k) { return k == 0 ? "all" : std::to_string(k); }

std::string fitness_field(double v) {
    if (!std::isfinite(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

lns::LnsConfig load_lns_config(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("lns config is not valid JSON: ") + e.what());
    }
    // reuse the run-spec parser with a minimal wrapper document
    nlohmann::json wrapper;
    wrapper["problem"] = "irp";
    wrapper["instances"] = nlohmann::json::array();
    wrapper["lns"] = doc;
    auto spec = evo::parse_run_spec(wrapper.dump(), "");
    return spec.evo.lns;
}

}  // namespace

std::string trace_to_csv(const evo::RunResult& result) {
    std::ostringstream out;
    out << "phase,round,subproblem,generation,best_fitness,mean_fitness\n";
    for (const auto& rec : result.trace) {
        out << rec.phase_index << "," << rec.round << "," << subproblem_label(rec.subproblem)
            << "," << rec.generation << "," << fitness_field(rec.best_fitness) << ","
            << fitness_field(rec.mean_fitness) << "\n";
    }
    return out.str();
}

std::string candidates_to_jsonl(const evo::RunResult& result) {
    std::ostringstream out;
    for (const auto& c : result.candidates) {
        nlohmann::json doc;
        doc["prompt_index"] = c.prompt_index;
        doc["round"] = c.round;
        doc["subproblem"] = c.subproblem == 0 ? nlohmann::json("all")
                                              : nlohmann::json(c.subproblem);
        doc["generation"] = c.generation;
        doc["strategy"] = c.strategy;
        doc["parents"] = c.parent_digests;
        doc["response_digest"] = c.response_digest;
        doc["fitness"] =
            std::isfinite(c.fitness) ? nlohmann::json(c.fitness) : nlohmann::json(nullptr);
        doc["valid"] = c.valid;
        doc["creation"] = c.creation;
        out << doc.dump() << "\n";
    }
    return out.str();
}

EvolveOutputs run_evolve(const std::string& config_path, std::optional<std::uint64_t> seed,
                         const std::string& out_dir) {
    evo::RunSpec spec = evo::load_run_spec(config_path);
    if (seed) spec.seed = *seed;
    auto descriptor = evo::descriptor_for(spec.problem);
    auto instances = evo::load_instances(spec);
    auto provider = provider::make_provider(spec.provider);

    evo::RunResult result = evo::run(descriptor, instances, spec.evo, *provider, spec.seed);

    fs::create_directories(out_dir);
    EvolveOutputs outputs;
    outputs.trace_csv = (fs::path(out_dir) / "trace.csv").string();
    outputs.candidates_jsonl = (fs::path(out_dir) / "candidates.jsonl").string();
    outputs.best_tuple = (fs::path(out_dir) / "best_tuple.txt").string();
    spill(outputs.trace_csv, trace_to_csv(result));
    spill(outputs.candidates_jsonl, candidates_to_jsonl(result));
    spill(outputs.best_tuple, render_tuple(result.best_tuple, descriptor.subproblem_names));

    std::cout << "run complete: " << result.ledger.total << " prompts, best fitness "
              << fitness_field(result.best_fitness) << "\n";
    std::cout << "trace: " << outputs.trace_csv << "\n";
    std::cout << "candidates: " << outputs.candidates_jsonl << "\n";
    std::cout << "best tuple: " << outputs.best_tuple << "\n";
    return outputs;
}

void run_evaluate(const std::string& problem, const std::string& tuple_path,
                  const std::vector<std::string>& instance_args, const std::string& lns_path,
                  const std::string& fitness, const std::vector<double>& references,
                  bool legacy, std::uint64_t seed) {
    auto descriptor = evo::descriptor_for(problem);
    HeuristicTuple tuple = parse_tuple(slurp(tuple_path));
    if (static_cast<int>(tuple.components.size()) != descriptor.subproblem_count) {
        throw LengthMismatch("tuple has " + std::to_string(tuple.components.size()) +
                             " components, problem needs " +
                             std::to_string(descriptor.subproblem_count));
    }

    std::vector<std::string> paths;
    for (const auto& arg : instance_args) {
        if (fs::is_directory(arg)) {
            std::vector<std::string> inside;
            for (const auto& entry : fs::directory_iterator(arg)) {
                if (entry.is_regular_file()) inside.push_back(entry.path().string());
            }
            std::sort(inside.begin(), inside.end());
            paths.insert(paths.end(), inside.begin(), inside.end());
        } else {
            paths.push_back(arg);
        }
    }
    if (paths.empty()) throw ConfigError("no instance files found");

    evo::InstanceSet instances;
    for (const auto& path : paths) {
        instances.push_back(evo::load_instance(problem, path, legacy));
    }

    evo::EvolutionConfig cfg;
    cfg.lns = load_lns_config(lns_path);
    cfg.fitness_mode = fitness == "relative_gap" ? FitnessMode::RelativeGap
                       : fitness == "average_objective"
                           ? FitnessMode::AverageObjective
                           : descriptor.fitness_mode;
    cfg.references = references;
    if (cfg.fitness_mode == FitnessMode::RelativeGap &&
        cfg.references.size() != instances.size()) {
        throw ConfigError("relative-gap evaluation needs --ref once per instance");
    }

    std::vector<double> objectives;
    std::vector<dsl::Program> programs;
    if (!tuple.all_valid()) {
        std::cout << "tuple invalid: fitness inf\n";
        for (std::size_t k = 0; k < tuple.components.size(); ++k) {
            if (!tuple.components[k].valid) {
                std::cout << "  component " << (k + 1) << ": "
                          << tuple.components[k].parse_error << "\n";
            }
        }
        throw InvariantViolation("tuple does not parse");
    }
    for (const auto& comp : tuple.components) programs.push_back(*comp.program);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        auto run = lns::run_alternating(*instances[i], programs, cfg.lns,
                                        mix_seed(seed, static_cast<std::uint64_t>(i)));
        objectives.push_back(run.best.objective);
        std::cout << instances[i]->label() << ": objective " << fitness_field(run.best.objective)
                  << (run.best.feasible ? "" : " (infeasible)") << "\n";
    }
    double fit = evo::evaluate(tuple, instances, cfg, seed);
    std::cout << "fitness: " << fitness_field(fit) << "\n";
}

void run_schedule(const std::string& config_path) {
    evo::RunSpec spec = evo::load_run_spec(config_path);
    auto descriptor = evo::descriptor_for(spec.problem);
    auto phases = evo::phase_schedule(spec.evo, descriptor.subproblem_count);
    std::cout << "coordination: " << evo::coordination_name(spec.evo.coordination) << "\n";
    for (const auto& phase : phases) {
        std::cout << "round " << phase.round << "  subproblem "
                  << subproblem_label(phase.subproblem) << "  generation " << phase.generation
                  << "\n";
    }
    std::cout << phases.size() << " generation entries\n";
    std::cout << "expected prompts: " << spec.evo.expected_prompts(descriptor.subproblem_count)
              << "\n";
}

void run_gap_table(const std::string& ours_path, const std::string& baseline_path,
                   const std::string& out_csv) {
    GapTable table = gap_table_from_csv(slurp(ours_path), slurp(baseline_path));
    std::cout << table.to_text();
    if (!out_csv.empty()) spill(out_csv, table.to_csv());
}

void run_plot_data(const std::string& trace_path, const std::string& out_path) {
    std::istringstream in(slurp(trace_path));
    std::string line;
    if (!std::getline(in, line)) throw FormatError("trace CSV is empty");
    std::ostringstream out;
    out << "generation_index,round,subproblem,generation,best,mean,best_so_far\n";
    double best_so_far = std::numeric_limits<double>::infinity();
    int index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw FormatError("trace row needs 6 fields: " + line);
        double best = fields[4] == "inf" ? std::numeric_limits<double>::infinity()
                                         : std::stod(fields[4]);
        best_so_far = std::min(best_so_far, best);
        out << ++index << "," << fields[1] << "," << fields[2] << "," << fields[3] << ","
            << fields[4] << "," << fields[5] << "," << fitness_field(best_so_far) << "\n";
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        spill(out_path, out.str());
    }
}

}  // namespace tuplevo::cli
