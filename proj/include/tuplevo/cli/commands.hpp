#ifndef TUPLEVO_CLI_COMMANDS_HPP
#define TUPLEVO_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tuplevo/evo/evolution.hpp"

namespace tuplevo::cli {

// Command implementations behind the CLI; they print to stdout and throw
// tuplevo::Error subclasses on failure.

struct EvolveOutputs {
    std::string trace_csv;
    std::string candidates_jsonl;
    std::string best_tuple;
};

EvolveOutputs run_evolve(const std::string& config_path, std::optional<std::uint64_t> seed,
                         const std::string& out_dir);

void run_evaluate(const std::string& problem, const std::string& tuple_path,
                  const std::vector<std::string>& instance_args, const std::string& lns_path,
                  const std::string& fitness, const std::vector<double>& references,
                  bool legacy, std::uint64_t seed);

void run_schedule(const std::string& config_path);

void run_gap_table(const std::string& ours_path, const std::string& baseline_path,
                   const std::string& out_csv);

void run_plot_data(const std::string& trace_path, const std::string& out_path);

std::string trace_to_csv(const evo::RunResult& result);
std::string candidates_to_jsonl(const evo::RunResult& result);

}  // namespace tuplevo::cli

#endif
