#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "tuplevo/cli/commands.hpp"
#include "tuplevo/core/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tuplevo: evolves destroy-heuristic tuples for coupled optimization "
                 "problems and deploys them in an alternating LNS"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::optional<std::uint64_t> seed;
    auto* evolve = app.add_subcommand("evolve", "run an evolution from a config file");
    evolve->add_option("--config", config_path, "run configuration (JSON)")->required();
    evolve->add_option("--seed", seed, "master seed (overrides the config)");
    evolve->add_option("--out", out_dir, "output directory");

    std::string problem = "irp", tuple_path, lns_path, fitness;
    std::vector<std::string> instance_args;
    std::vector<double> references;
    bool legacy = false;
    std::uint64_t eval_seed = 1;
    auto* evaluate = app.add_subcommand("evaluate", "evaluate a saved tuple on instances");
    evaluate->add_option("--problem", problem, "irp or mrmupmp");
    evaluate->add_option("--tuple", tuple_path, "tuple document")->required();
    evaluate->add_option("--instances", instance_args, "instance files or directories")
        ->required();
    evaluate->add_option("--lns", lns_path, "LNS configuration (JSON)")->required();
    evaluate->add_option("--fitness", fitness, "relative_gap or average_objective");
    evaluate->add_option("--ref", references, "reference objective per instance");
    evaluate->add_flag("--legacy-format", legacy, "use the experimental importers");
    evaluate->add_option("--seed", eval_seed, "evaluation seed");

    std::string sched_config;
    auto* schedule = app.add_subcommand("schedule", "print the phase schedule (dry run)");
    schedule->add_option("--config", sched_config, "run configuration (JSON)")->required();

    std::string ours_csv, baseline_csv, gap_out;
    auto* gap = app.add_subcommand("gap-table", "compare objectives against baselines");
    gap->add_option("--ours", ours_csv, "CSV: instance,objective")->required();
    gap->add_option("--baseline", baseline_csv, "CSV: instance,<name>...")->required();
    gap->add_option("--out", gap_out, "also write the table as CSV");

    std::string trace_csv, plot_out;
    auto* plot = app.add_subcommand("plot-data", "emit per-generation series from a trace");
    plot->add_option("--trace", trace_csv, "trace CSV from evolve")->required();
    plot->add_option("--out", plot_out, "output CSV (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evolve->parsed()) {
            tuplevo::cli::run_evolve(config_path, seed, out_dir);
        } else if (evaluate->parsed()) {
            tuplevo::cli::run_evaluate(problem, tuple_path, instance_args, lns_path, fitness,
                                       references, legacy, eval_seed);
        } else if (schedule->parsed()) {
            tuplevo::cli::run_schedule(sched_config);
        } else if (gap->parsed()) {
            tuplevo::cli::run_gap_table(ours_csv, baseline_csv, gap_out);
        } else if (plot->parsed()) {
            tuplevo::cli::run_plot_data(trace_csv, plot_out);
        }
    } catch (const tuplevo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
