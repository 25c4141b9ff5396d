#include "tuplevo/lns/engine.hpp"

#include <chrono>
#include <sstream>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/dsl/interpreter.hpp"

namespace tuplevo::lns {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    ClockMode mode;
    Clock::time_point t0;
    double limit_s;

    double elapsed_s() const {
        if (mode == ClockMode::Logical) return 0.0;
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }
    bool expired() const { return mode == ClockMode::Wall && elapsed_s() >= limit_s; }
};

struct PhaseContext {
    std::uint64_t run_seed;
    std::uint64_t instance_hash;
    int global_iteration = 0;
};

LnsResult run_phase(const CoupledInstance& instance, const CoupledSolution& start, int k,
                    const dsl::Program& program, const LnsConfig& cfg, PhaseContext& ctx,
                    const Deadline* global_deadline) {
    if (!start.feasible) {
        throw InvariantViolation("subproblem LNS requires a feasible starting solution");
    }
    LnsResult result;
    result.best = start;

    Deadline local{cfg.clock, Clock::now(), cfg.time_limit_for(k)};
    const int max_iter = cfg.iterations_for(k);

    for (int it = 1; it <= max_iter; ++it) {
        if (local.expired()) break;
        if (global_deadline && global_deadline->expired()) break;
        ++ctx.global_iteration;
        ++result.stats.iterations;

        LnsRecord record;
        record.subproblem = k;
        record.iteration = it;
        record.accepted = false;

        dsl::FeatureTable table = instance.extract_features(k, result.best);
        if (table.rows.empty()) {
            record.objective = result.best.objective;
            record.elapsed_ms = local.elapsed_s() * 1000.0;
            result.trace.records.push_back(record);
            continue;
        }

        CoupledSolution candidate;
        bool have_candidate = false;
        try {
            dsl::EvalContext ectx;
            ectx.seed = mix_seed(mix_seed(ctx.run_seed, ctx.instance_hash),
                                 static_cast<std::uint64_t>(ctx.global_iteration));
            ectx.step_budget = cfg.step_budget;
            auto rows = dsl::select_removals(program, table, ectx);
            candidate = instance.destroy_repair(k, result.best, rows);
            have_candidate = true;
        } catch (const Error&) {
            ++result.stats.skipped;
        }

        if (have_candidate && candidate.feasible &&
            candidate.objective < result.best.objective) {
            if (cfg.validate_accepted && !instance.check_feasible(candidate).ok()) {
                ++result.stats.validation_failures;
            } else {
                record.accepted = true;
                result.best = candidate;
                ++result.stats.accepted;
            }
        }
        record.objective = have_candidate ? candidate.objective : result.best.objective;
        record.elapsed_ms = local.elapsed_s() * 1000.0;
        result.trace.records.push_back(record);
    }
    return result;
}

}  // namespace

int LnsConfig::iterations_for(int k) const {
    if (max_iterations.empty()) throw ConfigError("max_iterations not configured");
    if (max_iterations.size() == 1) return max_iterations[0];
    auto idx = static_cast<std::size_t>(k - 1);
    if (idx >= max_iterations.size()) throw ConfigError("missing max_iterations entry");
    return max_iterations[idx];
}

double LnsConfig::time_limit_for(int k) const {
    if (time_limit_s.empty()) throw ConfigError("time_limit_s not configured");
    if (time_limit_s.size() == 1) return time_limit_s[0];
    auto idx = static_cast<std::size_t>(k - 1);
    if (idx >= time_limit_s.size()) throw ConfigError("missing time_limit_s entry");
    return time_limit_s[idx];
}

std::string LnsTrace::to_csv() const {
    std::ostringstream out;
    out << "subproblem,iteration,objective,accepted,elapsed_ms\n";
    for (const LnsRecord& r : records) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%d,%.3f\n", r.subproblem, r.iteration,
                      r.objective, r.accepted ? 1 : 0, r.elapsed_ms);
        out << buf;
    }
    return out.str();
}

LnsResult run_subproblem(const CoupledInstance& instance, const CoupledSolution& start, int k,
                         const dsl::Program& program, const LnsConfig& cfg,
                         std::uint64_t seed) {
    PhaseContext ctx{seed, hash_string(instance.label()), 0};
    return run_phase(instance, start, k, program, cfg, ctx, nullptr);
}

LnsResult run_alternating(const CoupledInstance& instance,
                          const std::vector<dsl::Program>& programs, const LnsConfig& cfg,
                          std::uint64_t seed) {
    const int K = instance.subproblem_count();
    if (static_cast<int>(programs.size()) != K) {
        throw LengthMismatch("need one destroy program per subproblem");
    }

    LnsResult result;
    try {
        result.best = instance.initial_solution();
    } catch (const InfeasibleInstance& e) {
        throw InfeasibleInstance(std::string("infeasible start: ") + e.what());
    }

    Deadline global{cfg.clock, Clock::now(), cfg.global_time_limit_s};
    PhaseContext ctx{seed, hash_string(instance.label()), 0};

    int cycle = 0;
    while (true) {
        if (cfg.clock == ClockMode::Logical) {
            if (cycle >= cfg.logical_cycles) break;
        } else if (global.expired()) {
            break;
        }
        ++cycle;
        int cycle_iterations = 0;
        for (int k = 1; k <= K; ++k) {
            if (cfg.clock == ClockMode::Wall && global.expired()) break;
            LnsResult phase = run_phase(instance, result.best, k,
                                        programs[static_cast<std::size_t>(k - 1)], cfg, ctx,
                                        cfg.clock == ClockMode::Wall ? &global : nullptr);
            result.best = phase.best;  // handoff: phase best seeds the next phase
            result.stats.iterations += phase.stats.iterations;
            result.stats.accepted += phase.stats.accepted;
            result.stats.skipped += phase.stats.skipped;
            result.stats.validation_failures += phase.stats.validation_failures;
            cycle_iterations += phase.stats.iterations;
            for (const LnsRecord& r : phase.trace.records) {
                result.trace.records.push_back(r);
            }
        }
        if (cycle_iterations == 0) break;  // iteration budgets exhausted, nothing to wait for
    }
    return result;
}

}  // namespace tuplevo::lns
