#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/mrm/model.hpp"

namespace tuplevo::mrm {

namespace {

constexpr double kEps = 1e-9;

struct RobotState {
    double available = 0;
    Point pos{};
};

// Dispatch policies: the full build picks the ready move with the globally
// earliest feasible start; residual rebuilds dispatch ready moves in plan
// order so that destroying different subsets explores different
// serializations instead of reproducing the original schedule.
enum class Dispatch { EarliestStart, PlanOrder };

Schedule run_list_schedule(const std::vector<MoveJob>& jobs, const Dag& dag,
                           const RobotParams& robots, Schedule schedule,
                           std::vector<bool> done, std::vector<RobotState> state,
                           Dispatch dispatch) {
    const int n = static_cast<int>(jobs.size());
    int remaining = 0;
    for (bool d : done) {
        if (!d) ++remaining;
    }
    while (remaining > 0) {
        int best_move = -1, best_robot = -1;
        double best_start = std::numeric_limits<double>::infinity();
        for (int m = 0; m < n; ++m) {
            if (done[static_cast<std::size_t>(m)]) continue;
            double ready = 0;
            bool is_ready = true;
            for (int p : dag.preds[static_cast<std::size_t>(m)]) {
                if (!done[static_cast<std::size_t>(p)]) {
                    is_ready = false;
                    break;
                }
                ready = std::max(ready, schedule.moves[static_cast<std::size_t>(p)].finish);
            }
            if (!is_ready) continue;
            for (int r = 0; r < static_cast<int>(state.size()); ++r) {
                const RobotState& rs = state[static_cast<std::size_t>(r)];
                double arrival = rs.available +
                                 manhattan(rs.pos, jobs[static_cast<std::size_t>(m)].from) /
                                     robots.speed;
                double start = std::max(arrival, ready);
                if (start < best_start - kEps) {
                    best_start = start;
                    best_move = m;
                    best_robot = r;
                }
            }
            if (dispatch == Dispatch::PlanOrder && best_move >= 0) break;
        }
        if (best_move < 0) {
            throw InvariantViolation("list scheduling found no ready move (cyclic DAG?)");
        }
        Assignment& a = schedule.moves[static_cast<std::size_t>(best_move)];
        a.robot = best_robot;
        a.start = best_start;
        a.finish = best_start + jobs[static_cast<std::size_t>(best_move)].duration;
        state[static_cast<std::size_t>(best_robot)].available = a.finish;
        state[static_cast<std::size_t>(best_robot)].pos = jobs[static_cast<std::size_t>(best_move)].to;
        done[static_cast<std::size_t>(best_move)] = true;
        --remaining;
    }
    schedule.makespan = 0;
    for (const Assignment& a : schedule.moves) {
        schedule.makespan = std::max(schedule.makespan, a.finish);
    }
    return schedule;
}

}  // namespace

Schedule list_schedule(const std::vector<MoveJob>& jobs, const Dag& dag,
                       const RobotParams& robots) {
    Schedule schedule;
    schedule.moves.assign(jobs.size(), Assignment{});
    std::vector<RobotState> state(robots.homes.size());
    for (std::size_t r = 0; r < robots.homes.size(); ++r) state[r].pos = robots.homes[r];
    std::vector<bool> done(jobs.size(), false);
    return run_list_schedule(jobs, dag, robots, std::move(schedule), std::move(done),
                             std::move(state), Dispatch::EarliestStart);
}

Schedule list_schedule_residual(const std::vector<MoveJob>& jobs, const Dag& dag,
                                const RobotParams& robots, const Schedule& fixed,
                                const std::vector<bool>& todo) {
    Schedule schedule = fixed;
    std::vector<bool> done(jobs.size(), true);
    for (std::size_t m = 0; m < jobs.size(); ++m) {
        if (todo[m]) {
            done[m] = false;
            schedule.moves[m] = Assignment{};
        }
    }
    // robots resume from their last fixed assignment
    std::vector<RobotState> state(robots.homes.size());
    for (std::size_t r = 0; r < robots.homes.size(); ++r) state[r].pos = robots.homes[r];
    std::vector<int> last(robots.homes.size(), -1);
    for (std::size_t m = 0; m < jobs.size(); ++m) {
        if (todo[m]) continue;
        const Assignment& a = fixed.moves[m];
        if (a.robot < 0) continue;
        auto r = static_cast<std::size_t>(a.robot);
        if (r >= state.size()) throw InvariantViolation("fixed assignment on unknown robot");
        if (last[r] < 0 || fixed.moves[static_cast<std::size_t>(last[r])].finish < a.finish) {
            last[r] = static_cast<int>(m);
        }
    }
    for (std::size_t r = 0; r < state.size(); ++r) {
        if (last[r] >= 0) {
            state[r].available = fixed.moves[static_cast<std::size_t>(last[r])].finish;
            state[r].pos = jobs[static_cast<std::size_t>(last[r])].to;
        }
    }
    return run_list_schedule(jobs, dag, robots, std::move(schedule), std::move(done),
                             std::move(state), Dispatch::PlanOrder);
}

FeasibilityReport validate_schedule(const Warehouse& w, const Stacking& from,
                                    const MovePlan& plan, const Dag& dag,
                                    const Schedule& schedule) {
    FeasibilityReport report;
    const int n = static_cast<int>(plan.size());
    if (static_cast<int>(schedule.moves.size()) != n) {
        report.issues.push_back({"StructureViolation", "schedule size differs from plan"});
        return report;
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double sa = schedule.moves[static_cast<std::size_t>(a)].start;
        double sb = schedule.moves[static_cast<std::size_t>(b)].start;
        if (sa != sb) return sa < sb;
        return a < b;
    });

    // physics replay in start order
    Stacking s = from;
    for (int idx : order) {
        try {
            apply_move(w, s, plan[static_cast<std::size_t>(idx)]);
        } catch (const InvariantViolation& e) {
            report.issues.push_back({"ExecutabilityViolation",
                                     "move " + std::to_string(idx) + ": " + e.what()});
            return report;
        }
    }
    if (blockage_count(w, s) != 0) {
        report.issues.push_back({"BlockageRemains", "final configuration is not blockage-free"});
    }

    for (int m = 0; m < n; ++m) {
        const Assignment& a = schedule.moves[static_cast<std::size_t>(m)];
        if (a.robot < 0 || a.robot >= static_cast<int>(w.robots.homes.size())) {
            report.issues.push_back({"RobotViolation", "move " + std::to_string(m) +
                                                           " has no valid robot"});
            continue;
        }
        if (std::abs(a.finish - a.start - plan[static_cast<std::size_t>(m)].duration) > 1e-6) {
            report.issues.push_back({"DurationViolation", "move " + std::to_string(m)});
        }
        for (int p : dag.preds[static_cast<std::size_t>(m)]) {
            if (a.start < schedule.moves[static_cast<std::size_t>(p)].finish - 1e-6) {
                report.issues.push_back({"PrecedenceViolation",
                                         "move " + std::to_string(m) + " starts before move " +
                                             std::to_string(p) + " finishes"});
            }
        }
        if (a.finish > schedule.makespan + 1e-6) {
            report.issues.push_back({"MakespanViolation", "move " + std::to_string(m)});
        }
    }

    // robot serialization incl. travel between consecutive moves
    std::vector<MoveJob> jobs = plan_jobs(w, plan);
    for (int r = 0; r < static_cast<int>(w.robots.homes.size()); ++r) {
        std::vector<int> mine;
        for (int m : order) {
            if (schedule.moves[static_cast<std::size_t>(m)].robot == r) mine.push_back(m);
        }
        Point pos = w.robots.homes[static_cast<std::size_t>(r)];
        double available = 0;
        for (int m : mine) {
            const Assignment& a = schedule.moves[static_cast<std::size_t>(m)];
            double earliest = available + manhattan(pos, jobs[static_cast<std::size_t>(m)].from) /
                                              w.robots.speed;
            if (a.start < earliest - 1e-6) {
                report.issues.push_back({"RobotOverlap",
                                         "robot " + std::to_string(r) + " cannot reach move " +
                                             std::to_string(m) + " in time"});
            }
            available = a.finish;
            pos = jobs[static_cast<std::size_t>(m)].to;
        }
    }
    return report;
}

}  // namespace tuplevo::mrm
