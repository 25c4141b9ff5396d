#include <algorithm>
#include <set>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/mrm/problem.hpp"

namespace tuplevo::mrm {

std::string MrProblem::subproblem_name(int k) const {
    if (k == kMoveSearch) return "move_search";
    if (k == kRouting) return "routing";
    throw IndexOutOfRange("MR-MUPMP subproblem index must be 1 or 2");
}

std::vector<std::string> MrProblem::feature_schema(int k) const {
    if (k == kMoveSearch) {
        return {"move_distance", "load_priority", "unblocks", "plan_position",
                "target_lane_fill"};
    }
    if (k == kRouting) {
        return {"start_time", "duration", "robot_load_ratio", "dag_depth", "travel_from_prev"};
    }
    throw IndexOutOfRange("MR-MUPMP subproblem index must be 1 or 2");
}

const MrState& MrProblem::state_of(const CoupledSolution& s) const {
    auto ptr = std::dynamic_pointer_cast<const MrState>(s.state);
    if (!ptr) throw InvariantViolation("solution state is not an MR-MUPMP state");
    return *ptr;
}

CoupledSolution MrProblem::wrap(MovePlan plan) const {
    Dag dag = derive_precedences(wh_, wh_.initial, plan);
    Schedule schedule = list_schedule(plan_jobs(wh_, plan), dag, wh_.robots);
    return wrap(std::move(plan), std::move(dag), std::move(schedule));
}

CoupledSolution MrProblem::wrap(MovePlan plan, Dag dag, Schedule schedule) const {
    auto state = std::make_shared<MrState>();
    state->plan = std::move(plan);
    state->dag = std::move(dag);
    state->schedule = std::move(schedule);
    CoupledSolution out;
    out.objective = state->schedule.makespan;
    auto report = validate_schedule(wh_, wh_.initial, state->plan, state->dag, state->schedule);
    out.feasible = report.ok();
    for (const auto& issue : report.issues) out.violations.push_back(issue.code);
    out.state = std::move(state);
    return out;
}

CoupledSolution MrProblem::initial_solution() const {
    try {
        return wrap(greedy_move_plan(wh_, wh_.initial));
    } catch (const NoSolution& e) {
        throw InfeasibleInstance(std::string("no initial move plan: ") + e.what());
    }
}

dsl::FeatureTable MrProblem::extract_features(int k, const CoupledSolution& s) const {
    const MrState& st = state_of(s);
    dsl::FeatureTable table;
    if (k == kMoveSearch) {
        table.schema = feature_schema(k);
        Stacking sim = wh_.initial;
        for (std::size_t i = 0; i < st.plan.size(); ++i) {
            const Move& m = st.plan[i];
            std::set<int> blocked_before;
            for (std::size_t l = 0; l < sim.size(); ++l) {
                for (std::size_t slot = 0; slot < sim[l].size(); ++slot) {
                    if (is_blocking(wh_, sim, static_cast<int>(l), static_cast<int>(slot))) {
                        blocked_before.insert(sim[l][slot]);
                    }
                }
            }
            apply_move(wh_, sim, m);
            std::set<int> blocked_after;
            for (std::size_t l = 0; l < sim.size(); ++l) {
                for (std::size_t slot = 0; slot < sim[l].size(); ++slot) {
                    if (is_blocking(wh_, sim, static_cast<int>(l), static_cast<int>(slot))) {
                        blocked_after.insert(sim[l][slot]);
                    }
                }
            }
            int unblocks = 0;
            for (int load : blocked_before) {
                if (!blocked_after.contains(load)) ++unblocks;
            }
            int fill = 0;
            const auto& lane = sim[static_cast<std::size_t>(m.to_lane)];
            for (int v : lane) {
                if (v >= 0) ++fill;
            }
            double dist = manhattan(wh_.lanes[static_cast<std::size_t>(m.from_lane)].slot_pos(m.from_slot),
                                    wh_.lanes[static_cast<std::size_t>(m.to_lane)].slot_pos(m.to_slot));
            table.rows.push_back({dist,
                                  static_cast<double>(wh_.load_priority[static_cast<std::size_t>(m.load)]),
                                  static_cast<double>(unblocks), static_cast<double>(i + 1),
                                  static_cast<double>(fill) / lane.size()});
        }
    } else if (k == kRouting) {
        table.schema = feature_schema(k);
        std::vector<int> depths = dag_depths(st.dag);
        std::vector<MoveJob> jobs = plan_jobs(wh_, st.plan);
        // busy time per robot
        std::vector<double> busy(wh_.robots.homes.size(), 0.0);
        for (std::size_t i = 0; i < st.plan.size(); ++i) {
            const Assignment& a = st.schedule.moves[i];
            if (a.robot >= 0) busy[static_cast<std::size_t>(a.robot)] += st.plan[i].duration;
        }
        // previous drop position per robot, in start order
        std::vector<int> order(st.plan.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double sa = st.schedule.moves[static_cast<std::size_t>(a)].start;
            double sb = st.schedule.moves[static_cast<std::size_t>(b)].start;
            if (sa != sb) return sa < sb;
            return a < b;
        });
        std::vector<double> travel(st.plan.size(), 0.0);
        std::vector<Point> pos = wh_.robots.homes;
        for (int idx : order) {
            const Assignment& a = st.schedule.moves[static_cast<std::size_t>(idx)];
            if (a.robot < 0) continue;
            auto r = static_cast<std::size_t>(a.robot);
            travel[static_cast<std::size_t>(idx)] =
                manhattan(pos[r], jobs[static_cast<std::size_t>(idx)].from) / wh_.robots.speed;
            pos[r] = jobs[static_cast<std::size_t>(idx)].to;
        }
        double makespan = st.schedule.makespan;
        for (std::size_t i = 0; i < st.plan.size(); ++i) {
            const Assignment& a = st.schedule.moves[i];
            double ratio = (a.robot >= 0 && makespan > 0)
                               ? busy[static_cast<std::size_t>(a.robot)] / makespan
                               : 0.0;
            table.rows.push_back({a.start, st.plan[i].duration, ratio,
                                  static_cast<double>(depths[i]), travel[i]});
        }
    } else {
        throw IndexOutOfRange("MR-MUPMP subproblem index must be 1 or 2");
    }
    return table;
}

CoupledSolution MrProblem::destroy_repair(int k, const CoupledSolution& s,
                                          const std::vector<std::size_t>& rows) const {
    const MrState& st = state_of(s);
    const std::size_t n = st.plan.size();
    for (std::size_t row : rows) {
        if (row >= n) throw IndexOutOfRange("plan row out of range");
    }
    if (k == kMoveSearch) {
        // drop the selected moves and everything that depends on them
        std::vector<bool> removed(n, false);
        std::vector<std::size_t> queue(rows.begin(), rows.end());
        while (!queue.empty()) {
            std::size_t m = queue.back();
            queue.pop_back();
            if (removed[m]) continue;
            removed[m] = true;
            for (int succ : st.dag.succs[m]) queue.push_back(static_cast<std::size_t>(succ));
        }
        MovePlan kept;
        for (std::size_t i = 0; i < n; ++i) {
            if (!removed[i]) kept.push_back(st.plan[i]);
        }
        try {
            Stacking truncated = simulate_plan(wh_, wh_.initial, kept);
            MovePlan completion = greedy_move_plan(wh_, truncated);
            for (const Move& m : completion) kept.push_back(m);
            return wrap(std::move(kept));
        } catch (const NoSolution& e) {
            return infeasible_worst(std::string("greedy completion failed: ") + e.what());
        } catch (const InvariantViolation& e) {
            return infeasible_worst(std::string("truncated plan not executable: ") + e.what());
        }
    }
    if (k == kRouting) {
        if (rows.empty()) {
            return wrap(st.plan, st.dag, st.schedule);
        }
        double t0 = std::numeric_limits<double>::infinity();
        std::vector<bool> todo(n, false);
        for (std::size_t row : rows) {
            todo[row] = true;
            t0 = std::min(t0, st.schedule.moves[row].start);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (st.schedule.moves[i].start > t0 + 1e-9) todo[i] = true;
        }
        Schedule rescheduled = list_schedule_residual(plan_jobs(wh_, st.plan), st.dag,
                                                      wh_.robots, st.schedule, todo);
        return wrap(st.plan, st.dag, std::move(rescheduled));
    }
    throw IndexOutOfRange("MR-MUPMP subproblem index must be 1 or 2");
}

FeasibilityReport MrProblem::check_feasible(const CoupledSolution& s) const {
    const MrState& st = state_of(s);
    return validate_schedule(wh_, wh_.initial, st.plan, st.dag, st.schedule);
}

ProblemDescriptor mrmupmp_descriptor() {
    ProblemDescriptor d;
    d.name = "mrmupmp";
    d.subproblem_count = 2;
    d.subproblem_names = {"move_search", "routing"};
    d.fitness_mode = FitnessMode::AverageObjective;
    d.seed_components = {
        {"rho=0.2; score = plan_position", "retract the latest moves first"},
        {"rho=0.2; score = start_time", "reschedule the latest assignments"},
    };
    return d;
}

}  // namespace tuplevo::mrm
