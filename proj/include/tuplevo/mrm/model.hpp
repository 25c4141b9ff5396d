#ifndef TUPLEVO_MRM_MODEL_HPP
#define TUPLEVO_MRM_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tuplevo/core/problem.hpp"

namespace tuplevo::mrm {

struct Point {
    double x = 0, y = 0;
};

inline double manhattan(Point a, Point b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Single-deep lane: slot 0 is the access end, deeper slots go inward.
// Loads pack contiguously against the far end; only the front of the packed
// block can be picked and insertions land on the deepest free slot.
struct Lane {
    int id = 0;
    double x0 = 0, y0 = 0;   // slot 0 position
    double dx = 0, dy = 0;   // unit step toward the far end
    int depth = 0;

    Point slot_pos(int slot) const {
        return {x0 + dx * slot, y0 + dy * slot};
    }
};

struct RobotParams {
    double speed = 1.0;
    double pick_time = 1.0;
    double drop_time = 1.0;
    std::vector<Point> homes;  // one per robot
};

// Stacking state: stacking[lane][slot] = load index, or -1 when empty.
using Stacking = std::vector<std::vector<int>>;

struct Warehouse {
    std::string name;
    std::vector<Lane> lanes;
    std::vector<int> load_ids;        // external id per load index
    std::vector<int> load_priority;   // retrieval class, 1 first
    RobotParams robots;
    Stacking initial;
};

// Canonical warehouse document; see docs/instance-formats.md.
Warehouse parse_warehouse(const std::string& text);

// Experimental importer for JSON layouts shaped like the published benchmark
// archives; field interpretation documented in docs/instance-formats.md.
Warehouse import_warehouse_json(const std::string& text);

// Index of the front-most occupied slot, or depth when the lane is empty.
int front_index(const Stacking& s, int lane);
// Slot an inserted load lands on, or -1 when the lane is full.
int insertion_index(const Stacking& s, int lane);

// Loads with a strictly lower priority class stored behind them.
int blockage_count(const Warehouse& w, const Stacking& s);
bool is_blocking(const Warehouse& w, const Stacking& s, int lane, int slot);

std::uint64_t stacking_hash(const Stacking& s);

struct Move {
    int load = -1;
    int from_lane = 0, from_slot = 0;
    int to_lane = 0, to_slot = 0;
    double duration = 0;
};

using MovePlan = std::vector<Move>;

struct Dag {
    std::vector<std::vector<int>> preds;
    std::vector<std::vector<int>> succs;
};

// Greedy blockage clearing from stacking `from`: repeatedly take the blocking
// load nearest its lane's access end (digging out covering loads first) and
// relocate the lane's front load to the insertion slot that minimizes the
// resulting blockage count; ties by shorter travel, then lower slot id.
// Revisiting a configuration is never allowed, so the search either reaches
// a blockage-free state or raises NoSolution.
MovePlan greedy_move_plan(const Warehouse& w, const Stacking& from);

// Applies `m` to `s`; throws InvariantViolation when the move is not
// executable (wrong front load or wrong insertion slot).
void apply_move(const Warehouse& w, Stacking& s, const Move& m);

// Executes the plan in listed order, returning the final stacking.
Stacking simulate_plan(const Warehouse& w, const Stacking& from, const MovePlan& plan);

// Precedence edges that keep every topological order executable:
// clearing the access path before a pick, vacating a slot before it is
// reused, filling the deeper neighbor before stacking in front of it, and
// the same load's own move order.
Dag derive_precedences(const Warehouse& w, const Stacking& from, const MovePlan& plan);

struct Assignment {
    int robot = -1;
    double start = 0;
    double finish = 0;
};

struct Schedule {
    std::vector<Assignment> moves;  // aligned with the plan
    double makespan = 0;
};

struct MoveJob {
    Point from, to;
    double duration = 0;
};

// List scheduling: repeatedly start the ready move with the earliest feasible
// start on the robot achieving it; ties prefer the lower move index, then the
// lower robot index. Robot travel runs from the previous drop slot (or home)
// to the next pick slot.
Schedule list_schedule(const std::vector<MoveJob>& jobs, const Dag& dag,
                       const RobotParams& robots);

// Re-schedules the moves in `todo` on top of the fixed assignments of the
// remaining moves (which must be DAG-closed downward).
Schedule list_schedule_residual(const std::vector<MoveJob>& jobs, const Dag& dag,
                                const RobotParams& robots, const Schedule& fixed,
                                const std::vector<bool>& todo);

std::vector<MoveJob> plan_jobs(const Warehouse& w, const MovePlan& plan);

// Replays the schedule against warehouse physics, precedences, and robot
// timing; empty report means the schedule is valid and ends blockage-free.
FeasibilityReport validate_schedule(const Warehouse& w, const Stacking& from,
                                    const MovePlan& plan, const Dag& dag,
                                    const Schedule& schedule);

std::vector<int> dag_depths(const Dag& dag);

}  // namespace tuplevo::mrm

#endif
