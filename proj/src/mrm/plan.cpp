#include <algorithm>
#include <limits>
#include <set>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/mrm/model.hpp"

namespace tuplevo::mrm {

namespace {

double move_duration(const Warehouse& w, Point from, Point to) {
    return w.robots.pick_time + manhattan(from, to) / w.robots.speed + w.robots.drop_time;
}

Move make_move(const Warehouse& w, const Stacking& s, int from_lane, int to_lane) {
    Move m;
    m.from_lane = from_lane;
    m.from_slot = front_index(s, from_lane);
    m.load = s[static_cast<std::size_t>(from_lane)][static_cast<std::size_t>(m.from_slot)];
    m.to_lane = to_lane;
    m.to_slot = insertion_index(s, to_lane);
    m.duration = move_duration(w, w.lanes[static_cast<std::size_t>(from_lane)].slot_pos(m.from_slot),
                               w.lanes[static_cast<std::size_t>(to_lane)].slot_pos(m.to_slot));
    return m;
}

}  // namespace

void apply_move(const Warehouse& w, Stacking& s, const Move& m) {
    (void)w;
    if (m.from_lane == m.to_lane) {
        throw InvariantViolation("moves must change lanes");
    }
    if (front_index(s, m.from_lane) != m.from_slot ||
        s[static_cast<std::size_t>(m.from_lane)][static_cast<std::size_t>(m.from_slot)] != m.load) {
        throw InvariantViolation("move source is not the accessible front load");
    }
    if (insertion_index(s, m.to_lane) != m.to_slot) {
        throw InvariantViolation("move target is not the lane insertion slot");
    }
    s[static_cast<std::size_t>(m.from_lane)][static_cast<std::size_t>(m.from_slot)] = -1;
    s[static_cast<std::size_t>(m.to_lane)][static_cast<std::size_t>(m.to_slot)] = m.load;
}

Stacking simulate_plan(const Warehouse& w, const Stacking& from, const MovePlan& plan) {
    Stacking s = from;
    for (const Move& m : plan) apply_move(w, s, m);
    return s;
}

MovePlan greedy_move_plan(const Warehouse& w, const Stacking& from) {
    constexpr int kMaxSteps = 10000;
    MovePlan plan;
    Stacking s = from;
    std::set<std::uint64_t> seen;
    seen.insert(stacking_hash(s));

    for (int step = 0; step < kMaxSteps; ++step) {
        if (blockage_count(w, s) == 0) return plan;

        // blocking loads ordered by distance from the access end, then lane
        std::vector<std::pair<int, int>> blocking;  // (slot, lane)
        for (std::size_t l = 0; l < s.size(); ++l) {
            for (int i = front_index(s, static_cast<int>(l));
                 i < static_cast<int>(s[l].size()); ++i) {
                if (is_blocking(w, s, static_cast<int>(l), i)) {
                    blocking.emplace_back(i, static_cast<int>(l));
                    break;  // deeper loads in this lane are farther from access
                }
            }
        }
        if (blocking.empty()) return plan;
        std::sort(blocking.begin(), blocking.end());

        // the accessible front load of the selected lane is what actually
        // moves; covering loads get dug out over successive iterations. When
        // every target of that lane revisits a known configuration, fall
        // through to the next-nearest blocking load.
        int best_lane = -1;
        int from_lane = -1, from_slot = -1;
        for (const auto& [slot, lane] : blocking) {
            from_lane = lane;
            from_slot = front_index(s, from_lane);
            Point from_pos = w.lanes[static_cast<std::size_t>(from_lane)].slot_pos(from_slot);
            int best_blockage = std::numeric_limits<int>::max();
            double best_dist = 0;
            int best_slot_id = 0;
            best_lane = -1;
            for (std::size_t l = 0; l < s.size(); ++l) {
                if (static_cast<int>(l) == from_lane) continue;
                int target = insertion_index(s, static_cast<int>(l));
                if (target < 0) continue;
                Move candidate = make_move(w, s, from_lane, static_cast<int>(l));
                Stacking next = s;
                apply_move(w, next, candidate);
                if (seen.contains(stacking_hash(next))) continue;
                int blockage = blockage_count(w, next);
                double dist = manhattan(from_pos, w.lanes[l].slot_pos(target));
                int slot_id = static_cast<int>(l) * 1000 + target;
                bool better = blockage < best_blockage ||
                              (blockage == best_blockage && dist < best_dist - 1e-9) ||
                              (blockage == best_blockage && std::abs(dist - best_dist) <= 1e-9 &&
                               slot_id < best_slot_id);
                if (better) {
                    best_blockage = blockage;
                    best_dist = dist;
                    best_slot_id = slot_id;
                    best_lane = static_cast<int>(l);
                }
            }
            if (best_lane >= 0) break;
        }
        if (best_lane < 0) {
            throw NoSolution("greedy move search stalled: every target revisits a configuration");
        }
        Move chosen = make_move(w, s, from_lane, best_lane);
        apply_move(w, s, chosen);
        seen.insert(stacking_hash(s));
        plan.push_back(chosen);
    }
    throw NoSolution("greedy move search exceeded the step limit");
}

Dag derive_precedences(const Warehouse& w, const Stacking& from, const MovePlan& plan) {
    const int n = static_cast<int>(plan.size());
    Dag dag;
    dag.preds.assign(static_cast<std::size_t>(n), {});
    dag.succs.assign(static_cast<std::size_t>(n), {});
    std::set<std::pair<int, int>> edges;
    auto add_edge = [&](int a, int b) {
        if (a == b) return;
        if (a > b) throw CycleDetected("precedence edge against plan order");
        if (edges.insert({a, b}).second) {
            dag.succs[static_cast<std::size_t>(a)].push_back(b);
            dag.preds[static_cast<std::size_t>(b)].push_back(a);
        }
    };

    // validates executability of the listed order as a side effect
    simulate_plan(w, from, plan);

    for (int j = 0; j < n; ++j) {
        const Move& mj = plan[static_cast<std::size_t>(j)];
        for (int i = 0; i < j; ++i) {
            const Move& mi = plan[static_cast<std::size_t>(i)];
            // same load moves again
            if (mi.load == mj.load) add_edge(i, j);
            // mi clears the access path in front of mj's pick
            if (mi.from_lane == mj.from_lane && mi.from_slot < mj.from_slot) add_edge(i, j);
            // mi vacates the slot mj stacks into
            if (mi.from_lane == mj.to_lane && mi.from_slot == mj.to_slot) add_edge(i, j);
            // mi fills the deeper neighbor mj stacks against
            if (mi.to_lane == mj.to_lane && mi.to_slot == mj.to_slot + 1) add_edge(i, j);
        }
    }
    return dag;
}

std::vector<int> dag_depths(const Dag& dag) {
    const int n = static_cast<int>(dag.preds.size());
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    // preds always have lower plan indices, so one forward pass suffices
    for (int i = 0; i < n; ++i) {
        for (int p : dag.preds[static_cast<std::size_t>(i)]) {
            depth[static_cast<std::size_t>(i)] =
                std::max(depth[static_cast<std::size_t>(i)], depth[static_cast<std::size_t>(p)] + 1);
        }
    }
    return depth;
}

std::vector<MoveJob> plan_jobs(const Warehouse& w, const MovePlan& plan) {
    std::vector<MoveJob> jobs;
    jobs.reserve(plan.size());
    for (const Move& m : plan) {
        jobs.push_back({w.lanes[static_cast<std::size_t>(m.from_lane)].slot_pos(m.from_slot),
                        w.lanes[static_cast<std::size_t>(m.to_lane)].slot_pos(m.to_slot),
                        m.duration});
    }
    return jobs;
}

}  // namespace tuplevo::mrm
