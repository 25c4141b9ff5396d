#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles/mr_oracle.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/mrm/problem.hpp"

using namespace tuplevo;
using namespace tuplevo::mrm;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string data_path(const std::string& name) {
    return std::string(TUPLEVO_DATA_DIR) + "/" + name;
}

// One west-access lane per row at y = 0, 1, ...; loads given per lane from
// the access end ('.' = empty).
Warehouse make_warehouse(const std::vector<std::vector<int>>& lanes, int robots = 2) {
    std::ostringstream doc;
    doc << "warehouse test\nrobots " << robots << "\nspeed 1\npick 1\ndrop 1\n";
    for (int r = 0; r < robots; ++r) doc << "home -1 " << r << "\n";
    int load_id = 1;
    std::string loads;
    for (std::size_t l = 0; l < lanes.size(); ++l) {
        doc << "lane " << (l + 1) << " 0 " << l << " 1 0 " << lanes[l].size() << "\n";
        for (std::size_t s = 0; s < lanes[l].size(); ++s) {
            if (lanes[l][s] > 0) {
                loads += "load " + std::to_string(load_id++) + " " + std::to_string(l + 1) +
                         " " + std::to_string(s) + " " + std::to_string(lanes[l][s]) + "\n";
            }
        }
    }
    doc << loads;
    return parse_warehouse(doc.str());
}

}  // namespace

TEST_SUITE("mrmupmp") {

TEST_CASE("blockage counting follows the priority rule") {
    // sorted lane has no blockages
    Warehouse w1 = make_warehouse({{1, 2, 3}});
    CHECK(blockage_count(w1, w1.initial) == 0);
    // the 2 in front of the 1 blocks it
    Warehouse w2 = make_warehouse({{0, 2, 1}});
    CHECK(blockage_count(w2, w2.initial) == 1);
    // occupancy with a gap at the far end is rejected
    CHECK_THROWS_AS(make_warehouse({{2, 1, 0}}), InvariantViolation);
}

TEST_CASE("lane [3,1,2]: only the front 3 blocks") {
    Warehouse w = make_warehouse({{3, 1, 2}});
    CHECK(blockage_count(w, w.initial) == 1);
    CHECK(is_blocking(w, w.initial, 0, 0));
    CHECK_FALSE(is_blocking(w, w.initial, 0, 1));
    CHECK_FALSE(is_blocking(w, w.initial, 0, 2));
}

TEST_CASE("occupancy must pack against the far end") {
    CHECK_THROWS_AS(parse_warehouse("warehouse bad\nrobots 1\nhome -1 0\n"
                                    "lane 1 0 0 1 0 3\nload 1 1 0 1\n"),
                    InvariantViolation);
}

TEST_CASE("greedy plan: already blockage-free yields an empty plan") {
    Warehouse w = make_warehouse({{1, 2, 3}, {0, 0, 2}});
    CHECK(greedy_move_plan(w, w.initial).empty());
}

TEST_CASE("greedy plan: [2,1] with one empty slot moves the 2") {
    Warehouse w = make_warehouse({{2, 1}, {0}});
    MovePlan plan = greedy_move_plan(w, w.initial);
    REQUIRE(plan.size() == 1);
    CHECK(plan[0].from_lane == 0);
    CHECK(plan[0].from_slot == 0);
    CHECK(plan[0].to_lane == 1);
    CHECK(plan[0].to_slot == 0);
    Stacking end = simulate_plan(w, w.initial, plan);
    CHECK(blockage_count(w, end) == 0);
}

TEST_CASE("greedy plan length stays within twice the blocking count on the 3x3 toy") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy3x3.wh")));
    int blocking = blockage_count(w, w.initial);
    REQUIRE(blocking == 2);
    MovePlan plan = greedy_move_plan(w, w.initial);
    CHECK(plan.size() <= static_cast<std::size_t>(2 * blocking));
    // the exhaustive search confirms a plan of that length exists at all
    auto oracle = mr_oracle::enumerate(w, 2 * blocking);
    CHECK(oracle.plans > 0);
    CHECK(static_cast<int>(plan.size()) >= oracle.min_plan_length);
    CHECK(blockage_count(w, simulate_plan(w, w.initial, plan)) == 0);
}

TEST_CASE("precedences: disjoint moves carry no edges") {
    Warehouse w = make_warehouse({{0, 2, 1}, {0, 0, 2}, {0, 0, 0}, {0, 3, 1}});
    MovePlan plan;
    // two moves touching disjoint lanes
    Stacking s = w.initial;
    Move m1{s[0][1], 0, 1, 2, 2, 0};
    m1.duration = 1 + manhattan(w.lanes[0].slot_pos(1), w.lanes[2].slot_pos(2)) + 1;
    apply_move(w, s, m1);
    Move m2{s[3][1], 3, 1, 1, 1, 0};
    m2.duration = 1 + manhattan(w.lanes[3].slot_pos(1), w.lanes[1].slot_pos(1)) + 1;
    apply_move(w, s, m2);
    plan = {m1, m2};
    Dag dag = derive_precedences(w, w.initial, plan);
    CHECK(dag.preds[0].empty());
    CHECK(dag.preds[1].empty());
}

TEST_CASE("precedences: vacated slot and cleared access create edges") {
    // lane0 holds [2,1]; lane1 empty depth 1; lane2 empty depth 1
    Warehouse w = make_warehouse({{2, 1}, {0}, {0}});
    Stacking s = w.initial;
    Move m1{s[0][0], 0, 0, 1, 0, 3.0};  // clears the front 2
    apply_move(w, s, m1);
    Move m2{s[0][1], 0, 1, 2, 0, 3.0};  // then the 1 behind it
    apply_move(w, s, m2);
    Dag dag = derive_precedences(w, w.initial, {m1, m2});
    REQUIRE(dag.preds[1] == std::vector<int>{0});  // access cleared by m1

    // vacate rule: a move stacking into m1's source slot waits for m1
    Warehouse w2 = make_warehouse({{2, 1}, {3, 1}, {0}});
    Stacking s2 = w2.initial;
    Move n1{s2[0][0], 0, 0, 2, 0, 3.0};  // 2 leaves lane0 slot0
    apply_move(w2, s2, n1);
    Move n2{s2[1][0], 1, 0, 0, 0, 3.0};  // 3 stacks into lane0 slot0
    apply_move(w2, s2, n2);
    Dag dag2 = derive_precedences(w2, w2.initial, {n1, n2});
    REQUIRE(dag2.preds[1] == std::vector<int>{0});
}

TEST_CASE("every topological order of a derived DAG replays cleanly") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy4x4.wh")));
    MovePlan plan = greedy_move_plan(w, w.initial);
    REQUIRE(plan.size() >= 2);
    Dag dag = derive_precedences(w, w.initial, plan);

    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        // random topological order via repeated ready-set sampling
        std::vector<int> indeg(plan.size(), 0);
        for (std::size_t m = 0; m < plan.size(); ++m) {
            indeg[m] = static_cast<int>(dag.preds[m].size());
        }
        std::vector<int> ready;
        for (std::size_t m = 0; m < plan.size(); ++m) {
            if (indeg[m] == 0) ready.push_back(static_cast<int>(m));
        }
        Stacking s = w.initial;
        while (!ready.empty()) {
            std::size_t pick = rng.uniform_index(ready.size());
            int m = ready[pick];
            ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
            CHECK_NOTHROW(apply_move(w, s, plan[static_cast<std::size_t>(m)]));
            for (int succ : dag.succs[static_cast<std::size_t>(m)]) {
                if (--indeg[static_cast<std::size_t>(succ)] == 0) ready.push_back(succ);
            }
        }
        CHECK(blockage_count(w, s) == 0);
    }
}

TEST_CASE("list schedule: two independent moves run in parallel") {
    RobotParams robots;
    robots.speed = 1;
    robots.homes = {{0, 0}, {5, 5}};
    std::vector<MoveJob> jobs = {{{0, 0}, {0, 3}, 3.0}, {{5, 5}, {5, 9}, 5.0}};
    Dag dag;
    dag.preds.assign(2, {});
    dag.succs.assign(2, {});
    Schedule sched = list_schedule(jobs, dag, robots);
    CHECK(sched.makespan == doctest::Approx(5.0));
}

TEST_CASE("list schedule: a chain serializes") {
    RobotParams robots;
    robots.speed = 1;
    robots.homes = {{0, 0}, {0, 0}};
    // m2 picks where m1 drops, so no travel separates them
    std::vector<MoveJob> jobs = {{{0, 0}, {1, 1}, 3.0}, {{1, 1}, {2, 2}, 5.0}};
    Dag dag;
    dag.preds = {{}, {0}};
    dag.succs = {{1}, {}};
    Schedule sched = list_schedule(jobs, dag, robots);
    CHECK(sched.makespan == doctest::Approx(8.0));
}

TEST_CASE("list schedule matches the brute-force optimum on a 3-move toy") {
    Warehouse w = make_warehouse({{0, 2, 1}, {0, 3, 1}, {0, 0, 0}, {0, 0, 0}});
    MovePlan plan = greedy_move_plan(w, w.initial);
    REQUIRE(plan.size() == 2);
    Dag dag = derive_precedences(w, w.initial, plan);
    Schedule sched = list_schedule(plan_jobs(w, plan), dag, w.robots);
    auto oracle = mr_oracle::enumerate(w, 3);
    CHECK(sched.makespan == doctest::Approx(oracle.best_makespan));
}

TEST_CASE("features: empty plan yields empty tables") {
    Warehouse w = make_warehouse({{1, 2, 3}, {0}});
    MrProblem problem(w);
    auto sol = problem.initial_solution();
    CHECK(problem.extract_features(kMoveSearch, sol).rows.empty());
    CHECK(problem.extract_features(kRouting, sol).rows.empty());
}

TEST_CASE("features: dag depths of a chain are 0,1,2") {
    Dag dag;
    dag.preds = {{}, {0}, {1}};
    dag.succs = {{1}, {2}, {}};
    CHECK(dag_depths(dag) == std::vector<int>{0, 1, 2});
}

TEST_CASE("features: unblocks matches a manual count on the 3x3 toy") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy3x3.wh")));
    MrProblem problem(w);
    auto sol = problem.initial_solution();
    auto table = problem.extract_features(kMoveSearch, sol);
    const MrState& st = problem.state_of(sol);
    REQUIRE(table.rows.size() == st.plan.size());
    // replay and count identity-wise
    Stacking sim = w.initial;
    for (std::size_t i = 0; i < st.plan.size(); ++i) {
        std::set<int> before, after;
        for (std::size_t l = 0; l < sim.size(); ++l)
            for (std::size_t s = 0; s < sim[l].size(); ++s)
                if (is_blocking(w, sim, static_cast<int>(l), static_cast<int>(s)))
                    before.insert(sim[l][s]);
        apply_move(w, sim, st.plan[i]);
        for (std::size_t l = 0; l < sim.size(); ++l)
            for (std::size_t s = 0; s < sim[l].size(); ++s)
                if (is_blocking(w, sim, static_cast<int>(l), static_cast<int>(s)))
                    after.insert(sim[l][s]);
        int unblocks = 0;
        for (int v : before)
            if (!after.contains(v)) ++unblocks;
        CHECK(table.rows[i][2] == doctest::Approx(unblocks));
    }
}

TEST_CASE("destroy with zero indices is the identity") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy3x3.wh")));
    MrProblem problem(w);
    auto sol = problem.initial_solution();
    auto same = problem.destroy_repair(kRouting, sol, {});
    CHECK(same.objective == doctest::Approx(sol.objective));
    auto rebuilt = problem.destroy_repair(kMoveSearch, sol, {});
    CHECK(rebuilt.objective == doctest::Approx(sol.objective));
    CHECK(rebuilt.feasible);
}

TEST_CASE("removing the last move re-completes to a blockage-free plan") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy4x4.wh")));
    MrProblem problem(w);
    auto sol = problem.initial_solution();
    const MrState& st = problem.state_of(sol);
    REQUIRE(!st.plan.empty());
    auto repaired = problem.destroy_repair(kMoveSearch, sol, {st.plan.size() - 1});
    CHECK(repaired.feasible);
    const MrState& st2 = problem.state_of(repaired);
    CHECK(blockage_count(w, simulate_plan(w, w.initial, st2.plan)) == 0);
}

TEST_CASE("unassigning one move keeps the rescheduled makespan within its slack") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy3x3.wh")));
    MrProblem problem(w);
    auto sol = problem.initial_solution();
    const MrState& st = problem.state_of(sol);
    for (std::size_t m = 0; m < st.plan.size(); ++m) {
        auto re = problem.destroy_repair(kRouting, sol, {m});
        CHECK(re.feasible);
        CHECK(re.objective <= sol.objective + st.plan[m].duration + 1e-9);
    }
}

TEST_CASE("repair totality on the 4x4 fixture") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy4x4.wh")));
    MrProblem problem(w);
    auto sol = problem.initial_solution();
    REQUIRE(sol.feasible);
    Rng rng(31337);
    for (int step = 0; step < 300; ++step) {
        int k = step % 2 == 0 ? kMoveSearch : kRouting;
        std::size_t n = problem.extract_features(k, sol).rows.size();
        if (n == 0) continue;
        std::size_t take = 1 + rng.uniform_index((n + 1) / 2);
        auto rows = rng.sample_without_replacement(n, take);
        std::sort(rows.begin(), rows.end());
        auto next = problem.destroy_repair(k, sol, rows);
        if (next.feasible) {
            REQUIRE(problem.check_feasible(next).ok());
            sol = next;
        }
    }
}

TEST_CASE("schedules validate: precedence, robot overlap, travel") {
    Warehouse w = parse_warehouse(slurp(data_path("mrmupmp/toy4x4.wh")));
    MrProblem problem(w);
    auto sol = problem.initial_solution();
    const MrState& st = problem.state_of(sol);
    REQUIRE(validate_schedule(w, w.initial, st.plan, st.dag, st.schedule).ok());

    // corrupt a start time: precedence or overlap must trip
    if (!st.plan.empty()) {
        Schedule bad = st.schedule;
        bad.moves[0].start += 1000;
        bad.moves[0].finish += 1000;
        bad.makespan += 1000;
        CHECK_FALSE(validate_schedule(w, w.initial, st.plan, st.dag, bad).ok());
    }
}

TEST_CASE("json import builds a warehouse (experimental layout)") {
    std::string doc = R"({"name":"imported","robots":2,"speed":1,"pick":1,"drop":1,
                          "lanes":[[null,2,1],[null,null,3],[1,2,3]]})";
    Warehouse w = import_warehouse_json(doc);
    CHECK(w.lanes.size() == 3);
    CHECK(w.load_ids.size() == 6);
    CHECK(blockage_count(w, w.initial) == 1);
    CHECK(w.robots.homes.size() == 2);
}

}  // TEST_SUITE
