#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles/irp_oracle.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/irp/irp.hpp"

using namespace tuplevo;
using namespace tuplevo::irp;

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

IrpInstance two_customer_instance() {
    return parse_instance(
        "irp two\n"
        "horizon 2\n"
        "capacity 10\n"
        "depot 0 0 20 20\n"
        "customer 1 3 0 1 0 5 0.2 2 2\n"
        "customer 2 0 4 2 0 6 0.1 3 2\n");
}

}  // namespace

TEST_SUITE("irp") {

TEST_CASE("canonical documents parse and validate") {
    IrpInstance inst = two_customer_instance();
    CHECK(inst.horizon == 2);
    CHECK(inst.capacity == doctest::Approx(10));
    CHECK(inst.customers.size() == 2);
    CHECK(inst.customers[1].demand == std::vector<double>{3, 2});
}

TEST_CASE("start inventory outside bounds is rejected") {
    CHECK_THROWS_AS(parse_instance("irp bad\nhorizon 1\ncapacity 5\ndepot 0 0 1\n"
                                   "customer 1 1 1 12 0 10 0.1 1\n"),
                    InvariantViolation);
    CHECK_THROWS_AS(parse_instance("irp bad\nhorizon 1\ncapacity 0\ndepot 0 0 1\n"),
                    InvariantViolation);
    CHECK_THROWS_AS(parse_instance("nonsense"), FormatError);
}

TEST_CASE("25-node fixture parses with 24 customers and capacity 18") {
    IrpInstance inst = parse_instance(slurp(data_path("irp/fixture_25.irp")));
    CHECK(inst.customers.size() == 24);
    CHECK(inst.capacity == doctest::Approx(18));
    CHECK_NOTHROW(initial_solution(inst));
}

TEST_CASE("cost: single visit, 3-4-5 triangle") {
    IrpInstance inst = parse_instance(
        "irp tri\nhorizon 1\ncapacity 10\ndepot 0 0 5\n"
        "customer 1 3 4 0 0 5 0 5\n");
    IrpSolution sol;
    sol.deliveries = {{5}};
    sol.routes = {{{0}}};
    IrpCost c = cost(inst, sol);
    CHECK(c.transport == doctest::Approx(10.0));
    CHECK(c.holding == doctest::Approx(0.0));
    CHECK(c.total() == doctest::Approx(10.0));
}

TEST_CASE("cost: holding over end-of-period inventories") {
    IrpInstance inst = parse_instance(
        "irp hold\nhorizon 2\ncapacity 10\ndepot 0 0 0 0\n"
        "customer 1 1 1 7 0 10 0.5 3 3\n");
    IrpSolution sol;
    sol.deliveries = {{0, 0}};
    sol.routes = {{}, {}};
    // end inventories 4 then 1 -> 0.5 * (4 + 1)
    CHECK(cost(inst, sol).total() == doctest::Approx(2.5));
}

TEST_CASE("initial solution: zero demand means no deliveries") {
    IrpInstance inst = parse_instance(
        "irp zero\nhorizon 2\ncapacity 5\ndepot 0 0 0 0\n"
        "customer 1 2 2 3 0 5 0.1 0 0\n");
    IrpSolution sol = initial_solution(inst);
    CHECK(sol.deliveries[0][0] == 0);
    CHECK(sol.deliveries[0][1] == 0);
    CHECK(sol.routes[0].empty());
    CHECK(cost(inst, sol).transport == doctest::Approx(0));
}

TEST_CASE("initial solution: order-up-to-max before demand") {
    IrpInstance inst = parse_instance(
        "irp upto\nhorizon 1\ncapacity 20\ndepot 0 0 0\n"
        "customer 1 1 0 2 0 10 0.1 3\n");
    IrpSolution sol = initial_solution(inst);
    CHECK(sol.deliveries[0][0] == doctest::Approx(8));  // 2 + 8 = 10 before demand
}

TEST_CASE("initial solution: capacity split opens a second route") {
    IrpInstance inst = parse_instance(
        "irp split\nhorizon 1\ncapacity 18\ndepot 0 0 0\n"
        "customer 1 1 0 0 0 10 0.1 10\n"
        "customer 2 0 1 0 0 10 0.1 10\n");
    IrpSolution sol = initial_solution(inst);
    CHECK(sol.routes[0].size() == 2);
    CHECK(check_feasible(inst, sol).ok());
}

TEST_CASE("initial solution detects uncoverable demand") {
    IrpInstance inst = parse_instance(
        "irp impossible\nhorizon 1\ncapacity 2\ndepot 0 0 0\n"
        "customer 1 1 0 1 0 10 0.1 8\n");
    CHECK_THROWS_AS(initial_solution(inst), InfeasibleInstance);
}

TEST_CASE("feature extraction: empty inventory table without deliveries") {
    IrpInstance inst = parse_instance(
        "irp zero\nhorizon 1\ncapacity 5\ndepot 0 0 0\n"
        "customer 1 2 2 3 0 5 0.1 0\n");
    IrpSolution sol = initial_solution(inst);
    auto table = extract_features(kInventory, inst, sol);
    CHECK(table.rows.empty());
    CHECK(table.schema ==
          std::vector<std::string>{"quantity", "inv_before", "holding_cost", "dist_depot",
                                   "period", "slack"});
}

TEST_CASE("feature extraction: detour of a solo visit is twice the depot distance") {
    IrpInstance inst = parse_instance(
        "irp solo\nhorizon 1\ncapacity 10\ndepot 0 0 5\n"
        "customer 1 3 4 0 0 5 0 5\n");
    IrpSolution sol;
    sol.deliveries = {{5}};
    sol.routes = {{{0}}};
    auto table = extract_features(kRouting, inst, sol);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][0] == doctest::Approx(10.0));  // detour
}

TEST_CASE("feature extraction: middle-visit detour is the triangle difference") {
    IrpInstance inst = parse_instance(
        "irp mid\nhorizon 1\ncapacity 30\ndepot 0 0 30\n"
        "customer 1 2 0 0 0 9 0 5\n"
        "customer 2 4 3 0 0 9 0 5\n"
        "customer 3 7 0 0 0 9 0 5\n");
    IrpSolution sol;
    sol.deliveries = {{5}, {5}, {5}};
    sol.routes = {{{0, 1, 2}}};
    auto table = extract_features(kRouting, inst, sol);
    REQUIRE(table.rows.size() == 3);
    double expect = inst.dist(0, 1) + inst.dist(1, 2) - inst.dist(0, 2);
    CHECK(table.rows[1][0] == doctest::Approx(expect));
}

TEST_CASE("inventory slack counts periods to the induced stockout") {
    IrpInstance inst = parse_instance(
        "irp slack\nhorizon 3\ncapacity 20\ndepot 0 0 0 0 0\n"
        "customer 1 1 0 2 0 10 0.1 3 3 3\n");
    IrpSolution sol = initial_solution(inst);
    // delivery arrives in period 1 (start 2 < demand 3)
    auto table = extract_features(kInventory, inst, sol);
    REQUIRE(!table.rows.empty());
    CHECK(table.rows[0][4] == doctest::Approx(1));  // period
    CHECK(table.rows[0][5] == doctest::Approx(0));  // dropping it stocks out immediately
}

TEST_CASE("routing repair: reinsertion into an otherwise empty period restores the route") {
    IrpInstance inst = parse_instance(
        "irp solo\nhorizon 1\ncapacity 10\ndepot 0 0 5\n"
        "customer 1 3 4 0 0 5 0 5\n");
    IrpSolution sol = initial_solution(inst);
    IrpSolution repaired = apply_removal_and_repair(kRouting, inst, sol, {0});
    CHECK(repaired.routes == sol.routes);
    CHECK(repaired.deliveries == sol.deliveries);
}

TEST_CASE("inventory repair reinstates coverage at or before the stockout") {
    IrpInstance inst = two_customer_instance();
    IrpSolution sol = initial_solution(inst);
    auto elements = delivery_elements(sol);
    REQUIRE(!elements.empty());
    for (std::size_t row = 0; row < elements.size(); ++row) {
        IrpSolution repaired = apply_removal_and_repair(kInventory, inst, sol, {row});
        auto report = check_feasible(inst, repaired);
        CHECK_MESSAGE(report.ok(), "violation after removing row ", row);
    }
}

TEST_CASE("full destroy cycles stay within the oracle's reachable cost set") {
    IrpInstance inst = parse_instance(slurp(data_path("irp/toy4.irp")));
    auto oracle = irp_oracle::enumerate(inst, true);
    REQUIRE(!oracle.all_costs.empty());

    IrpSolution sol = initial_solution(inst);
    CHECK(irp_oracle::contains(oracle.all_costs, cost(inst, sol).total()));
    Rng rng(99);
    for (int step = 0; step < 60; ++step) {
        for (int k : {kInventory, kRouting}) {
            auto elements = k == kInventory
                                ? extract_features(kInventory, inst, sol).rows.size()
                                : extract_features(kRouting, inst, sol).rows.size();
            if (elements == 0) continue;
            std::size_t take = 1 + rng.uniform_index((elements + 1) / 2);
            auto rows = rng.sample_without_replacement(elements, take);
            std::sort(rows.begin(), rows.end());
            sol = apply_removal_and_repair(k, inst, sol, rows);
            REQUIRE(check_feasible(inst, sol).ok());
            CHECK(irp_oracle::contains(oracle.all_costs, cost(inst, sol).total()));
        }
    }
}

TEST_CASE("two-customer optimum matches the oracle") {
    IrpInstance inst = two_customer_instance();
    auto oracle = irp_oracle::enumerate(inst, true);
    IrpSolution sol = initial_solution(inst);
    CHECK(cost(inst, sol).total() >= oracle.best_cost - 1e-9);
    CHECK(irp_oracle::contains(oracle.all_costs, cost(inst, sol).total()));
}

TEST_CASE("repairs are deterministic") {
    IrpInstance inst = parse_instance(slurp(data_path("irp/toy3.irp")));
    IrpSolution sol = initial_solution(inst);
    IrpSolution a = apply_removal_and_repair(kRouting, inst, sol, {0, 1});
    IrpSolution b = apply_removal_and_repair(kRouting, inst, sol, {0, 1});
    CHECK(a.routes == b.routes);
    CHECK(a.deliveries == b.deliveries);
}

TEST_CASE("repair totality on the 25-node fixture") {
    IrpInstance inst = parse_instance(slurp(data_path("irp/fixture_25.irp")));
    IrpSolution sol = initial_solution(inst);
    REQUIRE(check_feasible(inst, sol).ok());
    Rng rng(2024);
    for (int step = 0; step < 300; ++step) {
        int k = step % 2 == 0 ? kInventory : kRouting;
        std::size_t n = extract_features(k, inst, sol).rows.size();
        if (n == 0) continue;
        std::size_t take = 1 + rng.uniform_index((n + 1) / 2);
        auto rows = rng.sample_without_replacement(n, take);
        std::sort(rows.begin(), rows.end());
        sol = apply_removal_and_repair(k, inst, sol, rows);
        auto report = check_feasible(inst, sol);
        if (!report.ok()) {
            for (const auto& issue : report.issues) {
                MESSAGE(issue.code, ": ", issue.detail);
            }
        }
        REQUIRE(report.ok());
    }
}

TEST_CASE("feasibility checker flags violations") {
    IrpInstance inst = two_customer_instance();
    IrpSolution sol = initial_solution(inst);
    REQUIRE(check_feasible(inst, sol).ok());

    IrpSolution overload = sol;
    overload.deliveries[0][0] = inst.capacity + 1;
    auto report = check_feasible(inst, overload);
    bool capacity = false;
    for (const auto& issue : report.issues) capacity |= issue.code == "CapacityViolation";
    CHECK(capacity);

    IrpSolution ghost = sol;
    ghost.deliveries[0][1] = 1;  // delivery without a visit
    report = check_feasible(inst, ghost);
    bool consistency = false;
    for (const auto& issue : report.issues) consistency |= issue.code == "ConsistencyViolation";
    CHECK(consistency);
}

TEST_CASE("legacy importer reads the single-file benchmark layout") {
    std::string text =
        "3 3 50\n"
        "0 0 0 100 30 0.3\n"
        "1 5 5 10 20 0 4 0.2\n"
        "2 8 1 6 12 0 3 0.1\n";
    IrpInstance inst = parse_legacy_instance(text);
    CHECK(inst.horizon == 3);
    CHECK(inst.customers.size() == 2);
    CHECK(inst.customers[0].demand == std::vector<double>{4, 4, 4});
    CHECK(inst.customers[1].max_level == doctest::Approx(12));
    CHECK_NOTHROW(initial_solution(inst));
}

}  // TEST_SUITE
