#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles/irp_oracle.hpp"
#include "oracles/mr_oracle.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/dsl/parser.hpp"
#include "tuplevo/irp/irp.hpp"
#include "tuplevo/lns/engine.hpp"
#include "tuplevo/mrm/problem.hpp"

using namespace tuplevo;

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

lns::LnsConfig logical_config(int iterations, int cycles) {
    lns::LnsConfig cfg;
    cfg.clock = lns::ClockMode::Logical;
    cfg.logical_cycles = cycles;
    cfg.max_iterations = {iterations, iterations};
    cfg.time_limit_s = {10.0, 10.0};
    return cfg;
}

std::vector<dsl::Program> random_score_programs() {
    return {dsl::parse("rho=0.4; score = rand()"), dsl::parse("rho=0.4; score = rand()")};
}

}  // namespace

TEST_SUITE("lns") {

TEST_CASE("zero-iteration configuration returns the initial solution") {
    irp::IrpProblem problem(irp::parse_instance(slurp(data_path("irp/toy1.irp"))));
    auto initial = problem.initial_solution();
    auto result = lns::run_alternating(problem, random_score_programs(),
                                       logical_config(0, 3), 1);
    CHECK(result.best.objective == doctest::Approx(initial.objective));
    CHECK(result.stats.iterations == 0);
    CHECK(result.trace.records.empty());
}

TEST_CASE("incumbent objective never increases over a run") {
    irp::IrpProblem problem(irp::parse_instance(slurp(data_path("irp/toy3.irp"))));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto result = lns::run_alternating(problem, random_score_programs(),
                                           logical_config(15, 2), seed);
        double incumbent = problem.initial_solution().objective;
        for (const auto& rec : result.trace.records) {
            if (rec.accepted) {
                CHECK(rec.objective <= incumbent + 1e-9);
                incumbent = rec.objective;
            }
        }
        CHECK(result.best.objective == doctest::Approx(incumbent));
        CHECK(result.best.objective <= problem.initial_solution().objective + 1e-9);
    }
}

TEST_CASE("paper-style evaluation limits are representable") {
    lns::LnsConfig irp_cfg;
    irp_cfg.global_time_limit_s = 60.0;
    irp_cfg.max_iterations = {1000, 1000};
    irp_cfg.time_limit_s = {10.0, 10.0};
    CHECK(irp_cfg.iterations_for(1) == 1000);
    CHECK(irp_cfg.iterations_for(2) == 1000);
    CHECK(irp_cfg.time_limit_for(2) == doctest::Approx(10.0));

    lns::LnsConfig mr_cfg;
    mr_cfg.global_time_limit_s = 60.0;
    mr_cfg.max_iterations = {10, 90};
    mr_cfg.time_limit_s = {10.0, 10.0};
    CHECK(mr_cfg.iterations_for(1) == 10);   // move search
    CHECK(mr_cfg.iterations_for(2) == 90);   // routing
}

TEST_CASE("feasibility is preserved at every accepted step") {
    mrm::MrProblem problem(mrm::parse_warehouse(slurp(data_path("mrmupmp/toy4x4.wh"))));
    lns::LnsConfig cfg = logical_config(20, 2);
    cfg.validate_accepted = true;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto result = lns::run_alternating(problem, random_score_programs(), cfg, seed);
        CHECK(result.stats.validation_failures == 0);
        CHECK(problem.check_feasible(result.best).ok());
    }
}

TEST_CASE("logical-clock runs replay identically") {
    irp::IrpProblem problem(irp::parse_instance(slurp(data_path("irp/toy3.irp"))));
    auto a = lns::run_alternating(problem, random_score_programs(), logical_config(20, 2), 9);
    auto b = lns::run_alternating(problem, random_score_programs(), logical_config(20, 2), 9);
    CHECK(a.trace.to_csv() == b.trace.to_csv());
    CHECK(a.best.objective == doctest::Approx(b.best.objective));
}

TEST_CASE("handoff: each phase starts from the previous phase's best") {
    irp::IrpProblem problem(irp::parse_instance(slurp(data_path("irp/toy3.irp"))));
    auto result = lns::run_alternating(problem, random_score_programs(),
                                       logical_config(10, 3), 4);
    // within the whole trace, accepted objectives are non-increasing, which
    // can only hold if phases chain their incumbents
    double last = problem.initial_solution().objective;
    for (const auto& rec : result.trace.records) {
        if (rec.accepted) {
            CHECK(rec.objective <= last + 1e-9);
            last = rec.objective;
        }
    }
}

TEST_CASE("one-customer toy reaches the brute-force optimum") {
    irp::IrpInstance inst = irp::parse_instance(slurp(data_path("irp/toy1.irp")));
    auto oracle = irp_oracle::enumerate(inst);
    irp::IrpProblem problem(inst);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto result = lns::run_alternating(problem, random_score_programs(),
                                           logical_config(50, 1), seed);
        CHECK(problem.check_feasible(result.best).ok());
        if (result.best.objective <= oracle.best_cost + 1e-6) ++hits;
    }
    CHECK(hits >= 18);
}

TEST_CASE("no-op neighborhood: identity repairs are never accepted") {
    // a single solo visit reinserts into its original position
    irp::IrpInstance inst = irp::parse_instance(
        "irp solo\nhorizon 1\ncapacity 10\ndepot 0 0 5\n"
        "customer 1 3 4 0 0 5 0.1 5\n");
    irp::IrpProblem problem(inst);
    std::vector<dsl::Program> programs = {dsl::parse("rho=0.5; score = quantity"),
                                          dsl::parse("rho=0.5; score = quantity")};
    auto result = lns::run_alternating(problem, programs, logical_config(8, 1), 3);
    for (const auto& rec : result.trace.records) {
        CHECK_FALSE(rec.accepted);
        CHECK(rec.objective == doctest::Approx(result.best.objective));
    }
}

TEST_CASE("destroy-program failures skip the iteration and keep the incumbent") {
    irp::IrpProblem problem(irp::parse_instance(slurp(data_path("irp/toy3.irp"))));
    // unknown feature: select_removals raises at bind time every iteration
    std::vector<dsl::Program> programs = {dsl::parse("rho=0.3; score = no_such_feature"),
                                          dsl::parse("rho=0.3; score = no_such_feature")};
    auto result = lns::run_alternating(problem, programs, logical_config(5, 1), 1);
    CHECK(result.stats.skipped == result.stats.iterations);
    CHECK(result.best.objective ==
          doctest::Approx(problem.initial_solution().objective));
}

TEST_CASE("trace CSV has the documented shape") {
    irp::IrpProblem problem(irp::parse_instance(slurp(data_path("irp/toy1.irp"))));
    auto result = lns::run_alternating(problem, random_score_programs(),
                                       logical_config(3, 1), 1);
    std::istringstream csv(result.trace.to_csv());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "subproblem,iteration,objective,accepted,elapsed_ms");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == result.stats.iterations);
}

}  // TEST_SUITE
