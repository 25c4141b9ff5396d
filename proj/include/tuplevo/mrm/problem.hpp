#ifndef TUPLEVO_MRM_PROBLEM_HPP
#define TUPLEVO_MRM_PROBLEM_HPP

#include <memory>
#include <string>
#include <vector>

#include "tuplevo/core/problem.hpp"
#include "tuplevo/mrm/model.hpp"

namespace tuplevo::mrm {

inline constexpr int kMoveSearch = 1;
inline constexpr int kRouting = 2;

struct MrState : SolutionState {
    MovePlan plan;
    Dag dag;
    Schedule schedule;
};

// Coupled pre-marshalling problem: the move-search subproblem owns the plan
// and the routing subproblem owns robot assignment and timing; the global
// objective is the schedule makespan.
class MrProblem : public CoupledInstance {
  public:
    explicit MrProblem(Warehouse warehouse) : wh_(std::move(warehouse)) {}

    std::string label() const override { return wh_.name; }
    int subproblem_count() const override { return 2; }
    std::string subproblem_name(int k) const override;
    std::vector<std::string> feature_schema(int k) const override;
    CoupledSolution initial_solution() const override;
    dsl::FeatureTable extract_features(int k, const CoupledSolution& s) const override;
    CoupledSolution destroy_repair(int k, const CoupledSolution& s,
                                   const std::vector<std::size_t>& rows) const override;
    FeasibilityReport check_feasible(const CoupledSolution& s) const override;

    const Warehouse& warehouse() const { return wh_; }
    const MrState& state_of(const CoupledSolution& s) const;

  private:
    CoupledSolution wrap(MovePlan plan) const;
    CoupledSolution wrap(MovePlan plan, Dag dag, Schedule schedule) const;
    Warehouse wh_;
};

ProblemDescriptor mrmupmp_descriptor();

}  // namespace tuplevo::mrm

#endif
