#ifndef TUPLEVO_CORE_PROBLEM_HPP
#define TUPLEVO_CORE_PROBLEM_HPP

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "tuplevo/dsl/interpreter.hpp"

namespace tuplevo {

struct FeasibilityIssue {
    std::string code;
    std::string detail;
};

struct FeasibilityReport {
    std::vector<FeasibilityIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Problem-specific solution payload, opaque to the engine.
class SolutionState {
  public:
    virtual ~SolutionState() = default;
};

struct CoupledSolution {
    std::shared_ptr<const SolutionState> state;
    double objective = std::numeric_limits<double>::infinity();
    bool feasible = false;
    std::vector<std::string> violations;
};

inline CoupledSolution infeasible_worst(std::string reason) {
    CoupledSolution s;
    s.feasible = false;
    s.violations.push_back(std::move(reason));
    return s;
}

// Contract every problem module satisfies. All operations are pure with
// respect to the instance and input solutions, so concurrent evaluation of
// different candidates is safe.
class CoupledInstance {
  public:
    virtual ~CoupledInstance() = default;

    virtual std::string label() const = 0;
    virtual int subproblem_count() const = 0;
    virtual std::string subproblem_name(int k) const = 0;
    virtual std::vector<std::string> feature_schema(int k) const = 0;

    // Feasible with finite objective, or throws InfeasibleInstance.
    virtual CoupledSolution initial_solution() const = 0;

    virtual dsl::FeatureTable extract_features(int k, const CoupledSolution& s) const = 0;

    // Removes the elements selected by `rows` (indices into the phase-k
    // feature table) and rebuilds a complete solution deterministically.
    virtual CoupledSolution destroy_repair(int k, const CoupledSolution& s,
                                           const std::vector<std::size_t>& rows) const = 0;

    virtual FeasibilityReport check_feasible(const CoupledSolution& s) const = 0;
};

enum class FitnessMode { RelativeGap, AverageObjective };

// Static description used by the evolution layer.
struct ProblemDescriptor {
    std::string name;
    int subproblem_count = 0;
    std::vector<std::string> subproblem_names;
    FitnessMode fitness_mode = FitnessMode::AverageObjective;
    // (code, thought) per subproblem used for not-yet-evolved components.
    std::vector<std::pair<std::string, std::string>> seed_components;
};

}  // namespace tuplevo

#endif
