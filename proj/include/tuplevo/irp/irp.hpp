#ifndef TUPLEVO_IRP_IRP_HPP
#define TUPLEVO_IRP_IRP_HPP

#include <memory>
#include <string>
#include <vector>

#include "tuplevo/core/problem.hpp"
#include "tuplevo/dsl/interpreter.hpp"

namespace tuplevo::irp {

inline constexpr int kInventory = 1;
inline constexpr int kRouting = 2;

struct Customer {
    int id = 0;
    double x = 0, y = 0;
    double start = 0;        // starting inventory
    double min_level = 0;
    double max_level = 0;
    double holding = 0;      // unit holding cost per period
    std::vector<double> demand;  // one entry per period
};

struct IrpInstance {
    std::string name;
    int horizon = 0;        // periods
    double capacity = 0;    // vehicle capacity
    double depot_x = 0, depot_y = 0;
    std::vector<double> production;  // depot production per period (informational)
    std::vector<Customer> customers;

    double dist(int a, int b) const;        // customer indices, -1 = depot
    double dist_depot(int c) const { return dist(-1, c); }
};

// Deliveries use the convention that a delivery arrives before the period's
// demand is consumed: start + q <= max must hold after delivery, and the
// end-of-period level (after demand) must stay >= min.
struct IrpSolution {
    std::vector<std::vector<double>> deliveries;        // [customer][period]
    std::vector<std::vector<std::vector<int>>> routes;  // [period][route][stop]
};

struct IrpCost {
    double transport = 0;
    double holding = 0;
    double total() const { return transport + holding; }
};

// Canonical instance document; see docs/instance-formats.md.
IrpInstance parse_instance(const std::string& text);

// Best-effort importer for the legacy single-file benchmark layout
// (n H C header, depot row, then one row per customer with constant demand).
// Experimental: field interpretation documented in docs/instance-formats.md.
IrpInstance parse_legacy_instance(const std::string& text);

IrpCost cost(const IrpInstance& inst, const IrpSolution& sol);

// Forward sweep: order-up-to-max whenever the projected end inventory would
// drop below min; per period, routes by nearest neighbor, splitting when a
// stop would exceed capacity. Throws InfeasibleInstance when a single demand
// cannot be covered by one capacity-limited order-up-to delivery.
IrpSolution initial_solution(const IrpInstance& inst);

dsl::FeatureTable extract_features(int k, const IrpInstance& inst, const IrpSolution& sol);

IrpSolution apply_removal_and_repair(int k, const IrpInstance& inst, const IrpSolution& sol,
                                     const std::vector<std::size_t>& rows);

FeasibilityReport check_feasible(const IrpInstance& inst, const IrpSolution& sol);

// Elements of the inventory feature table, (period, customer) ascending.
std::vector<std::pair<int, int>> delivery_elements(const IrpSolution& sol);
// Elements of the routing feature table: (period, route, position) ascending.
struct VisitRef {
    int period;
    int route;
    int position;
    int customer;
};
std::vector<VisitRef> visit_elements(const IrpSolution& sol);

// CoupledInstance adapter.
class IrpProblem : public CoupledInstance {
  public:
    explicit IrpProblem(IrpInstance instance) : inst_(std::move(instance)) {}

    std::string label() const override { return inst_.name; }
    int subproblem_count() const override { return 2; }
    std::string subproblem_name(int k) const override;
    std::vector<std::string> feature_schema(int k) const override;
    CoupledSolution initial_solution() const override;
    dsl::FeatureTable extract_features(int k, const CoupledSolution& s) const override;
    CoupledSolution destroy_repair(int k, const CoupledSolution& s,
                                   const std::vector<std::size_t>& rows) const override;
    FeasibilityReport check_feasible(const CoupledSolution& s) const override;

    const IrpInstance& instance() const { return inst_; }
    const IrpSolution& solution_of(const CoupledSolution& s) const;

  private:
    CoupledSolution wrap(IrpSolution sol) const;
    IrpInstance inst_;
};

ProblemDescriptor irp_descriptor();

}  // namespace tuplevo::irp

#endif
