#ifndef TUPLEVO_TESTS_IRP_ORACLE_HPP
#define TUPLEVO_TESTS_IRP_ORACLE_HPP

// Exhaustive IRP oracle, independent of the solver code paths it checks.
// Delivery decisions are enumerated as binary patterns over (customer,
// period); a selected delivery tops inventory up to the max level (capped by
// vehicle capacity). Routes are enumerated as every ordered partition of each
// period's visited customers that respects capacity.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tuplevo/irp/irp.hpp"

namespace irp_oracle {

using tuplevo::irp::IrpInstance;

struct PatternResult {
    bool feasible = false;
    std::vector<std::vector<double>> deliveries;  // [customer][period]
    double holding = 0;
};

inline PatternResult simulate_pattern(const IrpInstance& inst,
                                      const std::vector<std::vector<bool>>& pattern) {
    const int C = static_cast<int>(inst.customers.size());
    PatternResult out;
    out.deliveries.assign(C, std::vector<double>(inst.horizon, 0.0));
    for (int c = 0; c < C; ++c) {
        const auto& cust = inst.customers[c];
        double inv = cust.start;
        for (int t = 0; t < inst.horizon; ++t) {
            if (pattern[c][t]) {
                double q = std::min(cust.max_level - inv, inst.capacity);
                if (q <= 1e-9) return out;  // degenerate visit; covered by another pattern
                out.deliveries[c][t] = q;
                inv += q;
            }
            inv -= cust.demand[t];
            if (inv < cust.min_level - 1e-9) return out;
            out.holding += cust.holding * inv;
        }
    }
    out.feasible = true;
    return out;
}

// Transport cost of one ordered route (depot -> stops -> depot).
inline double route_cost(const IrpInstance& inst, const std::vector<int>& route) {
    double total = 0;
    int prev = -1;
    for (int c : route) {
        total += inst.dist(prev, c);
        prev = c;
    }
    total += inst.dist(prev, -1);
    return total;
}

// All transport costs achievable for one period: every permutation of the
// visited customers with every way of cutting it into capacity-respecting
// routes.
inline void period_costs(const IrpInstance& inst, const std::vector<int>& visited,
                         const std::vector<double>& quantities, std::vector<double>& out) {
    if (visited.empty()) {
        out.push_back(0.0);
        return;
    }
    std::vector<int> perm = visited;
    std::sort(perm.begin(), perm.end());
    do {
        const int n = static_cast<int>(perm.size());
        for (unsigned cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
            double total = 0;
            bool ok = true;
            std::vector<int> route;
            double load = 0;
            for (int i = 0; i < n && ok; ++i) {
                route.push_back(perm[i]);
                load += quantities[perm[i]];
                if (load > inst.capacity + 1e-9) ok = false;
                bool cut = i == n - 1 || (cuts & (1u << i));
                if (cut) {
                    total += route_cost(inst, route);
                    route.clear();
                    load = 0;
                }
            }
            if (ok) out.push_back(total);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

inline double min_period_cost(const IrpInstance& inst, const std::vector<int>& visited,
                              const std::vector<double>& quantities) {
    std::vector<double> costs;
    period_costs(inst, visited, quantities, costs);
    double best = std::numeric_limits<double>::infinity();
    for (double c : costs) best = std::min(best, c);
    return best;
}

struct OracleResult {
    double best_cost = std::numeric_limits<double>::infinity();
    // every (pattern, route combination) cost, for membership checks
    std::vector<double> all_costs;
};

inline OracleResult enumerate(const IrpInstance& inst, bool collect_all = false) {
    const int C = static_cast<int>(inst.customers.size());
    const int H = inst.horizon;
    const int bits = C * H;
    OracleResult result;
    for (unsigned long long mask = 0; mask < (1ull << bits); ++mask) {
        std::vector<std::vector<bool>> pattern(C, std::vector<bool>(H, false));
        for (int b = 0; b < bits; ++b) {
            if (mask & (1ull << b)) pattern[b / H][b % H] = true;
        }
        PatternResult sim = simulate_pattern(inst, pattern);
        if (!sim.feasible) continue;
        double transport_best = 0;
        bool ok = true;
        std::vector<std::vector<double>> per_period_costs(H);
        for (int t = 0; t < H && ok; ++t) {
            std::vector<int> visited;
            std::vector<double> quantities(C, 0.0);
            for (int c = 0; c < C; ++c) {
                if (sim.deliveries[c][t] > 0) {
                    visited.push_back(c);
                    quantities[c] = sim.deliveries[c][t];
                }
            }
            if (collect_all) {
                period_costs(inst, visited, quantities, per_period_costs[t]);
                if (per_period_costs[t].empty()) ok = false;
            }
            double best = min_period_cost(inst, visited, quantities);
            if (!std::isfinite(best)) ok = false;
            transport_best += best;
        }
        if (!ok) continue;
        result.best_cost = std::min(result.best_cost, sim.holding + transport_best);
        if (collect_all) {
            // cartesian product of per-period route costs
            std::vector<double> partial = {sim.holding};
            for (int t = 0; t < H; ++t) {
                std::vector<double> next;
                for (double base : partial) {
                    for (double c : per_period_costs[t]) next.push_back(base + c);
                }
                partial = std::move(next);
                if (partial.size() > 2'000'000) {
                    partial.resize(2'000'000);  // guardrail; fixtures stay far below
                }
            }
            for (double c : partial) result.all_costs.push_back(c);
        }
    }
    std::sort(result.all_costs.begin(), result.all_costs.end());
    return result;
}

inline bool contains(const std::vector<double>& sorted, double value, double tol = 1e-6) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), value - tol);
    return it != sorted.end() && *it <= value + tol;
}

}  // namespace irp_oracle

#endif
