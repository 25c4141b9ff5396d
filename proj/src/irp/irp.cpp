#include "tuplevo/irp/irp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tuplevo/core/errors.hpp"

namespace tuplevo::irp {

namespace {

constexpr double kEps = 1e-9;

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_number(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError(std::string("expected a number for ") + what + ", got '" + tok + "'");
    }
}

double route_load(const IrpInstance& inst, const IrpSolution& sol, int t,
                  const std::vector<int>& route) {
    (void)inst;
    double load = 0;
    for (int c : route) load += sol.deliveries[c][t];
    return load;
}

// Cheapest feasible insertion of customer c with quantity q into the routes
// of period t. Returns false when no existing route can take the load.
bool cheapest_insertion(const IrpInstance& inst, IrpSolution& sol, int t, int c, double q) {
    double best_delta = std::numeric_limits<double>::infinity();
    int best_route = -1;
    std::size_t best_pos = 0;
    auto& routes = sol.routes[t];
    for (std::size_t r = 0; r < routes.size(); ++r) {
        if (route_load(inst, sol, t, routes[r]) + q > inst.capacity + kEps) continue;
        const auto& stops = routes[r];
        for (std::size_t pos = 0; pos <= stops.size(); ++pos) {
            int prev = pos == 0 ? -1 : stops[pos - 1];
            int next = pos == stops.size() ? -1 : stops[pos];
            double delta = inst.dist(prev, c) + inst.dist(c, next) - inst.dist(prev, next);
            if (delta < best_delta - kEps) {
                best_delta = delta;
                best_route = static_cast<int>(r);
                best_pos = pos;
            }
        }
    }
    if (best_route < 0) return false;
    routes[static_cast<std::size_t>(best_route)].insert(
        routes[static_cast<std::size_t>(best_route)].begin() +
            static_cast<std::ptrdiff_t>(best_pos),
        c);
    return true;
}

void remove_visit(IrpSolution& sol, int t, int c) {
    auto& routes = sol.routes[t];
    for (std::size_t r = 0; r < routes.size(); ++r) {
        auto it = std::find(routes[r].begin(), routes[r].end(), c);
        if (it != routes[r].end()) {
            routes[r].erase(it);
            if (routes[r].empty()) routes.erase(routes.begin() + static_cast<std::ptrdiff_t>(r));
            return;
        }
    }
}

bool has_visit(const IrpSolution& sol, int t, int c) {
    for (const auto& route : sol.routes[t]) {
        if (std::find(route.begin(), route.end(), c) != route.end()) return true;
    }
    return false;
}

// Inventory simulation for one customer; returns the first period whose
// end-of-period level violates min, or -1 when the trajectory is clean.
int first_violation(const IrpInstance& inst, const Customer& cust,
                    const std::vector<double>& q) {
    double inv = cust.start;
    for (int t = 0; t < inst.horizon; ++t) {
        inv += q[static_cast<std::size_t>(t)];
        inv -= cust.demand[static_cast<std::size_t>(t)];
        if (inv < cust.min_level - kEps) return t;
    }
    return -1;
}

// Repairs the inventory trajectory of one customer. Trims deliveries that
// would exceed the max level and tops up at the latest period whose routes
// have capacity headroom; when no period has headroom, opens a new route at
// the stockout period itself.
void repair_customer(const IrpInstance& inst, IrpSolution& sol, int c) {
    const Customer& cust = inst.customers[static_cast<std::size_t>(c)];
    for (int pass = 0; pass <= inst.horizon + 1; ++pass) {
        // trim overfull deliveries in a forward pass
        double inv = cust.start;
        for (int t = 0; t < inst.horizon; ++t) {
            double q = sol.deliveries[c][t];
            if (q > 0 && inv + q > cust.max_level + kEps) {
                double trimmed = std::max(0.0, cust.max_level - inv);
                sol.deliveries[c][t] = trimmed;
                if (trimmed <= kEps) {
                    sol.deliveries[c][t] = 0;
                    remove_visit(sol, t, c);
                }
            }
            inv += sol.deliveries[c][t] - cust.demand[static_cast<std::size_t>(t)];
        }

        int violated = first_violation(inst, cust, sol.deliveries[c]);
        if (violated < 0) return;

        // inventory entering each period, needed for order-up-to amounts
        std::vector<double> entering(static_cast<std::size_t>(inst.horizon));
        inv = cust.start;
        for (int t = 0; t < inst.horizon; ++t) {
            entering[static_cast<std::size_t>(t)] = inv;
            inv += sol.deliveries[c][t] - cust.demand[static_cast<std::size_t>(t)];
        }

        bool committed = false;
        for (int tp = violated; tp >= 0 && !committed; --tp) {
            double up_to = std::min(cust.max_level - entering[static_cast<std::size_t>(tp)],
                                    inst.capacity);
            double old_q = sol.deliveries[c][tp];
            double delta = up_to - old_q;
            if (delta <= kEps) continue;

            // does raising at tp resolve the stockout at `violated`?
            double level = entering[static_cast<std::size_t>(tp)] + up_to;
            bool covers = true;
            for (int u = tp; u <= violated; ++u) {
                if (u > tp) {
                    level += std::min(sol.deliveries[c][u],
                                      std::max(0.0, cust.max_level - level));
                }
                level = std::min(level, cust.max_level);
                level -= cust.demand[static_cast<std::size_t>(u)];
                if (level < cust.min_level - kEps) {
                    covers = false;
                    break;
                }
            }
            if (!covers) continue;

            if (old_q > 0) {
                // raise the existing delivery if its route has headroom
                bool placed = false;
                for (auto& route : sol.routes[tp]) {
                    if (std::find(route.begin(), route.end(), c) == route.end()) continue;
                    if (route_load(inst, sol, tp, route) + delta <= inst.capacity + kEps) {
                        sol.deliveries[c][tp] = up_to;
                        placed = true;
                    }
                    break;
                }
                if (!placed && tp == violated) {
                    // fallback: move the visit onto a fresh route
                    remove_visit(sol, tp, c);
                    sol.deliveries[c][tp] = up_to;
                    if (!cheapest_insertion(inst, sol, tp, c, up_to)) {
                        sol.routes[tp].push_back({c});
                    }
                    placed = true;
                }
                committed = placed;
            } else {
                double probe = sol.deliveries[c][tp];
                sol.deliveries[c][tp] = up_to;
                if (cheapest_insertion(inst, sol, tp, c, up_to)) {
                    committed = true;
                } else if (tp == violated) {
                    sol.routes[tp].push_back({c});
                    committed = true;
                } else {
                    sol.deliveries[c][tp] = probe;
                }
            }
        }
        if (!committed) {
            throw RepairFailure("cannot cover demand of customer " + std::to_string(cust.id) +
                                " in period " + std::to_string(violated + 1));
        }
    }
    throw RepairFailure("inventory repair did not converge");
}

void repair_inventory(const IrpInstance& inst, IrpSolution& sol) {
    for (int c = 0; c < static_cast<int>(inst.customers.size()); ++c) {
        repair_customer(inst, sol, c);
    }
}

}  // namespace

double IrpInstance::dist(int a, int b) const {
    double ax = a < 0 ? depot_x : customers[static_cast<std::size_t>(a)].x;
    double ay = a < 0 ? depot_y : customers[static_cast<std::size_t>(a)].y;
    double bx = b < 0 ? depot_x : customers[static_cast<std::size_t>(b)].x;
    double by = b < 0 ? depot_y : customers[static_cast<std::size_t>(b)].y;
    return std::hypot(ax - bx, ay - by);
}

IrpInstance parse_instance(const std::string& text) {
    IrpInstance inst;
    std::istringstream in(text);
    std::string line;
    bool saw_magic = false;
    bool saw_depot = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!saw_magic) {
            if (toks[0] != "irp") throw FormatError("instance must start with 'irp'");
            saw_magic = true;
            if (toks.size() > 1) inst.name = toks[1];
            continue;
        }
        if (toks[0] == "horizon") {
            if (toks.size() != 2) throw FormatError("horizon takes one value");
            inst.horizon = static_cast<int>(to_number(toks[1], "horizon"));
        } else if (toks[0] == "capacity") {
            if (toks.size() != 2) throw FormatError("capacity takes one value");
            inst.capacity = to_number(toks[1], "capacity");
        } else if (toks[0] == "depot") {
            if (inst.horizon <= 0) throw FormatError("horizon must precede depot");
            if (toks.size() != 3 + static_cast<std::size_t>(inst.horizon)) {
                throw FormatError("depot line needs x y and one production value per period");
            }
            inst.depot_x = to_number(toks[1], "depot x");
            inst.depot_y = to_number(toks[2], "depot y");
            for (int t = 0; t < inst.horizon; ++t) {
                inst.production.push_back(to_number(toks[3 + static_cast<std::size_t>(t)],
                                                    "production"));
            }
            saw_depot = true;
        } else if (toks[0] == "customer") {
            if (inst.horizon <= 0) throw FormatError("horizon must precede customers");
            if (toks.size() != 8 + static_cast<std::size_t>(inst.horizon)) {
                throw FormatError(
                    "customer line needs id x y start min max holding and one demand per period");
            }
            Customer c;
            c.id = static_cast<int>(to_number(toks[1], "customer id"));
            c.x = to_number(toks[2], "customer x");
            c.y = to_number(toks[3], "customer y");
            c.start = to_number(toks[4], "start inventory");
            c.min_level = to_number(toks[5], "min level");
            c.max_level = to_number(toks[6], "max level");
            c.holding = to_number(toks[7], "holding cost");
            for (int t = 0; t < inst.horizon; ++t) {
                c.demand.push_back(to_number(toks[8 + static_cast<std::size_t>(t)], "demand"));
            }
            inst.customers.push_back(std::move(c));
        } else {
            throw FormatError("unknown record '" + toks[0] + "'");
        }
    }
    if (!saw_magic) throw FormatError("empty instance document");
    if (inst.horizon < 1) throw InvariantViolation("horizon must be >= 1");
    if (inst.capacity <= 0) throw InvariantViolation("capacity must be > 0");
    if (!saw_depot) throw FormatError("missing depot record");
    for (const auto& c : inst.customers) {
        if (c.min_level > c.start + kEps || c.start > c.max_level + kEps) {
            throw InvariantViolation("customer " + std::to_string(c.id) +
                                     " start inventory outside [min, max]");
        }
        for (double d : c.demand) {
            if (d < 0) throw InvariantViolation("demands must be >= 0");
        }
    }
    return inst;
}

IrpInstance parse_legacy_instance(const std::string& text) {
    std::istringstream in(text);
    double n = 0, h = 0, q = 0;
    if (!(in >> n >> h >> q)) throw FormatError("legacy header must be: nodes horizon capacity");
    IrpInstance inst;
    inst.name = "legacy";
    inst.horizon = static_cast<int>(h);
    inst.capacity = q;
    double id, x, y, start, production, holding;
    if (!(in >> id >> x >> y >> start >> production >> holding)) {
        throw FormatError("legacy depot row must be: id x y start production holding");
    }
    inst.depot_x = x;
    inst.depot_y = y;
    inst.production.assign(static_cast<std::size_t>(inst.horizon), production);
    for (int i = 1; i < static_cast<int>(n); ++i) {
        double cid, cx, cy, cstart, cmax, cmin, demand, chold;
        if (!(in >> cid >> cx >> cy >> cstart >> cmax >> cmin >> demand >> chold)) {
            throw FormatError("legacy customer row must be: id x y start max min demand holding");
        }
        Customer c;
        c.id = static_cast<int>(cid);
        c.x = cx;
        c.y = cy;
        c.start = cstart;
        c.max_level = cmax;
        c.min_level = cmin;
        c.holding = chold;
        c.demand.assign(static_cast<std::size_t>(inst.horizon), demand);
        inst.customers.push_back(std::move(c));
    }
    if (inst.horizon < 1) throw InvariantViolation("horizon must be >= 1");
    if (inst.capacity <= 0) throw InvariantViolation("capacity must be > 0");
    return inst;
}

IrpCost cost(const IrpInstance& inst, const IrpSolution& sol) {
    IrpCost out;
    for (int t = 0; t < inst.horizon; ++t) {
        for (const auto& route : sol.routes[t]) {
            int prev = -1;
            for (int c : route) {
                out.transport += inst.dist(prev, c);
                prev = c;
            }
            out.transport += inst.dist(prev, -1);
        }
    }
    for (std::size_t i = 0; i < inst.customers.size(); ++i) {
        const Customer& cust = inst.customers[i];
        double inv = cust.start;
        for (int t = 0; t < inst.horizon; ++t) {
            inv += sol.deliveries[i][static_cast<std::size_t>(t)];
            inv -= cust.demand[static_cast<std::size_t>(t)];
            out.holding += cust.holding * inv;
        }
    }
    return out;
}

IrpSolution initial_solution(const IrpInstance& inst) {
    const int C = static_cast<int>(inst.customers.size());
    IrpSolution sol;
    sol.deliveries.assign(static_cast<std::size_t>(C),
                          std::vector<double>(static_cast<std::size_t>(inst.horizon), 0.0));
    sol.routes.assign(static_cast<std::size_t>(inst.horizon), {});

    std::vector<double> inv(static_cast<std::size_t>(C));
    for (int c = 0; c < C; ++c) inv[static_cast<std::size_t>(c)] = inst.customers[static_cast<std::size_t>(c)].start;

    for (int t = 0; t < inst.horizon; ++t) {
        std::vector<int> pending;
        for (int c = 0; c < C; ++c) {
            const Customer& cust = inst.customers[static_cast<std::size_t>(c)];
            double demand = cust.demand[static_cast<std::size_t>(t)];
            if (inv[static_cast<std::size_t>(c)] - demand < cust.min_level - kEps) {
                double q = std::min(cust.max_level - inv[static_cast<std::size_t>(c)],
                                    inst.capacity);
                if (inv[static_cast<std::size_t>(c)] + q - demand < cust.min_level - kEps) {
                    throw InfeasibleInstance(
                        "demand of customer " + std::to_string(cust.id) + " in period " +
                        std::to_string(t + 1) + " exceeds deliverable headroom");
                }
                sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)] = q;
                pending.push_back(c);
            }
        }
        // nearest-neighbor routes over this period's deliveries
        std::vector<bool> routed(static_cast<std::size_t>(C), false);
        std::size_t remaining = pending.size();
        while (remaining > 0) {
            std::vector<int> route;
            double load = 0;
            int pos = -1;
            while (true) {
                int best = -1;
                double best_dist = std::numeric_limits<double>::infinity();
                for (int c : pending) {
                    if (routed[static_cast<std::size_t>(c)]) continue;
                    double q = sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)];
                    if (load + q > inst.capacity + kEps) continue;
                    double d = inst.dist(pos, c);
                    if (d < best_dist - kEps) {
                        best_dist = d;
                        best = c;
                    }
                }
                if (best < 0) break;
                route.push_back(best);
                routed[static_cast<std::size_t>(best)] = true;
                load += sol.deliveries[static_cast<std::size_t>(best)][static_cast<std::size_t>(t)];
                pos = best;
                --remaining;
            }
            if (route.empty()) {
                throw InfeasibleInstance("a single delivery exceeds vehicle capacity");
            }
            sol.routes[static_cast<std::size_t>(t)].push_back(std::move(route));
        }
        for (int c = 0; c < C; ++c) {
            inv[static_cast<std::size_t>(c)] +=
                sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)] -
                inst.customers[static_cast<std::size_t>(c)].demand[static_cast<std::size_t>(t)];
        }
    }
    return sol;
}

std::vector<std::pair<int, int>> delivery_elements(const IrpSolution& sol) {
    std::vector<std::pair<int, int>> out;
    const int H = static_cast<int>(sol.routes.size());
    const int C = static_cast<int>(sol.deliveries.size());
    for (int t = 0; t < H; ++t) {
        for (int c = 0; c < C; ++c) {
            if (sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)] > 0) {
                out.emplace_back(t, c);
            }
        }
    }
    return out;
}

std::vector<VisitRef> visit_elements(const IrpSolution& sol) {
    std::vector<VisitRef> out;
    for (int t = 0; t < static_cast<int>(sol.routes.size()); ++t) {
        const auto& routes = sol.routes[static_cast<std::size_t>(t)];
        for (int r = 0; r < static_cast<int>(routes.size()); ++r) {
            for (int p = 0; p < static_cast<int>(routes[static_cast<std::size_t>(r)].size()); ++p) {
                out.push_back({t, r, p, routes[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)]});
            }
        }
    }
    return out;
}

dsl::FeatureTable extract_features(int k, const IrpInstance& inst, const IrpSolution& sol) {
    dsl::FeatureTable table;
    if (k == kInventory) {
        table.schema = {"quantity", "inv_before", "holding_cost", "dist_depot", "period",
                        "slack"};
        for (auto [t, c] : delivery_elements(sol)) {
            const Customer& cust = inst.customers[static_cast<std::size_t>(c)];
            double inv_before = cust.start;
            for (int u = 0; u < t; ++u) {
                inv_before += sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(u)] -
                              cust.demand[static_cast<std::size_t>(u)];
            }
            // slack: periods until a stockout if this delivery were dropped
            double inv = inv_before;
            int slack = inst.horizon - t;
            for (int u = t; u < inst.horizon; ++u) {
                if (u != t) inv += sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(u)];
                inv -= cust.demand[static_cast<std::size_t>(u)];
                if (inv < cust.min_level - kEps) {
                    slack = u - t;
                    break;
                }
            }
            table.rows.push_back({sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)],
                                  inv_before, cust.holding, inst.dist_depot(c),
                                  static_cast<double>(t + 1), static_cast<double>(slack)});
        }
    } else if (k == kRouting) {
        table.schema = {"detour", "quantity", "route_load_ratio", "position", "dist_depot"};
        for (const VisitRef& v : visit_elements(sol)) {
            const auto& route = sol.routes[static_cast<std::size_t>(v.period)][static_cast<std::size_t>(v.route)];
            int prev = v.position == 0 ? -1 : route[static_cast<std::size_t>(v.position - 1)];
            int next = v.position + 1 == static_cast<int>(route.size())
                           ? -1
                           : route[static_cast<std::size_t>(v.position + 1)];
            double detour = inst.dist(prev, v.customer) + inst.dist(v.customer, next) -
                            inst.dist(prev, next);
            double load = 0;
            for (int c : route) load += sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(v.period)];
            table.rows.push_back(
                {detour,
                 sol.deliveries[static_cast<std::size_t>(v.customer)][static_cast<std::size_t>(v.period)],
                 load / inst.capacity, static_cast<double>(v.position + 1),
                 inst.dist_depot(v.customer)});
        }
    } else {
        throw IndexOutOfRange("IRP subproblem index must be 1 or 2");
    }
    return table;
}

IrpSolution apply_removal_and_repair(int k, const IrpInstance& inst, const IrpSolution& sol,
                                     const std::vector<std::size_t>& rows) {
    IrpSolution out = sol;
    if (k == kInventory) {
        auto elements = delivery_elements(sol);
        for (std::size_t row : rows) {
            if (row >= elements.size()) throw IndexOutOfRange("delivery row out of range");
            auto [t, c] = elements[row];
            out.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)] = 0;
            remove_visit(out, t, c);
        }
        repair_inventory(inst, out);
    } else if (k == kRouting) {
        auto elements = visit_elements(sol);
        struct Removed {
            int period;
            int customer;
            double quantity;
        };
        std::vector<Removed> removed;
        for (std::size_t row : rows) {
            if (row >= elements.size()) throw IndexOutOfRange("visit row out of range");
            const VisitRef& v = elements[row];
            removed.push_back(
                {v.period, v.customer,
                 sol.deliveries[static_cast<std::size_t>(v.customer)][static_cast<std::size_t>(v.period)]});
        }
        for (const Removed& r : removed) remove_visit(out, r.period, r.customer);
        std::sort(removed.begin(), removed.end(), [](const Removed& a, const Removed& b) {
            if (a.quantity != b.quantity) return a.quantity > b.quantity;
            if (a.period != b.period) return a.period < b.period;
            return a.customer < b.customer;
        });
        for (const Removed& r : removed) {
            if (!cheapest_insertion(inst, out, r.period, r.customer, r.quantity)) {
                out.routes[static_cast<std::size_t>(r.period)].push_back({r.customer});
            }
        }
    } else {
        throw IndexOutOfRange("IRP subproblem index must be 1 or 2");
    }
    return out;
}

FeasibilityReport check_feasible(const IrpInstance& inst, const IrpSolution& sol) {
    FeasibilityReport report;
    const int C = static_cast<int>(inst.customers.size());
    if (static_cast<int>(sol.deliveries.size()) != C ||
        static_cast<int>(sol.routes.size()) != inst.horizon) {
        report.issues.push_back({"StructureViolation", "solution shape does not match instance"});
        return report;
    }
    for (int c = 0; c < C; ++c) {
        const Customer& cust = inst.customers[static_cast<std::size_t>(c)];
        double inv = cust.start;
        for (int t = 0; t < inst.horizon; ++t) {
            double q = sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)];
            if (q < -kEps) {
                report.issues.push_back({"NegativeDelivery",
                                         "customer " + std::to_string(cust.id) + " period " +
                                             std::to_string(t + 1)});
            }
            inv += q;
            if (inv > cust.max_level + 1e-6) {
                report.issues.push_back({"InventoryAboveMax",
                                         "customer " + std::to_string(cust.id) + " period " +
                                             std::to_string(t + 1)});
            }
            inv -= cust.demand[static_cast<std::size_t>(t)];
            if (inv < cust.min_level - 1e-6) {
                report.issues.push_back({"InventoryBelowMin",
                                         "customer " + std::to_string(cust.id) + " period " +
                                             std::to_string(t + 1)});
            }
        }
    }
    for (int t = 0; t < inst.horizon; ++t) {
        std::vector<int> visits(static_cast<std::size_t>(C), 0);
        for (const auto& route : sol.routes[static_cast<std::size_t>(t)]) {
            double load = 0;
            for (int c : route) {
                load += sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)];
                ++visits[static_cast<std::size_t>(c)];
            }
            if (load > inst.capacity + 1e-6) {
                report.issues.push_back({"CapacityViolation",
                                         "period " + std::to_string(t + 1) + " route load " +
                                             std::to_string(load)});
            }
        }
        for (int c = 0; c < C; ++c) {
            double q = sol.deliveries[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)];
            int n = visits[static_cast<std::size_t>(c)];
            if (q > kEps && n != 1) {
                report.issues.push_back({"ConsistencyViolation",
                                         "delivery without exactly one visit: customer " +
                                             std::to_string(inst.customers[static_cast<std::size_t>(c)].id) +
                                             " period " + std::to_string(t + 1)});
            }
            if (q <= kEps && n > 0) {
                report.issues.push_back({"ConsistencyViolation",
                                         "visit without delivery: customer " +
                                             std::to_string(inst.customers[static_cast<std::size_t>(c)].id) +
                                             " period " + std::to_string(t + 1)});
            }
        }
    }
    return report;
}

namespace {

struct IrpState : SolutionState {
    IrpSolution sol;
};

}  // namespace

std::string IrpProblem::subproblem_name(int k) const {
    if (k == kInventory) return "inventory";
    if (k == kRouting) return "routing";
    throw IndexOutOfRange("IRP subproblem index must be 1 or 2");
}

std::vector<std::string> IrpProblem::feature_schema(int k) const {
    if (k == kInventory) {
        return {"quantity", "inv_before", "holding_cost", "dist_depot", "period", "slack"};
    }
    if (k == kRouting) {
        return {"detour", "quantity", "route_load_ratio", "position", "dist_depot"};
    }
    throw IndexOutOfRange("IRP subproblem index must be 1 or 2");
}

const IrpSolution& IrpProblem::solution_of(const CoupledSolution& s) const {
    auto ptr = std::dynamic_pointer_cast<const IrpState>(s.state);
    if (!ptr) throw InvariantViolation("solution state is not an IRP state");
    return ptr->sol;
}

CoupledSolution IrpProblem::wrap(IrpSolution sol) const {
    auto state = std::make_shared<IrpState>();
    state->sol = std::move(sol);
    CoupledSolution out;
    out.objective = cost(inst_, state->sol).total();
    auto report = irp::check_feasible(inst_, state->sol);
    out.feasible = report.ok();
    for (const auto& issue : report.issues) out.violations.push_back(issue.code);
    out.state = std::move(state);
    return out;
}

CoupledSolution IrpProblem::initial_solution() const {
    return wrap(irp::initial_solution(inst_));
}

dsl::FeatureTable IrpProblem::extract_features(int k, const CoupledSolution& s) const {
    return irp::extract_features(k, inst_, solution_of(s));
}

CoupledSolution IrpProblem::destroy_repair(int k, const CoupledSolution& s,
                                           const std::vector<std::size_t>& rows) const {
    return wrap(apply_removal_and_repair(k, inst_, solution_of(s), rows));
}

FeasibilityReport IrpProblem::check_feasible(const CoupledSolution& s) const {
    return irp::check_feasible(inst_, solution_of(s));
}

ProblemDescriptor irp_descriptor() {
    ProblemDescriptor d;
    d.name = "irp";
    d.subproblem_count = 2;
    d.subproblem_names = {"inventory", "routing"};
    d.fitness_mode = FitnessMode::RelativeGap;
    d.seed_components = {
        {"rho=0.2; score = quantity", "remove the largest deliveries first"},
        {"rho=0.2; score = quantity", "remove visits carrying the most load"},
    };
    return d;
}

}  // namespace tuplevo::irp
