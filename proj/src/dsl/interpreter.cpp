#include "tuplevo/dsl/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"

namespace tuplevo::dsl {

void FeatureTable::validate() const {
    for (const auto& row : rows) {
        if (row.size() != schema.size()) {
            throw InvariantViolation("feature row length does not match schema");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw InvariantViolation("feature values must be finite");
            }
        }
    }
}

namespace {

struct Binding {
    std::unordered_map<std::string, std::size_t> columns;
};

Binding bind(const ExprRef& e, const std::vector<std::string>& schema) {
    Binding binding;
    for (std::size_t i = 0; i < schema.size(); ++i) binding.columns.emplace(schema[i], i);
    std::vector<ExprRef> nodes;
    collect_nodes(e, nodes);
    for (const auto& node : nodes) {
        if (node->kind == ExprKind::Feature && !binding.columns.contains(node->feature)) {
            throw UnknownFeature("unknown feature '" + node->feature + "'");
        }
    }
    return binding;
}

// Total semantics: any non-finite intermediate result (division by zero,
// overflow) collapses to 0 so that every program scores every row.
double total(double v) { return std::isfinite(v) ? v : 0.0; }

struct RowEval {
    const Binding& binding;
    const std::vector<double>& row;
    Rng rng;
    int steps = 0;
    int budget;

    double eval(const ExprRef& e) {
        if (++steps > budget) {
            throw BudgetExceeded("row evaluation exceeded step budget");
        }
        switch (e->kind) {
            case ExprKind::Number:
                return e->number;
            case ExprKind::Feature:
                return row[binding.columns.at(e->feature)];
            case ExprKind::Binary: {
                double l = eval(e->a);
                double r = eval(e->b);
                switch (e->op) {
                    case BinaryOp::Add: return total(l + r);
                    case BinaryOp::Sub: return total(l - r);
                    case BinaryOp::Mul: return total(l * r);
                    case BinaryOp::Div: return r == 0.0 ? 0.0 : total(l / r);
                    case BinaryOp::Less: return l < r ? 1.0 : 0.0;
                    case BinaryOp::LessEq: return l <= r ? 1.0 : 0.0;
                    case BinaryOp::Greater: return l > r ? 1.0 : 0.0;
                    case BinaryOp::GreaterEq: return l >= r ? 1.0 : 0.0;
                    case BinaryOp::Equal: return l == r ? 1.0 : 0.0;
                }
                return 0.0;
            }
            case ExprKind::Negate:
                return total(-eval(e->a));
            case ExprKind::MinMax: {
                double l = eval(e->a);
                double r = eval(e->b);
                return e->is_min ? std::min(l, r) : std::max(l, r);
            }
            case ExprKind::If:
                return eval(e->a) != 0.0 ? eval(e->b) : eval(e->c);
            case ExprKind::Rand:
                return rng.next_double();
        }
        return 0.0;
    }
};

}  // namespace

std::vector<double> score_rows(const Program& p, const FeatureTable& table,
                               const EvalContext& ctx) {
    if (table.rows.empty()) {
        throw std::invalid_argument("select_removals requires a non-empty feature table");
    }
    if (ctx.step_budget <= 0) {
        throw InvariantViolation("step budget must be positive");
    }
    table.validate();
    Binding binding = bind(p.body, table.schema);
    std::vector<double> scores(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        RowEval ev{binding, table.rows[i],
                   Rng(mix_seed(ctx.seed, static_cast<std::uint64_t>(i))), 0, ctx.step_budget};
        scores[i] = ev.eval(p.body);
    }
    return scores;
}

std::vector<std::size_t> select_removals(const Program& p, const FeatureTable& table,
                                         const EvalContext& ctx) {
    std::vector<double> scores = score_rows(p, table, ctx);
    std::size_t n = scores.size();
    auto count = static_cast<std::size_t>(
        std::ceil(p.removal_fraction * static_cast<double>(n)));
    count = std::max<std::size_t>(1, std::min(count, n));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    order.resize(count);
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace tuplevo::dsl
