#include "tuplevo/dsl/transform.hpp"

#include <algorithm>
#include <cmath>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"

namespace tuplevo::dsl {

namespace {

double clamp_rho(double v) {
    return std::min(kMaxRemovalFraction, std::max(kMinRemovalFraction, v));
}

double pick_constant(Rng& rng) {
    static constexpr double pool[] = {0.5, 1.0, 2.0, 3.0, 5.0, 10.0};
    if (rng.next_double() < 0.5) {
        return pool[rng.uniform_index(std::size(pool))];
    }
    // one-decimal constant in (0, 10]
    return static_cast<double>(rng.uniform_index(100) + 1) / 10.0;
}

ExprRef gen_leaf(Rng& rng, const std::vector<std::string>& schema) {
    double roll = rng.next_double();
    if (!schema.empty() && roll < 0.6) {
        return Expr::feat(schema[rng.uniform_index(schema.size())]);
    }
    if (roll < 0.85 || schema.empty()) {
        return Expr::num(pick_constant(rng));
    }
    return Expr::rand();
}

ExprRef gen_expr(Rng& rng, const std::vector<std::string>& schema, std::size_t depth_budget) {
    if (depth_budget <= 1) return gen_leaf(rng, schema);
    double roll = rng.next_double();
    if (roll < 0.30) return gen_leaf(rng, schema);
    if (roll < 0.70) {
        static constexpr BinaryOp arith[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul,
                                             BinaryOp::Div};
        BinaryOp op = arith[rng.uniform_index(std::size(arith))];
        ExprRef a = gen_expr(rng, schema, depth_budget - 1);
        ExprRef b = gen_expr(rng, schema, depth_budget - 1);
        return Expr::binary(op, a, b);
    }
    if (roll < 0.82) {
        bool is_min = rng.next_double() < 0.5;
        ExprRef a = gen_expr(rng, schema, depth_budget - 1);
        ExprRef b = gen_expr(rng, schema, depth_budget - 1);
        return Expr::minmax(is_min, a, b);
    }
    if (roll < 0.90) {
        return Expr::negate(gen_expr(rng, schema, depth_budget - 1));
    }
    // comparison condition keeps if() branches meaningful
    static constexpr BinaryOp cmp[] = {BinaryOp::Less, BinaryOp::LessEq, BinaryOp::Greater,
                                       BinaryOp::GreaterEq};
    if (depth_budget < 3) return gen_leaf(rng, schema);
    ExprRef lhs = gen_leaf(rng, schema);
    ExprRef rhs = gen_leaf(rng, schema);
    ExprRef cond = Expr::binary(cmp[rng.uniform_index(std::size(cmp))], lhs, rhs);
    ExprRef then_e = gen_expr(rng, schema, depth_budget - 2);
    ExprRef else_e = gen_expr(rng, schema, depth_budget - 2);
    return Expr::cond(cond, then_e, else_e);
}

bool within_caps(const ExprRef& e) {
    return depth(e) <= kMaxAstDepth && node_count(e) <= kMaxAstNodes;
}

Program generate(Rng& rng, const std::vector<std::string>& schema) {
    Program p;
    p.removal_fraction = clamp_rho(0.05 + 0.45 * rng.next_double());
    std::size_t budget = 5;
    ExprRef body = gen_expr(rng, schema, budget);
    while (!within_caps(body) && budget > 1) {
        --budget;
        body = gen_expr(rng, schema, budget);
    }
    p.body = within_caps(body) ? body : gen_leaf(rng, schema);
    return p;
}

Program mutate(const Program& parent, Rng& rng, const std::vector<std::string>& schema) {
    Program out = parent;
    double roll = rng.next_double();
    if (roll < 0.2) {
        out.removal_fraction = clamp_rho(parent.removal_fraction * rng.uniform(0.5, 2.0));
    }
    std::vector<ExprRef> nodes;
    collect_nodes(parent.body, nodes);
    std::size_t target = rng.uniform_index(nodes.size());
    ExprRef fresh = gen_expr(rng, schema, 3);
    ExprRef body = replace_node(parent.body, target, fresh);
    if (!within_caps(body)) {
        body = replace_node(parent.body, target, gen_leaf(rng, schema));
    }
    out.body = within_caps(body) ? body : parent.body;
    return out;
}

Program crossover(const std::vector<Program>& parents, Rng& rng) {
    const Program& base = parents[0];
    const Program& donor = parents[1 + rng.uniform_index(parents.size() - 1)];
    Program out;
    out.removal_fraction =
        rng.next_double() < 0.5 ? base.removal_fraction : donor.removal_fraction;
    std::vector<ExprRef> base_nodes;
    collect_nodes(base.body, base_nodes);
    std::vector<ExprRef> donor_nodes;
    collect_nodes(donor.body, donor_nodes);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::size_t at = rng.uniform_index(base_nodes.size());
        ExprRef graft = donor_nodes[rng.uniform_index(donor_nodes.size())];
        ExprRef body = replace_node(base.body, at, graft);
        if (within_caps(body)) {
            out.body = body;
            return out;
        }
    }
    out.body = base.body;
    return out;
}

ExprRef perturb_rec(const ExprRef& e, Rng& rng) {
    if (!e) return e;
    if (e->kind == ExprKind::Number) {
        return Expr::num(e->number * rng.uniform(0.5, 2.0));
    }
    ExprRef a = perturb_rec(e->a, rng);
    ExprRef b = perturb_rec(e->b, rng);
    ExprRef c = perturb_rec(e->c, rng);
    if (a == e->a && b == e->b && c == e->c) return e;
    auto copy = std::make_shared<Expr>(*e);
    copy->a = a;
    copy->b = b;
    copy->c = c;
    return copy;
}

Program perturb_constants(const Program& parent, Rng& rng) {
    Program out;
    out.removal_fraction = clamp_rho(parent.removal_fraction * rng.uniform(0.5, 2.0));
    out.body = perturb_rec(parent.body, rng);
    return out;
}

}  // namespace

Program transform(TransformKind kind, const std::vector<Program>& parents, std::uint64_t seed,
                  const std::vector<std::string>& schema) {
    Rng rng(mix_seed(seed, 0x7e5u));
    switch (kind) {
        case TransformKind::Generate:
            if (!parents.empty()) throw ArityError("generate takes no parents");
            return generate(rng, schema);
        case TransformKind::Mutate:
            if (parents.size() != 1) throw ArityError("mutate takes exactly one parent");
            return mutate(parents[0], rng, schema);
        case TransformKind::Crossover:
            if (parents.size() < 2) throw ArityError("crossover takes at least two parents");
            return crossover(parents, rng);
        case TransformKind::PerturbConstants:
            if (parents.size() != 1)
                throw ArityError("perturb_constants takes exactly one parent");
            return perturb_constants(parents[0], rng);
    }
    throw ArityError("unknown transform kind");
}

}  // namespace tuplevo::dsl
