#include "tuplevo/dsl/ast.hpp"

#include <algorithm>
#include <utility>

namespace tuplevo::dsl {

ExprRef Expr::num(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number = v;
    return e;
}

ExprRef Expr::feat(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Feature;
    e->feature = std::move(name);
    return e;
}

ExprRef Expr::binary(BinaryOp op, ExprRef lhs, ExprRef rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Binary;
    e->op = op;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
}

ExprRef Expr::negate(ExprRef inner) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Negate;
    e->a = std::move(inner);
    return e;
}

ExprRef Expr::minmax(bool is_min, ExprRef lhs, ExprRef rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::MinMax;
    e->is_min = is_min;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
}

ExprRef Expr::cond(ExprRef c, ExprRef then_e, ExprRef else_e) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::If;
    e->a = std::move(c);
    e->b = std::move(then_e);
    e->c = std::move(else_e);
    return e;
}

ExprRef Expr::rand() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Rand;
    return e;
}

bool equal(const ExprRef& a, const ExprRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Number:
            return a->number == b->number;
        case ExprKind::Feature:
            return a->feature == b->feature;
        case ExprKind::Binary:
            return a->op == b->op && equal(a->a, b->a) && equal(a->b, b->b);
        case ExprKind::Negate:
            return equal(a->a, b->a);
        case ExprKind::MinMax:
            return a->is_min == b->is_min && equal(a->a, b->a) && equal(a->b, b->b);
        case ExprKind::If:
            return equal(a->a, b->a) && equal(a->b, b->b) && equal(a->c, b->c);
        case ExprKind::Rand:
            return true;
    }
    return false;
}

std::size_t node_count(const ExprRef& e) {
    if (!e) return 0;
    return 1 + node_count(e->a) + node_count(e->b) + node_count(e->c);
}

std::size_t depth(const ExprRef& e) {
    if (!e) return 0;
    return 1 + std::max({depth(e->a), depth(e->b), depth(e->c)});
}

void collect_nodes(const ExprRef& e, std::vector<ExprRef>& out) {
    if (!e) return;
    out.push_back(e);
    collect_nodes(e->a, out);
    collect_nodes(e->b, out);
    collect_nodes(e->c, out);
}

namespace {

ExprRef replace_rec(const ExprRef& node, std::size_t& counter, std::size_t index,
                    const ExprRef& replacement) {
    if (!node) return node;
    if (counter == index) {
        ++counter;
        return replacement;
    }
    ++counter;
    ExprRef a = replace_rec(node->a, counter, index, replacement);
    ExprRef b = replace_rec(node->b, counter, index, replacement);
    ExprRef c = replace_rec(node->c, counter, index, replacement);
    if (a == node->a && b == node->b && c == node->c) return node;
    auto copy = std::make_shared<Expr>(*node);
    copy->a = std::move(a);
    copy->b = std::move(b);
    copy->c = std::move(c);
    return copy;
}

}  // namespace

ExprRef replace_node(const ExprRef& root, std::size_t index, const ExprRef& replacement) {
    std::size_t counter = 0;
    return replace_rec(root, counter, index, replacement);
}

}  // namespace tuplevo::dsl
