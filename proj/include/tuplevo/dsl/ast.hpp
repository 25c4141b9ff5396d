#ifndef TUPLEVO_DSL_AST_HPP
#define TUPLEVO_DSL_AST_HPP

#include <memory>
#include <string>
#include <vector>

namespace tuplevo::dsl {

enum class ExprKind { Number, Feature, Binary, Negate, MinMax, If, Rand };

enum class BinaryOp { Add, Sub, Mul, Div, Less, LessEq, Greater, GreaterEq, Equal };

struct Expr;
using ExprRef = std::shared_ptr<const Expr>;

// Immutable expression node. Trees are shared freely; transforms build new
// trees via path copying instead of mutating.
struct Expr {
    ExprKind kind = ExprKind::Number;
    double number = 0.0;       // Number
    std::string feature;       // Feature
    BinaryOp op = BinaryOp::Add;  // Binary
    bool is_min = true;        // MinMax
    ExprRef a, b, c;           // operands; If uses a=cond, b=then, c=else

    static ExprRef num(double v);
    static ExprRef feat(std::string name);
    static ExprRef binary(BinaryOp op, ExprRef lhs, ExprRef rhs);
    static ExprRef negate(ExprRef e);
    static ExprRef minmax(bool is_min, ExprRef lhs, ExprRef rhs);
    static ExprRef cond(ExprRef c, ExprRef then_e, ExprRef else_e);
    static ExprRef rand();
};

bool equal(const ExprRef& a, const ExprRef& b);
std::size_t node_count(const ExprRef& e);
std::size_t depth(const ExprRef& e);

// Pre-order listing of all nodes; index 0 is the root.
void collect_nodes(const ExprRef& e, std::vector<ExprRef>& out);

// Returns a tree equal to `root` except that the node at pre-order position
// `index` is replaced by `replacement`.
ExprRef replace_node(const ExprRef& root, std::size_t index, const ExprRef& replacement);

// Destroy program: removal fraction plus a scoring expression over row features.
struct Program {
    double removal_fraction = 0.05;  // clamped into [0.05, 0.5]
    ExprRef body;

    bool operator==(const Program& other) const {
        return removal_fraction == other.removal_fraction && equal(body, other.body);
    }
};

inline constexpr double kMinRemovalFraction = 0.05;
inline constexpr double kMaxRemovalFraction = 0.5;
inline constexpr std::size_t kMaxAstDepth = 12;
inline constexpr std::size_t kMaxAstNodes = 256;

}  // namespace tuplevo::dsl

#endif
