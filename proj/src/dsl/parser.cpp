#include "tuplevo/dsl/parser.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <string>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"

namespace tuplevo::dsl {

namespace {

enum class TokKind { Ident, Number, Symbol, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double value = 0.0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        current_ = Token{};
        current_.line = line_;
        current_.column = col_;
        if (pos_ >= src_.size()) {
            current_.kind = TokKind::End;
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            current_.kind = TokKind::Ident;
            current_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            const char* begin = src_.data() + pos_;
            const char* end = src_.data() + src_.size();
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc{} || !std::isfinite(value)) {
                throw SyntaxError("malformed number", line_, col_);
            }
            std::size_t len = static_cast<std::size_t>(ptr - begin);
            current_.kind = TokKind::Number;
            current_.text = std::string(src_.substr(pos_, len));
            current_.value = value;
            pos_ += len;
            col_ += len;
            return;
        }
        // multi-char comparison symbols
        static constexpr std::array<const char*, 5> two{"<=", ">=", "==", nullptr, nullptr};
        for (const char* sym : two) {
            if (sym && src_.substr(pos_).starts_with(sym)) {
                current_.kind = TokKind::Symbol;
                current_.text = sym;
                pos_ += 2;
                col_ += 2;
                return;
            }
        }
        if (std::strchr("+-*/()<>=,;", c) != nullptr) {
            current_.kind = TokKind::Symbol;
            current_.text = std::string(1, c);
            ++pos_;
            ++col_;
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token current_;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Program parse_program() {
        expect_ident("rho");
        expect_symbol("=");
        Token num = lex_.take();
        double rho;
        if (num.kind == TokKind::Number) {
            rho = num.value;
        } else if (num.kind == TokKind::Symbol && num.text == "-") {
            Token mag = lex_.take();
            if (mag.kind != TokKind::Number) {
                throw SyntaxError("expected number after 'rho ='", mag.line, mag.column);
            }
            rho = -mag.value;
        } else {
            throw SyntaxError("expected number after 'rho ='", num.line, num.column);
        }
        expect_symbol(";");
        expect_ident("score");
        expect_symbol("=");
        ExprRef body = parse_expr();
        Token end = lex_.take();
        if (end.kind != TokKind::End) {
            throw SyntaxError("unexpected trailing input", end.line, end.column);
        }
        Program p;
        p.removal_fraction = std::min(kMaxRemovalFraction, std::max(kMinRemovalFraction, rho));
        p.body = body;
        if (depth(p.body) > kMaxAstDepth) {
            throw LimitExceeded("expression depth exceeds " + std::to_string(kMaxAstDepth));
        }
        if (node_count(p.body) > kMaxAstNodes) {
            throw LimitExceeded("expression node count exceeds " + std::to_string(kMaxAstNodes));
        }
        return p;
    }

  private:
    void expect_ident(const char* name) {
        Token t = lex_.take();
        if (t.kind != TokKind::Ident || t.text != name) {
            throw SyntaxError(std::string("expected '") + name + "'", t.line, t.column);
        }
    }

    void expect_symbol(const char* sym) {
        Token t = lex_.take();
        if (t.kind != TokKind::Symbol || t.text != sym) {
            throw SyntaxError(std::string("expected '") + sym + "'", t.line, t.column);
        }
    }

    ExprRef parse_expr() { return parse_comparison(); }

    ExprRef parse_comparison() {
        ExprRef lhs = parse_additive();
        while (lex_.peek().kind == TokKind::Symbol) {
            const std::string& s = lex_.peek().text;
            BinaryOp op;
            if (s == "<") op = BinaryOp::Less;
            else if (s == "<=") op = BinaryOp::LessEq;
            else if (s == ">") op = BinaryOp::Greater;
            else if (s == ">=") op = BinaryOp::GreaterEq;
            else if (s == "=" || s == "==") op = BinaryOp::Equal;
            else break;
            lex_.take();
            ExprRef rhs = parse_additive();
            lhs = Expr::binary(op, lhs, rhs);
        }
        return lhs;
    }

    ExprRef parse_additive() {
        ExprRef lhs = parse_multiplicative();
        while (lex_.peek().kind == TokKind::Symbol &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            BinaryOp op = lex_.take().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
            ExprRef rhs = parse_multiplicative();
            lhs = Expr::binary(op, lhs, rhs);
        }
        return lhs;
    }

    ExprRef parse_multiplicative() {
        ExprRef lhs = parse_unary();
        while (lex_.peek().kind == TokKind::Symbol &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            BinaryOp op = lex_.take().text == "*" ? BinaryOp::Mul : BinaryOp::Div;
            ExprRef rhs = parse_unary();
            lhs = Expr::binary(op, lhs, rhs);
        }
        return lhs;
    }

    ExprRef parse_unary() {
        if (lex_.peek().kind == TokKind::Symbol && lex_.peek().text == "-") {
            lex_.take();
            return Expr::negate(parse_unary());
        }
        return parse_primary();
    }

    ExprRef parse_primary() {
        Token t = lex_.take();
        if (t.kind == TokKind::Number) {
            return Expr::num(t.value);
        }
        if (t.kind == TokKind::Symbol && t.text == "(") {
            ExprRef inner = parse_expr();
            expect_symbol(")");
            return inner;
        }
        if (t.kind == TokKind::Ident) {
            if (t.text == "min" || t.text == "max") {
                bool is_min = t.text == "min";
                expect_symbol("(");
                ExprRef a = parse_expr();
                expect_symbol(",");
                ExprRef b = parse_expr();
                expect_symbol(")");
                return Expr::minmax(is_min, a, b);
            }
            if (t.text == "if") {
                expect_symbol("(");
                ExprRef c = parse_expr();
                expect_symbol(",");
                ExprRef a = parse_expr();
                expect_symbol(",");
                ExprRef b = parse_expr();
                expect_symbol(")");
                return Expr::cond(c, a, b);
            }
            if (t.text == "rand") {
                expect_symbol("(");
                expect_symbol(")");
                return Expr::rand();
            }
            if (t.text == "rho" || t.text == "score") {
                throw SyntaxError("reserved word '" + t.text + "' used as feature", t.line,
                                  t.column);
            }
            return Expr::feat(t.text);
        }
        throw SyntaxError("expected expression", t.line, t.column);
    }

    Lexer lex_;
};

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

const char* op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Less: return "<";
        case BinaryOp::LessEq: return "<=";
        case BinaryOp::Greater: return ">";
        case BinaryOp::GreaterEq: return ">=";
        case BinaryOp::Equal: return "==";
    }
    return "?";
}

void render_rec(const ExprRef& e, std::string& out) {
    switch (e->kind) {
        case ExprKind::Number:
            out += format_number(e->number);
            break;
        case ExprKind::Feature:
            out += e->feature;
            break;
        case ExprKind::Binary:
            out += '(';
            render_rec(e->a, out);
            out += ' ';
            out += op_text(e->op);
            out += ' ';
            render_rec(e->b, out);
            out += ')';
            break;
        case ExprKind::Negate:
            out += "(-";
            render_rec(e->a, out);
            out += ')';
            break;
        case ExprKind::MinMax:
            out += e->is_min ? "min(" : "max(";
            render_rec(e->a, out);
            out += ", ";
            render_rec(e->b, out);
            out += ')';
            break;
        case ExprKind::If:
            out += "if(";
            render_rec(e->a, out);
            out += ", ";
            render_rec(e->b, out);
            out += ", ";
            render_rec(e->c, out);
            out += ')';
            break;
        case ExprKind::Rand:
            out += "rand()";
            break;
    }
}

}  // namespace

Program parse(std::string_view source) {
    Parser parser(source);
    return parser.parse_program();
}

std::string render_expr(const ExprRef& e) {
    std::string out;
    render_rec(e, out);
    return out;
}

std::string render(const Program& p) {
    std::string out = "rho=";
    out += format_number(p.removal_fraction);
    out += "; score = ";
    render_rec(p.body, out);
    return out;
}

std::uint64_t digest(const Program& p) { return hash_string(render(p)); }

}  // namespace tuplevo::dsl
