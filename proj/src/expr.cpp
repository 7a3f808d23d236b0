#include "quadbound/expr.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

#include "quadbound/error.hpp"

namespace quadbound {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            while (i < src.size() && is_digit(src[i]))
                ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && is_digit(src[i]))
                    ++i;
            }
            // An exponent needs at least one digit; otherwise `e` is left for the
            // next token (and "2e" then fails for lack of an operator).
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-'))
                    ++j;
                if (j < src.size() && is_digit(src[j])) {
                    while (j < src.size() && is_digit(src[j]))
                        ++j;
                    i = j;
                }
            }
            const std::string_view text = src.substr(start, i - start);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
                throw SyntaxError("numeric literal out of range", start);
            out.push_back(Token{Tok::number, start, text, value});
            continue;
        }
        if (is_ident_start(c)) {
            while (i < src.size() && is_ident_char(src[i]))
                ++i;
            out.push_back(Token{Tok::ident, start, src.substr(start, i - start)});
            continue;
        }
        Tok kind;
        switch (c) {
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '*': kind = Tok::star; break;
        case '/': kind = Tok::slash; break;
        case '^': kind = Tok::caret; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case ',': kind = Tok::comma; break;
        default:
            throw SyntaxError("unexpected character", start);
        }
        out.push_back(Token{kind, start, src.substr(start, 1)});
        ++i;
    }
    out.push_back(Token{Tok::end, src.size(), {}});
    return out;
}

using NodePtr = std::unique_ptr<Node>;

NodePtr leaf(NodeKind kind, std::size_t offset) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->offset = offset;
    return n;
}

NodePtr binary(char op, std::size_t offset, NodePtr l, NodePtr r) {
    auto n = leaf(NodeKind::binary, offset);
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

// expr    := term (('+' | '-') term)*
// term    := unary (('*' | '/') unary)*
// unary   := '-' unary | power
// power   := primary ('^' unary)?
// primary := number | ident | ident '(' args ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

    NodePtr parse_all() {
        NodePtr n = expr();
        if (peek().kind != Tok::end)
            throw SyntaxError("unexpected token '" + std::string(peek().text) + "'", peek().offset);
        return n;
    }

private:
    static constexpr int kMaxNesting = 256;

    struct DepthGuard {
        DepthGuard(int& depth, std::size_t offset) : depth_(depth) {
            if (++depth_ > kMaxNesting)
                throw SyntaxError("expression nested too deeply", offset);
        }
        ~DepthGuard() { --depth_; }
        int& depth_;
    };

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            const Token& t = peek();
            throw SyntaxError(std::string("expected ") + what
                                  + (t.kind == Tok::end ? " before end of input"
                                                        : ", found '" + std::string(t.text) + "'"),
                              t.offset);
        }
        ++pos_;
    }

    NodePtr expr() {
        DepthGuard guard(depth_, peek().offset);
        NodePtr l = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token& t = next();
            l = binary(t.kind == Tok::plus ? '+' : '-', t.offset, std::move(l), term());
        }
        return l;
    }

    NodePtr term() {
        NodePtr l = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Token& t = next();
            l = binary(t.kind == Tok::star ? '*' : '/', t.offset, std::move(l), unary());
        }
        return l;
    }

    NodePtr unary() {
        DepthGuard guard(depth_, peek().offset);
        if (peek().kind == Tok::minus) {
            const Token& t = next();
            auto n = leaf(NodeKind::negate, t.offset);
            n->lhs = unary();
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (peek().kind == Tok::caret) {
            const Token& t = next();
            return binary('^', t.offset, std::move(base), unary());
        }
        return base;
    }

    NodePtr primary() {
        const Token& t = next();
        switch (t.kind) {
        case Tok::number: {
            auto n = leaf(NodeKind::number, t.offset);
            n->value = t.number;
            return n;
        }
        case Tok::lparen: {
            NodePtr inner = expr();
            expect(Tok::rparen, "')'");
            return inner;
        }
        case Tok::ident:
            return identifier(t);
        case Tok::end:
            throw SyntaxError("unexpected end of input", t.offset);
        default:
            throw SyntaxError("unexpected token '" + std::string(t.text) + "'", t.offset);
        }
    }

    NodePtr identifier(const Token& t) {
        if (peek().kind != Tok::lparen) {
            if (t.text == "x")
                return leaf(NodeKind::variable, t.offset);
            if (t.text == "e" || t.text == "pi") {
                auto n = leaf(NodeKind::constant, t.offset);
                n->name = std::string(t.text);
                n->value = t.text == "e" ? std::numbers::e : std::numbers::pi;
                return n;
            }
            throw UnknownIdentifierError(std::string(t.text), t.offset);
        }

        if (t.text == "pow") {
            next();
            NodePtr base = expr();
            expect(Tok::comma, "','");
            NodePtr exponent = expr();
            expect(Tok::rparen, "')'");
            return binary('^', t.offset, std::move(base), std::move(exponent));
        }

        Func func;
        if (t.text == "exp")
            func = Func::exp;
        else if (t.text == "ln")
            func = Func::ln;
        else if (t.text == "abs")
            func = Func::abs;
        else if (t.text == "sqrt")
            func = Func::sqrt;
        else
            throw UnknownIdentifierError(std::string(t.text), t.offset);

        next();
        auto n = leaf(NodeKind::call, t.offset);
        n->func = func;
        n->lhs = expr();
        expect(Tok::rparen, "')'");
        return n;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

[[noreturn]] void eval_fail(const char* what, const Node& node, double x) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " (node at offset " << node.offset << ", x = " << x << ")";
    throw EvaluationError(msg.str(), x);
}

double finite(double v, const Node& node, double x) {
    if (!std::isfinite(v))
        eval_fail("non-finite result", node, x);
    return v;
}

double eval_node(const Node& n, double x) {
    switch (n.kind) {
    case NodeKind::number:
    case NodeKind::constant:
        return n.value;
    case NodeKind::variable:
        return x;
    case NodeKind::negate:
        return -eval_node(*n.lhs, x);
    case NodeKind::call: {
        const double v = eval_node(*n.lhs, x);
        switch (n.func) {
        case Func::exp:
            return finite(std::exp(v), n, x);
        case Func::ln:
            if (!(v > 0.0))
                eval_fail("ln of non-positive value", n, x);
            return std::log(v);
        case Func::abs:
            return std::abs(v);
        case Func::sqrt:
            return finite(std::sqrt(v), n, x);
        }
        break;
    }
    case NodeKind::binary: {
        const double l = eval_node(*n.lhs, x);
        const double r = eval_node(*n.rhs, x);
        switch (n.op) {
        case '+':
            return finite(l + r, n, x);
        case '-':
            return finite(l - r, n, x);
        case '*':
            return finite(l * r, n, x);
        case '/':
            if (r == 0.0)
                eval_fail("division by zero", n, x);
            return finite(l / r, n, x);
        case '^':
            return finite(std::pow(l, r), n, x);
        }
        break;
    }
    }
    eval_fail("malformed expression node", n, x);
}

const char* func_name(Func f) {
    switch (f) {
    case Func::exp:
        return "exp";
    case Func::ln:
        return "ln";
    case Func::abs:
        return "abs";
    case Func::sqrt:
        return "sqrt";
    }
    return "?";
}

void unparse_node(const Node& n, std::string& out) {
    switch (n.kind) {
    case NodeKind::number: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        out += buf;
        return;
    }
    case NodeKind::constant:
        out += n.name;
        return;
    case NodeKind::variable:
        out += 'x';
        return;
    case NodeKind::negate:
        out += "(-";
        unparse_node(*n.lhs, out);
        out += ')';
        return;
    case NodeKind::call:
        out += func_name(n.func);
        out += '(';
        unparse_node(*n.lhs, out);
        out += ')';
        return;
    case NodeKind::binary:
        out += '(';
        unparse_node(*n.lhs, out);
        out += n.op;
        unparse_node(*n.rhs, out);
        out += ')';
        return;
    }
}

} // namespace

double Expr::operator()(double x) const { return eval_node(*root_, x); }

std::string Expr::unparse() const {
    std::string out;
    unparse_node(*root_, out);
    return out;
}

Expr parse(std::string_view src) {
    Parser parser(src);
    return Expr(std::shared_ptr<const Node>(parser.parse_all()));
}

Expr make_expr(std::unique_ptr<const Node> root) {
    if (!root)
        throw ParameterError("expression root must not be null");
    return Expr(std::shared_ptr<const Node>(std::move(root)));
}

double eval_expr(const Expr& ast, double x) { return ast(x); }

bool structurally_equal(const Node& l, const Node& r) {
    if (l.kind != r.kind)
        return false;
    auto same_child = [](const std::unique_ptr<const Node>& a, const std::unique_ptr<const Node>& b) {
        if (!a || !b)
            return !a && !b;
        return structurally_equal(*a, *b);
    };
    switch (l.kind) {
    case NodeKind::number:
        return std::bit_cast<std::uint64_t>(l.value) == std::bit_cast<std::uint64_t>(r.value);
    case NodeKind::constant:
        return l.name == r.name;
    case NodeKind::variable:
        return true;
    case NodeKind::negate:
        return same_child(l.lhs, r.lhs);
    case NodeKind::call:
        return l.func == r.func && same_child(l.lhs, r.lhs);
    case NodeKind::binary:
        return l.op == r.op && same_child(l.lhs, r.lhs) && same_child(l.rhs, r.rhs);
    }
    return false;
}

DerivativeCheck validate_derivative(const Expr& f, const Expr& fp, double domain_b, int samples) {
    if (!std::isfinite(domain_b) || domain_b <= 0.0)
        throw ParameterError("domain_b must be positive");
    if (samples < 1)
        throw ParameterError("samples must be positive");

    DerivativeCheck check;
    check.passed = true;
    for (int i = 0; i < samples; ++i) {
        const double x = domain_b * (i + 1) / (samples + 1);
        const double h = 1e-5 * std::max(1.0, std::abs(x));
        try {
            const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
            const double exact = fp(x);
            const double deviation = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
            if (deviation > check.worst_deviation || i == 0) {
                check.worst_deviation = deviation;
                check.worst_x = x;
            }
        } catch (const EvaluationError& err) {
            check.passed = false;
            check.worst_x = x;
            check.error = err.what();
            return check;
        }
    }
    check.passed = check.worst_deviation <= kDerivativeTolerance;
    return check;
}

} // namespace quadbound
