#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace quadbound {

// Expression language for corpus functions. One free variable `x`, named
// constants `e` and `pi`, functions exp, ln, abs, sqrt and pow. The full
// grammar and precedence table are in GRAMMAR.md.

enum class NodeKind { number, constant, variable, negate, binary, call };

enum class Func { exp, ln, abs, sqrt };

struct Node {
    NodeKind kind = NodeKind::number;
    std::size_t offset = 0; // byte offset of the node's first token

    double value = 0.0;  // number, constant
    std::string name;    // constant
    char op = 0;         // binary: + - * / ^
    Func func = Func::exp;

    std::unique_ptr<const Node> lhs; // negate, call, binary
    std::unique_ptr<const Node> rhs; // binary
};

/// An immutable parsed expression. Copies share the tree.
class Expr {
public:
    const Node& root() const noexcept { return *root_; }

    double operator()(double x) const;

    /// Fully parenthesised source that parses back to the same tree.
    std::string unparse() const;

    friend Expr parse(std::string_view src);
    friend Expr make_expr(std::unique_ptr<const Node> root);

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

/// Throws SyntaxError (with byte offset) or UnknownIdentifierError.
Expr parse(std::string_view src);

/// Wraps a hand-built tree; used by generators in tests.
Expr make_expr(std::unique_ptr<const Node> root);

/// Throws EvaluationError on ln of a non-positive value, division by zero or
/// any non-finite intermediate.
double eval_expr(const Expr& ast, double x);

/// Same shape, operators, functions and literal bits; offsets are ignored.
bool structurally_equal(const Node& l, const Node& r);

struct DerivativeCheck {
    bool passed = false;
    double worst_deviation = 0.0;
    double worst_x = 0.0;
    std::optional<std::string> error; // evaluation failure, if any
};

inline constexpr double kDerivativeTolerance = 1e-6;

/// Compares fp against central differences of f at `samples` interior points of
/// (0, domain_b), step h = 1e-5 max(1, |x|). The deviation at each point is
/// |fd - fp| / max(1, |fp|).
DerivativeCheck validate_derivative(const Expr& f, const Expr& fp, double domain_b,
                                    int samples = 64);

} // namespace quadbound
