#pragma once

// Random generators for expression tests.

#include <memory>
#include <random>
#include <string>

#include "quadbound/expr.hpp"

namespace exprgen {

inline std::unique_ptr<quadbound::Node> random_node(std::mt19937_64& rng, int depth) {
    using quadbound::Node;
    using quadbound::NodeKind;
    auto n = std::make_unique<Node>();
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 5);
    switch (pick(rng)) {
    case 0:
        n->kind = NodeKind::number;
        n->value = std::uniform_real_distribution<double>(0.0, 50.0)(rng);
        if (rng() % 3 == 0)
            n->value = std::floor(n->value);
        break;
    case 1:
        n->kind = NodeKind::variable;
        break;
    case 2:
        n->kind = NodeKind::constant;
        n->name = rng() % 2 ? "e" : "pi";
        break;
    case 3:
        n->kind = NodeKind::negate;
        n->lhs = random_node(rng, depth - 1);
        break;
    case 4:
        n->kind = NodeKind::call;
        n->func = static_cast<quadbound::Func>(rng() % 4);
        n->lhs = random_node(rng, depth - 1);
        break;
    default:
        n->kind = NodeKind::binary;
        n->op = "+-*/^"[rng() % 5];
        n->lhs = random_node(rng, depth - 1);
        n->rhs = random_node(rng, depth - 1);
        break;
    }
    return n;
}

/// Random text biased towards grammar tokens, up to max_len bytes.
inline std::string random_source(std::mt19937_64& rng, std::size_t max_len) {
    static const char* const pieces[] = {"x", "e", "pi", "exp(", "ln(", "abs(", "sqrt(", "pow(",
                                         "(", ")", "+", "-", "*", "/", "^", ",", " ", "2",
                                         "0.5", "1e3", "3.", ".7", "foo", "1e", "\t", "$", "#"};
    const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    std::string s;
    while (s.size() < len) {
        if (rng() % 8 == 0)
            s += static_cast<char>(rng() % 256);
        else
            s += pieces[rng() % (sizeof(pieces) / sizeof(pieces[0]))];
    }
    s.resize(len);
    return s;
}

} // namespace exprgen
