#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "acm/expr.hpp"
#include "acm/fields.hpp"

namespace acm::testing {

inline const std::vector<std::string>& xyz() {
    static const std::vector<std::string> names{"x", "y", "z"};
    return names;
}

// Random expression tree of depth <= max_depth over `vars` coordinates.
// Functions are wrapped so that every tree is defined on all of R^vars:
// ln and sqrt only see 1 + u^2, division only sees 2 + sin(u), and powers
// use small integer exponents.
inline expr::Expr random_expr(Sampler& rng, int max_depth, std::size_t vars) {
    using expr::BinaryOp;
    using expr::Expr;
    using expr::Function;
    const double pick = rng.uniform();
    if (max_depth <= 1 || pick < 0.2) {
        if (rng.uniform() < 0.5)
            return Expr::variable(static_cast<std::size_t>(rng.uniform() * static_cast<double>(vars)));
        return Expr::constant(std::round(rng.uniform(-4.0, 4.0) * 100.0) / 100.0);
    }
    // Wrapped forms spend extra levels on their scaffolding.
    auto sub = [&](int used) { return random_expr(rng, max_depth - used, vars); };
    const int kinds = max_depth >= 4 ? 9 : 4;
    const int kind = static_cast<int>(rng.uniform() * kinds);
    switch (kind) {
        case 0: return Expr::negate(sub(1));
        case 1: return Expr::binary(BinaryOp::Add, sub(1), sub(1));
        case 2: return Expr::binary(BinaryOp::Sub, sub(1), sub(1));
        case 3: return Expr::binary(BinaryOp::Mul, sub(1), sub(1));
        case 4:
            return Expr::binary(BinaryOp::Div, sub(1),
                                Expr::binary(BinaryOp::Add, Expr::constant(2.0), Expr::call(Function::Sin, sub(3))));
        case 5:
            return Expr::binary(BinaryOp::Pow, Expr::call(Function::Sin, sub(2)),
                                Expr::constant(1.0 + std::floor(rng.uniform() * 3.0)));
        case 6: {
            const Function f = rng.uniform() < 0.5 ? Function::Sin : Function::Cos;
            return Expr::call(f, sub(1));
        }
        case 7: {
            const Function f = rng.uniform() < 0.5 ? Function::Ln : Function::Sqrt;
            Expr u = sub(3);
            return Expr::call(f, Expr::binary(BinaryOp::Add, Expr::constant(1.0),
                                              Expr::binary(BinaryOp::Mul, u, u)));
        }
        default: return Expr::call(Function::Exp, Expr::call(Function::Cos, sub(2)));
    }
}

inline double rel_error(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace acm::testing
