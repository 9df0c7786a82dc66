#pragma once

#include <string>

#include "jetgauge/expr.hpp"

namespace jetgauge {

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at byte " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ["-"] atom ["^" signed-rational]
//   atom   := number | ident | func "(" expr ")" | "(" expr ")"
// Identifiers resolve against the chart's symbol table, so jet names carry
// their derivative letters in declaration order ("u_xy" in a chart declared
// as x,y; "u_yx" is rejected as unknown). Numbers may be integers or
// decimals with an optional exponent; both are read exactly as rationals.
Expr parse_expr(const std::string& text, const ContextPtr& ctx);

}  // namespace jetgauge
