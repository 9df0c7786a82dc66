#pragma once

#include <string>
#include <vector>

#include "jetgauge/parse.hpp"

namespace testutil {

using jetgauge::ContextPtr;
using jetgauge::Expr;

// x; u, v; a; order 2.  The workhorse chart.
inline ContextPtr chart2() {
    return jetgauge::JetContext::make({"x"}, {"u", "v"}, {"a"}, 2);
}

// x, t; u, v; a; order 2.
inline ContextPtr chart2_2d() {
    return jetgauge::JetContext::make({"x", "t"}, {"u", "v"}, {"a"}, 2);
}

inline Expr pe(const ContextPtr& ctx, const std::string& s) {
    return jetgauge::parse_expr(s, ctx);
}

// Structural equality of a computed expression against pinned text.
inline bool matches(const Expr& got, const ContextPtr& ctx, const std::string& want) {
    return jetgauge::equal(got, pe(ctx, want));
}

}  // namespace testutil
