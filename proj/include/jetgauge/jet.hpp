#pragma once

#include "jetgauge/expr.hpp"

namespace jetgauge {

// Total derivative along the i-th independent variable:
//   D_i f = d f / d x_i  +  sum over jets  u^a_{J,i} * d f / d u^a_J.
// Gauge parameters are inert under D_i. Throws order_overflow_error when f
// depends on a top-order jet whose successor lies outside the chart.
Expr total_derivative(const ContextPtr& ctx, std::size_t i, const Expr& f);

// D_J = D_1^{j_1} ... D_m^{j_m}, applied in declaration order.
Expr total_derivative_multi(const ContextPtr& ctx, const MultiIndex& J, const Expr& f);

// Augmented derivative on a chart with formal gauge jets:
//   D_i + Z_i  with  Z_i f = sum over gauge jets  alpha^m_{J,i} * d f / d alpha^m_J.
Expr augmented_total_derivative(const ContextPtr& ctx, std::size_t i, const Expr& f);

// The gauge part Z_i alone.
Expr gauge_derivative(const ContextPtr& ctx, std::size_t i, const Expr& f);

}  // namespace jetgauge
