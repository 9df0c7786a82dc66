#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetgauge/expr.hpp"
#include "jetgauge/matrix.hpp"

namespace jetgauge {

// Vertical vector field on the gauged space, in characteristic form:
//   X = Q^a d/du^a + P^m d/dalpha^m.
struct EvoField {
    ContextPtr ctx;
    std::vector<Expr> q;  // one per dependent variable
    std::vector<Expr> p;  // one per gauge parameter

    // p may be empty (taken as zero).  Entries must live in ctx's chart.
    static EvoField make(ContextPtr ctx, std::vector<Expr> q, std::vector<Expr> p = {});
};

// General point field xi^i d/dx^i + phi^a d/du^a + p^m d/dalpha^m.
struct PointField {
    ContextPtr ctx;
    std::vector<Expr> xi;
    std::vector<Expr> phi;
    std::vector<Expr> p;

    static PointField make(ContextPtr ctx, std::vector<Expr> xi, std::vector<Expr> phi,
                           std::vector<Expr> p = {});
};

// Characteristic form: Q^a = phi^a - u^a_i xi^i.  Needs first-order jets in
// the chart unless all xi vanish.
EvoField evolutionary(const PointField& f);

// Field on the jet space: coefficients eta^a_J for |J| <= order, gauge
// components carried along unchanged.  The empty multi-index entry is the
// base coefficient Q^a.
class ProlongedField {
public:
    ProlongedField(ContextPtr ctx, int order, std::vector<std::map<MultiIndex, Expr>> eta,
                   std::vector<Expr> p);

    const ContextPtr& ctx() const { return ctx_; }
    int order() const { return order_; }
    const std::vector<std::map<MultiIndex, Expr>>& eta() const { return eta_; }
    const std::vector<Expr>& gauge_components() const { return p_; }

    const Expr& coeff(std::size_t a, const MultiIndex& j) const;

    // Action on a function of the jet coordinates:
    //   sum_aJ eta^a_J df/du^a_J + sum_m P^m df/dalpha^m.
    Expr apply(const Expr& f) const;

    // One "u_J: coefficient" line per jet, chart order.
    std::string str() const;

private:
    ContextPtr ctx_;
    int order_;
    std::vector<std::map<MultiIndex, Expr>> eta_;
    std::vector<Expr> p_;
};

// Horizontal one-form mu = Lambda_i dx^i with matrix coefficients.
struct MuForm {
    ContextPtr ctx;
    std::vector<MatrixExpr> lambda;  // one per independent variable

    static MuForm make(ContextPtr ctx, std::vector<MatrixExpr> lambda);
};

}  // namespace jetgauge
