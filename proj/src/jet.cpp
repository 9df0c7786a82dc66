#include "jetgauge/jet.hpp"

namespace jetgauge {

namespace {

Expr derive(const ContextPtr& ctx, std::size_t i, const Expr& f, bool dep_part,
            bool gauge_part) {
    if (i >= ctx->n_indep()) throw input_error("independent index out of range");
    if (f->ctx && f->ctx != ctx.get())
        throw context_mismatch_error("expression belongs to a different chart");

    std::vector<Expr> parts;
    if (dep_part) parts.push_back(pdiff(f, ctx->indep_id(i)));
    for (int id : coords_of(f)) {
        CoordKind k = ctx->kind_of(id);
        bool take = (dep_part && k == CoordKind::DepJet) ||
                    (gauge_part && (k == CoordKind::Gauge || k == CoordKind::GaugeJet));
        if (!take) continue;
        Expr d = pdiff(f, id);
        if (is_zero(d)) continue;
        int succ = ctx->jet_successor(id, i);
        parts.push_back(mul(sym(ctx, succ), d));
    }
    return add(std::move(parts));
}

}  // namespace

Expr total_derivative(const ContextPtr& ctx, std::size_t i, const Expr& f) {
    return derive(ctx, i, f, true, false);
}

Expr total_derivative_multi(const ContextPtr& ctx, const MultiIndex& J, const Expr& f) {
    if (J.size() != ctx->n_indep()) throw input_error("multi-index arity mismatch");
    Expr out = f;
    for (std::size_t i = 0; i < J.size(); ++i)
        for (int t = 0; t < J[i]; ++t) out = total_derivative(ctx, i, out);
    return out;
}

Expr augmented_total_derivative(const ContextPtr& ctx, std::size_t i, const Expr& f) {
    if (!ctx->has_gauge_jets())
        throw input_error("augmented derivative needs a chart with gauge jets");
    return derive(ctx, i, f, true, true);
}

Expr gauge_derivative(const ContextPtr& ctx, std::size_t i, const Expr& f) {
    if (!ctx->has_gauge_jets())
        throw input_error("gauge derivative needs a chart with gauge jets");
    return derive(ctx, i, f, false, true);
}

}  // namespace jetgauge
