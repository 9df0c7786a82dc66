#include "jetgauge/field.hpp"

namespace jetgauge {

namespace {

void check_entries(const ContextPtr& ctx, const std::vector<Expr>& es, const char* what,
                   std::size_t want) {
    if (es.size() != want)
        throw input_error(std::string(what) + " needs " + std::to_string(want) +
                          " components, got " + std::to_string(es.size()));
    for (const auto& e : es) {
        if (!e) throw input_error(std::string(what) + " component is empty");
        const JetContext* c = chart_of(e);
        if (c && c != ctx.get())
            throw input_error(std::string(what) + " component uses a different chart");
    }
}

std::vector<Expr> zeros_if_empty(std::vector<Expr> es, std::size_t want) {
    if (es.empty()) es.assign(want, num(0));
    return es;
}

}  // namespace

EvoField EvoField::make(ContextPtr ctx, std::vector<Expr> q, std::vector<Expr> p) {
    if (!ctx) throw input_error("field needs a chart");
    p = zeros_if_empty(std::move(p), ctx->n_gauge());
    check_entries(ctx, q, "characteristic", ctx->n_dep());
    check_entries(ctx, p, "gauge component", ctx->n_gauge());
    EvoField f;
    f.ctx = std::move(ctx);
    f.q = std::move(q);
    f.p = std::move(p);
    return f;
}

PointField PointField::make(ContextPtr ctx, std::vector<Expr> xi, std::vector<Expr> phi,
                            std::vector<Expr> p) {
    if (!ctx) throw input_error("field needs a chart");
    p = zeros_if_empty(std::move(p), ctx->n_gauge());
    check_entries(ctx, xi, "horizontal component", ctx->n_indep());
    check_entries(ctx, phi, "vertical component", ctx->n_dep());
    check_entries(ctx, p, "gauge component", ctx->n_gauge());
    PointField f;
    f.ctx = std::move(ctx);
    f.xi = std::move(xi);
    f.phi = std::move(phi);
    f.p = std::move(p);
    return f;
}

EvoField evolutionary(const PointField& f) {
    const auto& ctx = f.ctx;
    bool all_zero = true;
    for (const auto& x : f.xi)
        if (!equal(x, num(0))) all_zero = false;
    std::vector<Expr> q;
    for (std::size_t a = 0; a < ctx->n_dep(); ++a) {
        Expr qa = f.phi[a];
        if (!all_zero) {
            if (ctx->order() < 1)
                throw input_error("characteristic form needs first-order jets in the chart");
            for (std::size_t i = 0; i < ctx->n_indep(); ++i) {
                MultiIndex j = MultiIndex::unit(ctx->n_indep(), i);
                qa = sub(qa, mul(sym(ctx, ctx->dep_jet_id(a, j)), f.xi[i]));
            }
        }
        q.push_back(qa);
    }
    return EvoField::make(ctx, std::move(q), f.p);
}

ProlongedField::ProlongedField(ContextPtr ctx, int order,
                               std::vector<std::map<MultiIndex, Expr>> eta,
                               std::vector<Expr> p)
    : ctx_(std::move(ctx)), order_(order), eta_(std::move(eta)), p_(std::move(p)) {
    if (!ctx_) throw input_error("prolonged field needs a chart");
    if (order_ < 0 || order_ > ctx_->order())
        throw input_error("prolongation order " + std::to_string(order_) +
                          " outside the chart's range");
    if (eta_.size() != ctx_->n_dep())
        throw input_error("prolonged field needs one coefficient family per dependent");
    p_ = zeros_if_empty(std::move(p_), ctx_->n_gauge());
    check_entries(ctx_, p_, "gauge component", ctx_->n_gauge());
    for (std::size_t a = 0; a < eta_.size(); ++a)
        for (const auto& [j, e] : eta_[a]) {
            if ((std::size_t)j.size() != ctx_->n_indep())
                throw input_error("coefficient multi-index has wrong width");
            if (j.order() > order_) throw input_error("coefficient beyond prolongation order");
            if (!e) throw input_error("prolonged field coefficient is empty");
        }
}

const Expr& ProlongedField::coeff(std::size_t a, const MultiIndex& j) const {
    if (a >= eta_.size()) throw input_error("no such dependent variable");
    auto it = eta_[a].find(j);
    if (it == eta_[a].end())
        throw input_error("no prolongation coefficient for order " +
                          std::to_string(j.order()) + " at this multi-index");
    return it->second;
}

Expr ProlongedField::apply(const Expr& f) const {
    std::vector<Expr> terms;
    for (std::size_t a = 0; a < eta_.size(); ++a)
        for (const auto& [j, e] : eta_[a]) {
            Expr d = pdiff(f, ctx_->dep_jet_id(a, j));
            if (!equal(d, num(0))) terms.push_back(mul(e, d));
        }
    for (std::size_t m = 0; m < p_.size(); ++m) {
        Expr d = pdiff(f, ctx_->gauge_id(m));
        if (!equal(d, num(0))) terms.push_back(mul(p_[m], d));
    }
    return add(terms);
}

std::string ProlongedField::str() const {
    std::string out;
    for (const auto& j : multi_indices_up_to(ctx_->n_indep(), order_)) {
        for (std::size_t a = 0; a < eta_.size(); ++a) {
            auto it = eta_[a].find(j);
            if (it == eta_[a].end()) continue;
            out += ctx_->name_of(ctx_->dep_jet_id(a, j)) + ": " + to_string(it->second) + "\n";
        }
    }
    return out;
}

MuForm MuForm::make(ContextPtr ctx, std::vector<MatrixExpr> lambda) {
    if (!ctx) throw input_error("one-form needs a chart");
    if (lambda.size() != ctx->n_indep())
        throw input_error("one-form needs one matrix per independent variable");
    for (const auto& l : lambda)
        if (l.dim() != (int)ctx->n_dep())
            throw input_error("one-form matrix dimension must match the dependents");
    MuForm m;
    m.ctx = std::move(ctx);
    m.lambda = std::move(lambda);
    return m;
}

}  // namespace jetgauge
