#include "jetgauge/prolong.hpp"

namespace jetgauge {

namespace {

int base_order(const EvoField& f) {
    int q = 0;
    for (const auto& e : f.q) q = std::max(q, max_jet_order(e));
    return q;
}

void check_room(const EvoField& f, int order) {
    if (order < 0) throw input_error("prolongation order must be nonnegative");
    int need = base_order(f) + order;
    if (need > f.ctx->order())
        throw input_error("prolongation to order " + std::to_string(order) +
                          " needs jets of order " + std::to_string(need) +
                          " but the chart stops at " + std::to_string(f.ctx->order()));
}

// Smallest index with a nonzero entry.
std::size_t pivot(const MultiIndex& j) {
    for (std::size_t i = 0; i < j.size(); ++i)
        if (j[i] > 0) return i;
    throw std::logic_error("empty multi-index has no pivot");
}

}  // namespace

ProlongedField prolong_with(
    const EvoField& f, int order,
    const std::function<Expr(std::size_t, std::size_t, const std::vector<Expr>&)>& step) {
    check_room(f, order);
    const auto& ctx = f.ctx;
    std::size_t n = ctx->n_dep(), m = ctx->n_indep();
    std::vector<std::map<MultiIndex, Expr>> eta(n);
    for (std::size_t a = 0; a < n; ++a) eta[a][MultiIndex(m)] = f.q[a];
    for (const auto& j : multi_indices_up_to(m, order)) {
        if (j.order() == 0) continue;
        std::size_t i = pivot(j);
        MultiIndex prev = j.drop(i);
        std::vector<Expr> prev_col;
        for (std::size_t b = 0; b < n; ++b) prev_col.push_back(eta[b].at(prev));
        for (std::size_t a = 0; a < n; ++a) eta[a][j] = step(a, i, prev_col);
    }
    return ProlongedField(ctx, order, std::move(eta), f.p);
}

ProlongedField std_prolong(const EvoField& f, int order) {
    const auto& ctx = f.ctx;
    return prolong_with(f, order,
                        [&](std::size_t a, std::size_t i, const std::vector<Expr>& prev) {
                            return total_derivative(ctx, i, prev[a]);
                        });
}

namespace {

Expr mu_step(const ContextPtr& ctx, const MuForm& mu, std::size_t a, std::size_t i,
             const std::vector<Expr>& prev) {
    std::vector<Expr> terms{total_derivative(ctx, i, prev[a])};
    for (std::size_t b = 0; b < prev.size(); ++b)
        terms.push_back(mul(mu.lambda[i].at((int)a, (int)b), prev[b]));
    return add(terms);
}

}  // namespace

ProlongedField mu_prolong(const EvoField& f, const MuForm& mu, int order, Oracle* oracle) {
    check_room(f, order);
    const auto& ctx = f.ctx;
    if (mu.ctx.get() != ctx.get()) throw input_error("one-form lives in a different chart");
    if (oracle) {
        EqualResult mc = maurer_cartan_check(mu, *oracle);
        if (mc.verdict == EqualResult::NotEqual)
            throw input_error("one-form fails horizontal compatibility: " + mc.witness->str());
    }
    ProlongedField y = prolong_with(
        f, order, [&](std::size_t a, std::size_t i, const std::vector<Expr>& prev) {
            return mu_step(ctx, mu, a, i, prev);
        });
    if (oracle && ctx->n_indep() > 1 && order >= 2) {
        // The recursion fixes one path through each multi-index; compare a
        // mixed second derivative against the opposite path.
        std::size_t n = ctx->n_dep();
        std::vector<Expr> base = f.q;
        std::vector<Expr> via01(n), via10(n);
        auto col = [&](std::size_t i, const std::vector<Expr>& prev) {
            std::vector<Expr> out(n);
            for (std::size_t a = 0; a < n; ++a) out[a] = mu_step(ctx, mu, a, i, prev);
            return out;
        };
        via01 = col(1, col(0, base));
        via10 = col(0, col(1, base));
        for (std::size_t a = 0; a < n; ++a) {
            EqualResult r = oracle->check_equal(via01[a], via10[a], "mixed prolongation step");
            if (r.verdict == EqualResult::NotEqual)
                throw input_error("prolongation is path dependent: " + r.witness->str());
        }
    }
    return y;
}

EqualResult maurer_cartan_check(const MuForm& mu, Oracle& o) {
    const auto& ctx = mu.ctx;
    EqualResult res;
    res.verdict = EqualResult::Equal;
    for (std::size_t i = 0; i < ctx->n_indep(); ++i) {
        for (std::size_t j = i + 1; j < ctx->n_indep(); ++j) {
            auto di = [&](const Expr& e) { return total_derivative(ctx, i, e); };
            auto dj = [&](const Expr& e) { return total_derivative(ctx, j, e); };
            MatrixExpr lhs = mu.lambda[j].map(di) - mu.lambda[i].map(dj) +
                             commutator(mu.lambda[i], mu.lambda[j]);
            EqualResult r = matrix_oracle_equal(
                o, lhs, MatrixExpr::zero(lhs.dim()),
                "compatibility[" + std::to_string(i) + "," + std::to_string(j) + "]");
            if (r.verdict != EqualResult::Equal) return r;
        }
    }
    return res;
}

EqualResult is_mu_prolongation(const ProlongedField& y, const MuForm& mu, Oracle& o) {
    const auto& ctx = y.ctx();
    std::vector<Expr> q;
    for (std::size_t a = 0; a < ctx->n_dep(); ++a)
        q.push_back(y.coeff(a, MultiIndex(ctx->n_indep())));
    EvoField base = EvoField::make(ctx, std::move(q), y.gauge_components());
    ProlongedField ref = mu_prolong(base, mu, y.order(), nullptr);
    EqualResult res;
    res.verdict = EqualResult::Equal;
    for (const auto& j : multi_indices_up_to(ctx->n_indep(), y.order())) {
        for (std::size_t a = 0; a < ctx->n_dep(); ++a) {
            EqualResult r = o.check_equal(
                y.coeff(a, j), ref.coeff(a, j),
                "coefficient of " + ctx->name_of(ctx->dep_jet_id(a, j)));
            if (r.verdict != EqualResult::Equal) return r;
        }
    }
    return res;
}

}  // namespace jetgauge
