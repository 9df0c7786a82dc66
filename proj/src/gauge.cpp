#include "jetgauge/gauge.hpp"

#include <algorithm>
#include <optional>

namespace jetgauge {

namespace {

MultiIndex zero_index(const ContextPtr& ctx) { return MultiIndex(ctx->n_indep()); }

// First gauge coordinate appearing in e, or empty.
std::string gauge_symbol_in(const Expr& e) {
    const JetContext* ctx = chart_of(e);
    if (!ctx) return {};
    for (int id : coords_of(e)) {
        CoordKind k = ctx->kind_of(id);
        if (k == CoordKind::Gauge || k == CoordKind::GaugeJet) return ctx->name_of(id);
    }
    return {};
}

std::map<int, Expr> section_map(const GaugeSection& g) {
    std::map<int, Expr> sub;
    const auto& ctx = g.ctx();
    for (std::size_t m = 0; m < ctx->n_gauge(); ++m) sub[ctx->gauge_id(m)] = g.entry(m);
    return sub;
}

EqualResult all_equal() {
    EqualResult r;
    r.verdict = EqualResult::Equal;
    return r;
}

// Oracle comparison of two coefficient tables, first failure wins.
EqualResult tables_equal(const ProlongedField& a, const ProlongedField& b, Oracle& oracle) {
    const auto& ctx = a.ctx();
    for (std::size_t v = 0; v < ctx->n_dep(); ++v) {
        for (const auto& [j, lhs] : a.eta()[v]) {
            std::string label =
                "coefficient of " + ctx->name_of(ctx->dep_jet_id(v, j));
            EqualResult r = oracle.check_equal(lhs, b.coeff(v, j), label);
            if (!r.ok()) return r;
        }
    }
    return all_equal();
}

bool tables_identical(const ProlongedField& a, const ProlongedField& b) {
    const auto& ctx = a.ctx();
    for (std::size_t v = 0; v < ctx->n_dep(); ++v)
        for (const auto& [j, lhs] : a.eta()[v])
            if (!equal(lhs, b.coeff(v, j))) return false;
    return true;
}

}  // namespace

GaugeSection GaugeSection::make(ContextPtr ctx, std::vector<Expr> a) {
    if (!ctx) throw input_error("gauge section needs a chart");
    if (a.size() != ctx->n_gauge())
        throw input_error("gauge section needs " + std::to_string(ctx->n_gauge()) +
                          " entries, got " + std::to_string(a.size()));
    for (std::size_t m = 0; m < a.size(); ++m) {
        const Expr& e = a[m];
        if (!e) throw input_error("gauge section entry is empty");
        const JetContext* ec = chart_of(e);
        if (ec && ec != ctx.get())
            throw input_error("gauge section entry lives in a different chart");
        if (ec) {
            for (int id : coords_of(e)) {
                CoordKind k = ctx->kind_of(id);
                bool base_dep = k == CoordKind::DepJet && ctx->jet_order_of(id) == 0;
                if (k != CoordKind::Independent && !base_dep)
                    throw input_error("gauge section entry for " + ctx->gauge_name(m) +
                                      " may use x and u only, found '" + ctx->name_of(id) +
                                      "'");
            }
        }
    }
    return GaugeSection(std::move(ctx), std::move(a));
}

Expr restrict_to_section(const GaugeSection& g, const Expr& e) {
    return substitute(e, section_map(g));
}

MatrixExpr restrict_to_section(const GaugeSection& g, const MatrixExpr& m) {
    auto sub = section_map(g);
    return m.map([&](const Expr& e) { return substitute(e, sub); });
}

EvoField restrict_to_section(const GaugeSection& g, const EvoField& f) {
    auto sub = section_map(g);
    std::vector<Expr> q, p;
    for (const auto& e : f.q) q.push_back(substitute(e, sub));
    for (const auto& e : f.p) p.push_back(substitute(e, sub));
    return EvoField::make(f.ctx, std::move(q), std::move(p));
}

ProlongedField restrict_to_section(const GaugeSection& g, const ProlongedField& y) {
    auto sub = section_map(g);
    auto eta = y.eta();
    for (auto& fam : eta)
        for (auto& [j, e] : fam) e = substitute(e, sub);
    std::vector<Expr> p;
    for (const auto& e : y.gauge_components()) p.push_back(substitute(e, sub));
    return ProlongedField(y.ctx(), y.order(), std::move(eta), std::move(p));
}

Expr restrict_prolonged(const GaugeSection& g, const Expr& e) {
    const auto& ctx = g.ctx();
    if (!ctx->has_gauge_jets())
        throw input_error("jet-level restriction needs a chart with gauge jets");
    std::map<int, Expr> sub = section_map(g);
    for (int id : ctx->gauge_jet_ids()) {
        auto [m, j] = ctx->gauge_jet_info(id);
        sub[id] = total_derivative_multi(ctx, j, g.entry(m));
    }
    return substitute(e, sub);
}

EvoField project_to_base(const EvoField& f) {
    for (std::size_t a = 0; a < f.q.size(); ++a) {
        std::string leftover = gauge_symbol_in(f.q[a]);
        if (!leftover.empty())
            throw input_error("projection leaves gauge symbol '" + leftover +
                              "' in the coefficient of " + f.ctx->dep_name(a) +
                              "; restrict to a section first");
    }
    return EvoField::make(f.ctx, f.q);
}

ProlongedField project_to_base(const ProlongedField& y) {
    const auto& ctx = y.ctx();
    for (std::size_t a = 0; a < ctx->n_dep(); ++a) {
        for (const auto& [j, e] : y.eta()[a]) {
            std::string leftover = gauge_symbol_in(e);
            if (!leftover.empty())
                throw input_error("projection leaves gauge symbol '" + leftover +
                                  "' in the coefficient of " +
                                  ctx->name_of(ctx->dep_jet_id(a, j)) +
                                  "; restrict to a section first");
        }
    }
    return ProlongedField(ctx, y.order(), y.eta(), {});
}

std::vector<Expr> gauged_field(const LieRepresentation& rep, const ContextPtr& ctx,
                               const std::vector<Expr>& theta) {
    if (theta.size() != ctx->n_dep())
        throw input_error("gauged field needs one component per dependent variable");
    if (rep.dim != (int)ctx->n_dep())
        throw input_error("representation dimension " + std::to_string(rep.dim) +
                          " does not match " + std::to_string(ctx->n_dep()) +
                          " dependent variables");
    return mat_vec(exp_rep(rep, ctx), theta);
}

MatrixExpr k_gamma(const LieRepresentation& rep, const GaugeSection& g) {
    return exp_rep_at(rep, g.entries());
}

MatrixExpr k_gamma_inverse(const LieRepresentation& rep, const GaugeSection& g) {
    std::vector<Expr> minus;
    for (const auto& a : g.entries()) minus.push_back(neg(a));
    return exp_rep_at(rep, minus);
}

std::vector<MatrixExpr> r_matrices(const ContextPtr& ctx, const MatrixExpr& k) {
    for (int i = 0; i < k.dim(); ++i)
        for (int j = 0; j < k.dim(); ++j) {
            std::string leftover = gauge_symbol_in(k.at(i, j));
            if (!leftover.empty())
                throw input_error("twisted derivatives need a gauge-fixed matrix; entry (" +
                                  std::to_string(i) + "," + std::to_string(j) +
                                  ") still carries '" + leftover + "'");
        }
    MatrixExpr kinv = k.inverse();
    std::vector<MatrixExpr> out;
    for (std::size_t i = 0; i < ctx->n_indep(); ++i) {
        MatrixExpr dk = k.map([&](const Expr& e) { return total_derivative(ctx, i, e); });
        out.push_back(dk * kinv);
    }
    return out;
}

MuForm lambda_of_section(const LieRepresentation& rep, const GaugeSection& g) {
    std::vector<MatrixExpr> lambda;
    for (const auto& r : r_matrices(g.ctx(), k_gamma(rep, g))) lambda.push_back(-r);
    return MuForm::make(g.ctx(), std::move(lambda));
}

std::vector<Expr> nabla(const ContextPtr& ctx, const std::vector<MatrixExpr>& r, std::size_t i,
                        const std::vector<Expr>& v) {
    if (i >= r.size()) throw input_error("no twisted derivative along that direction");
    if ((int)v.size() != r[i].dim())
        throw input_error("vector length does not match the twisted derivative dimension");
    std::vector<Expr> out;
    for (std::size_t a = 0; a < v.size(); ++a) {
        std::vector<Expr> terms;
        terms.push_back(total_derivative(ctx, i, v[a]));
        for (std::size_t b = 0; b < v.size(); ++b)
            terms.push_back(neg(mul(r[i].at(a, b), v[b])));
        out.push_back(add(std::move(terms)));
    }
    return out;
}

ProlongedField twisted_prolong(const EvoField& w, const LieRepresentation& rep,
                               const GaugeSection& g, int order) {
    for (const auto& e : w.q) {
        std::string leftover = gauge_symbol_in(e);
        if (!leftover.empty())
            throw input_error("twisted prolongation needs a gauge-free field, found '" +
                              leftover + "'");
    }
    const auto& ctx = w.ctx;
    auto rs = r_matrices(ctx, k_gamma(rep, g));
    return prolong_with(w, order,
                        [&](std::size_t a, std::size_t i, const std::vector<Expr>& prev) {
                            std::vector<Expr> terms;
                            terms.push_back(total_derivative(ctx, i, prev[a]));
                            for (std::size_t b = 0; b < prev.size(); ++b)
                                terms.push_back(neg(mul(rs[i].at(a, b), prev[b])));
                            return add(std::move(terms));
                        });
}

EvoField complete_invariant(const EvoField& x0, const GaugeSection& g) {
    const auto& ctx = x0.ctx;
    MultiIndex zero = zero_index(ctx);
    std::vector<Expr> p;
    for (std::size_t m = 0; m < ctx->n_gauge(); ++m) {
        std::vector<Expr> terms;
        for (std::size_t a = 0; a < ctx->n_dep(); ++a)
            terms.push_back(mul(pdiff(g.entry(m), ctx->dep_jet_id(a, zero)), x0.q[a]));
        p.push_back(add(std::move(terms)));
    }
    return EvoField::make(ctx, x0.q, std::move(p));
}

EqualResult invariance_check(const EvoField& x, const GaugeSection& g, Oracle& oracle) {
    const auto& ctx = x.ctx;
    MultiIndex zero = zero_index(ctx);
    for (std::size_t m = 0; m < ctx->n_gauge(); ++m) {
        Expr lhs = restrict_to_section(g, x.p[m]);
        std::vector<Expr> terms;
        for (std::size_t a = 0; a < ctx->n_dep(); ++a)
            terms.push_back(mul(pdiff(g.entry(m), ctx->dep_jet_id(a, zero)),
                                restrict_to_section(g, x.q[a])));
        EqualResult r = oracle.check_equal(lhs, add(std::move(terms)),
                                           "section invariance for " + ctx->gauge_name(m));
        if (!r.ok()) return r;
    }
    return all_equal();
}

DiagramReport diagram_check(const LieRepresentation& rep, const std::vector<Expr>& theta,
                            const GaugeSection& g, int order, Oracle& oracle) {
    const auto& ctx = g.ctx();
    EvoField x0 = EvoField::make(ctx, gauged_field(rep, ctx, theta));
    EvoField x = complete_invariant(x0, g);
    MuForm mu = lambda_of_section(rep, g);

    ProlongedField upstairs = std_prolong(x, order);
    ProlongedField route_a = project_to_base(restrict_to_section(g, upstairs));

    EvoField w = project_to_base(restrict_to_section(g, x));
    ProlongedField route_b = mu_prolong(w, mu, order, &oracle);

    DiagramReport report{std::move(x),       std::move(mu), std::move(route_a),
                         std::move(route_b), all_equal(),   false,
                         all_equal()};
    report.invariance = invariance_check(report.x, g, oracle);
    report.structurally_equal = tables_identical(report.route_a, report.route_b);
    report.coefficients = report.structurally_equal
                              ? all_equal()
                              : tables_equal(report.route_a, report.route_b, oracle);
    return report;
}

namespace {

// Degree in the order-0 dependent variables of one canonical product factor,
// or no value when the factor is not polynomial in them.
std::optional<int> base_degree(const ContextPtr& ctx, const Expr& factor) {
    Expr b = factor;
    Rational e(1);
    if (factor->kind == NodeKind::Power) {
        b = factor->kids[0];
        e = factor->value;
    }
    bool touches = false;
    for (int id : coords_of(b)) {
        if (ctx->kind_of(id) == CoordKind::Independent) continue;
        if (ctx->kind_of(id) == CoordKind::DepJet && ctx->jet_order_of(id) == 0) {
            touches = true;
            continue;
        }
        return std::nullopt;  // jets or gauge symbols: not a section shape
    }
    if (!touches) return 0;
    if (b->kind != NodeKind::Coord || !e.is_integer() || e.is_negative()) return std::nullopt;
    return (int)e.num();
}

// Multiplies each monomial of a polynomial in (x, u) by 1/(1 + degree_u).
// This is the path integral sending dF/du^a back to F along rays from u = 0.
Expr ray_integral(const ContextPtr& ctx, const Expr& e) {
    std::vector<Expr> terms = e->kind == NodeKind::Sum ? e->kids : std::vector<Expr>{e};
    std::vector<Expr> out;
    for (const auto& t : terms) {
        std::vector<Expr> factors =
            t->kind == NodeKind::Product ? t->kids : std::vector<Expr>{t};
        int degree = 0;
        for (const auto& f : factors) {
            if (f->kind == NodeKind::Number) continue;
            auto d = base_degree(ctx, f);
            if (!d) throw input_error("entry is not polynomial in the dependent variables: " +
                                      to_string(e));
            degree += *d;
        }
        out.push_back(mul(num(Rational(1, 1 + degree)), t));
    }
    return add(std::move(out));
}

// Antiderivative along x of a polynomial free of dependent variables.
Expr x_integral(const ContextPtr& ctx, const Expr& e) {
    if (ctx->n_indep() != 1) throw std::logic_error("single-variable integral only");
    Expr x = sym(ctx, ctx->indep_id(0));
    std::vector<Expr> terms = e->kind == NodeKind::Sum ? e->kids : std::vector<Expr>{e};
    std::vector<Expr> out;
    for (const auto& t : terms) {
        std::vector<Expr> factors =
            t->kind == NodeKind::Product ? t->kids : std::vector<Expr>{t};
        Rational p(0);
        for (const auto& f : factors) {
            Expr b = f->kind == NodeKind::Power ? f->kids[0] : f;
            for (int id : coords_of(b))
                if (ctx->kind_of(id) != CoordKind::Independent)
                    throw input_error("entry is not an exact derivative: " + to_string(e));
            if (b->kind == NodeKind::Coord)
                p = p + (f->kind == NodeKind::Power ? f->value : Rational(1));
        }
        if (p == Rational(-1))
            throw input_error("entry integrates to a logarithm, not supported: " +
                              to_string(e));
        out.push_back(mul({num(Rational(1) / (p + Rational(1))), x, t}));
    }
    return add(std::move(out));
}

// F(x,u) with D_x F = e, for e linear in the first jets with polynomial
// coefficients.  Built from the ray integral of the jet coefficients plus a
// pure-x remainder; the result is verified exactly before returning.
Expr antiderivative_along_x(const ContextPtr& ctx, const Expr& e) {
    MultiIndex zero(ctx->n_indep());
    MultiIndex one = MultiIndex::unit(ctx->n_indep(), 0);
    std::vector<Expr> parts;
    for (std::size_t a = 0; a < ctx->n_dep(); ++a) {
        Expr coeff = pdiff(e, ctx->dep_jet_id(a, one));
        if (is_zero(coeff)) continue;
        parts.push_back(mul(sym(ctx, ctx->dep_jet_id(a, zero)), ray_integral(ctx, coeff)));
    }
    Expr f = add(parts);
    Expr remainder = add(e, neg(total_derivative(ctx, 0, f)));
    if (!is_zero(remainder)) f = add(f, x_integral(ctx, remainder));
    if (!equal(total_derivative(ctx, 0, f), e))
        throw input_error("entry is not an exact derivative: " + to_string(e));
    return f;
}

}  // namespace

MatrixExpr reconstruct_k_abelian(const ContextPtr& ctx, const MuForm& mu) {
    if (ctx->n_indep() != 1)
        throw input_error("reconstruction works over a single independent variable");
    const MatrixExpr& lambda = mu.lambda[0];
    MatrixExpr p = MatrixExpr::zero(lambda.dim());
    for (int i = 0; i < lambda.dim(); ++i)
        for (int j = 0; j < lambda.dim(); ++j)
            if (!is_zero(lambda.at(i, j)))
                p.set(i, j, antiderivative_along_x(ctx, lambda.at(i, j)));
    return matrix_exp_closed(Rational(-1) * p);
}

EqualResult verify_k(const MuForm& mu, const MatrixExpr& k, Oracle& oracle) {
    const auto& ctx = mu.ctx;
    for (std::size_t i = 0; i < ctx->n_indep(); ++i) {
        MatrixExpr lhs = k.map([&](const Expr& e) { return total_derivative(ctx, i, e); });
        MatrixExpr rhs = Rational(-1) * (mu.lambda[i] * k);
        EqualResult r = matrix_oracle_equal(oracle, lhs, rhs,
                                            "derivative identity along " + ctx->indep_name(i));
        if (!r.ok()) return r;
    }
    return all_equal();
}

LiftReport theorem2_lift(const EvoField& w, const MuForm& mu, const MatrixExpr& kg,
                         const LieRepresentation& rep, const GaugeSection& g, int order,
                         Oracle& oracle) {
    EqualResult vk = verify_k(mu, kg, oracle);
    if (!vk.ok())
        throw input_error("candidate matrix fails the derivative identity: " +
                          vk.witness->str());
    EqualResult match = matrix_oracle_equal(oracle, kg, k_gamma(rep, g), "gauge matrix");
    if (!match.ok())
        throw input_error("candidate matrix does not come from the section: " +
                          match.witness->str());

    const auto& ctx = g.ctx();
    MatrixExpr carrier = exp_rep(rep, ctx) * k_gamma_inverse(rep, g);
    EvoField x = complete_invariant(EvoField::make(ctx, mat_vec(carrier, w.q)), g);

    ProlongedField prolonged = std_prolong(x, order);
    ProlongedField downstairs = project_to_base(restrict_to_section(g, prolonged));
    ProlongedField target = mu_prolong(w, mu, order, &oracle);

    LiftReport report{std::move(x), std::move(prolonged), false, all_equal()};
    report.structurally_equal = tables_identical(downstairs, target);
    report.certificate = report.structurally_equal ? all_equal()
                                                   : tables_equal(downstairs, target, oracle);
    return report;
}

AppendixReport appendix_a1_check(const GaugeSection& g, const Expr& f, std::size_t i,
                                 Oracle& oracle) {
    const auto& ctx = g.ctx();
    if (!ctx->has_gauge_jets())
        throw input_error("appendix identities need a chart with gauge jets");

    Expr restricted = restrict_prolonged(g, f);
    Expr d_of_restricted = total_derivative(ctx, i, restricted);

    AppendixReport report;
    report.a1 = oracle.check_equal(
        restrict_prolonged(g, augmented_total_derivative(ctx, i, f)), d_of_restricted,
        "restriction of the augmented derivative");
    report.a2 = oracle.check_equal(
        restrict_prolonged(g, total_derivative(ctx, i, f)),
        add(d_of_restricted, neg(restrict_prolonged(g, gauge_derivative(ctx, i, f)))),
        "restriction of the plain derivative");
    return report;
}

EqualResult appendix_z_check(const LieRepresentation& rep, const GaugeSection& g, std::size_t i,
                             Oracle& oracle) {
    const auto& ctx = g.ctx();
    if (!ctx->has_gauge_jets())
        throw input_error("appendix identities need a chart with gauge jets");
    MatrixExpr k = exp_rep(rep, ctx);
    std::vector<Expr> minus;
    for (std::size_t m = 0; m < ctx->n_gauge(); ++m)
        minus.push_back(neg(sym(ctx, ctx->gauge_id(m))));
    MatrixExpr kinv = exp_rep_at(rep, minus);
    MatrixExpr zk = k.map([&](const Expr& e) { return gauge_derivative(ctx, i, e); });
    MatrixExpr lhs =
        (zk * kinv).map([&](const Expr& e) { return restrict_prolonged(g, e); });
    MatrixExpr rhs = r_matrices(ctx, k_gamma(rep, g))[i];
    return matrix_oracle_equal(oracle, lhs, rhs, "gauge variation of the group element");
}

}  // namespace jetgauge
