#include "jetgauge/musym.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "jetgauge/jet.hpp"
#include "jetgauge/prolong.hpp"

namespace jetgauge {

namespace {

bool covers(const MultiIndex& j, const MultiIndex& j0) {
    for (std::size_t i = 0; i < j.size(); ++i)
        if (j[i] < j0[i]) return false;
    return true;
}

// Substitution map sending every derived consequence of the equations,
// u^a_{J0+L} -> D_L(rhs), to an expression in the free coordinates.  Built
// by increasing jet order; each wave is substituted against the map so far,
// then against its own entries until no consequence survives (systems in
// several base variables can reference one wave from itself).
std::map<int, Expr> consequence_map(const SolvedEquation& eq) {
    const auto& ctx = eq.ctx;
    std::map<int, Expr> sub;
    for (std::size_t e = 0; e < eq.leads.size(); ++e)
        sub[ctx->dep_jet_id(eq.leads[e].a, eq.leads[e].j)] = eq.rhs[e];

    for (int r = eq.order + 1; r <= ctx->order(); ++r) {
        std::map<int, Expr> wave;
        for (int id : ctx->dep_jet_ids()) {
            if (ctx->jet_order_of(id) != r) continue;
            auto [a, j] = ctx->dep_jet_info(id);
            for (const auto& lead : eq.leads) {
                if (lead.a != a || !covers(j, lead.j)) continue;
                // step down along the first direction that stays a consequence
                for (std::size_t i = 0; i < ctx->n_indep(); ++i) {
                    if (j[i] <= lead.j[i]) continue;
                    MultiIndex prev = j.drop(i);
                    auto it = sub.find(ctx->dep_jet_id(a, prev));
                    if (it == sub.end()) continue;
                    wave[id] = substitute(total_derivative(ctx, i, it->second), sub);
                    break;
                }
                break;
            }
        }
        for (int round = 0; round < 8 && !wave.empty(); ++round) {
            bool dirty = false;
            for (auto& [id, val] : wave) {
                Expr next = substitute(val, wave);
                if (!equal(next, val)) {
                    val = next;
                    dirty = true;
                }
            }
            if (!dirty) break;
            if (round == 7)
                throw input_error(
                    "equation consequences reference each other cyclically; "
                    "cannot restrict to the solution manifold");
        }
        sub.insert(wave.begin(), wave.end());
    }
    return sub;
}

}  // namespace

SolvedEquation SolvedEquation::make(ContextPtr ctx,
                                    std::vector<std::pair<std::string, Expr>> eqs) {
    if (!ctx) throw input_error("equation needs a chart");
    if (eqs.empty()) throw input_error("equation list is empty");

    SolvedEquation out;
    out.ctx = ctx;
    std::set<int> lead_ids;
    for (auto& [name, rhs] : eqs) {
        auto id = ctx->id_of(name);
        if (!id) throw input_error("unknown jet symbol '" + name + "'");
        if (ctx->kind_of(*id) != CoordKind::DepJet || ctx->jet_order_of(*id) == 0)
            throw input_error("left side '" + name + "' is not a derivative symbol");
        if (!lead_ids.insert(*id).second)
            throw input_error("left side '" + name + "' appears twice");
        auto [a, j] = ctx->dep_jet_info(*id);
        out.leads.push_back({a, j});
        out.rhs.push_back(rhs);
    }

    out.order = out.leads[0].j.order();
    for (const auto& lead : out.leads)
        if (lead.j.order() != out.order)
            throw input_error("left sides must share one order; found " +
                              std::to_string(lead.j.order()) + " and " +
                              std::to_string(out.order));

    for (std::size_t e = 0; e < out.rhs.size(); ++e) {
        const Expr& rhs = out.rhs[e];
        std::string lead_name = ctx->name_of(ctx->dep_jet_id(out.leads[e].a, out.leads[e].j));
        if (!rhs) throw input_error("right side for " + lead_name + " is empty");
        const JetContext* rc = chart_of(rhs);
        if (rc && rc != ctx.get())
            throw input_error("right side for " + lead_name + " lives in a different chart");
        for (int id : coords_of(rhs)) {
            CoordKind k = ctx->kind_of(id);
            if (k == CoordKind::Gauge || k == CoordKind::GaugeJet)
                throw input_error("right side for " + lead_name + " uses gauge symbol '" +
                                  ctx->name_of(id) + "'");
            if (k == CoordKind::DepJet && ctx->jet_order_of(id) > out.order)
                throw input_error("right side for " + lead_name +
                                  " exceeds the equation order with '" + ctx->name_of(id) +
                                  "'");
            if (lead_ids.count(id))
                throw input_error("right side for " + lead_name + " uses the left side '" +
                                  ctx->name_of(id) + "'; not in solved form");
        }
    }
    return out;
}

SymmetryReport mu_symmetry_check(const SolvedEquation& eq, const EvoField& w,
                                 const MuForm& mu, Oracle& oracle) {
    const auto& ctx = eq.ctx;
    if (w.ctx.get() != ctx.get() || mu.ctx.get() != ctx.get())
        throw input_error("equation, field, and twist must share one chart");

    ProlongedField y = mu_prolong(w, mu, eq.order, &oracle);
    auto on_solution = consequence_map(eq);

    SymmetryReport report;
    report.verdict.verdict = EqualResult::Equal;
    for (std::size_t e = 0; e < eq.leads.size(); ++e) {
        Expr raw = add(y.coeff(eq.leads[e].a, eq.leads[e].j), neg(y.apply(eq.rhs[e])));
        report.residuals.push_back(substitute(raw, on_solution));
    }
    for (std::size_t e = 0; e < eq.leads.size(); ++e) {
        if (is_zero(report.residuals[e])) continue;
        std::string lead_name = ctx->name_of(ctx->dep_jet_id(eq.leads[e].a, eq.leads[e].j));
        EqualResult r =
            oracle.check_zero(report.residuals[e], "determining equation for " + lead_name);
        if (!r.ok()) {
            report.verdict = r;
            break;
        }
    }
    return report;
}

SymmetryReport symmetry_check(const SolvedEquation& eq, const EvoField& w, Oracle& oracle) {
    std::vector<MatrixExpr> zero(eq.ctx->n_indep(), MatrixExpr::zero((int)eq.ctx->n_dep()));
    return mu_symmetry_check(eq, w, MuForm::make(eq.ctx, std::move(zero)), oracle);
}

}  // namespace jetgauge
