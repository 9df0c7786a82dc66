#include "jetgauge/lie.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace jetgauge {

namespace {

MatrixExpr table2(long long a, long long b, long long c, long long d) {
    return MatrixExpr::scalar_table(2, {Rational(a), Rational(b), Rational(c), Rational(d)});
}

MatrixExpr table_n(int n, std::vector<long long> v) {
    std::vector<Rational> rs(v.begin(), v.end());
    return MatrixExpr::scalar_table(n, rs);
}

void need_params(const LieRepresentation& rep, const std::vector<Expr>& alpha) {
    if ((int)alpha.size() != rep.params)
        throw input_error("representation '" + rep.name + "' takes " +
                          std::to_string(rep.params) + " parameters, got " +
                          std::to_string(alpha.size()));
}

// |alpha| for the three-parameter families.
Expr radius(const std::vector<Expr>& alpha) {
    std::vector<Expr> sq;
    for (const auto& a : alpha) sq.push_back(powr(a, Rational(2)));
    return sqrt_e(add(sq));
}

LieRepresentation make_nilpotent2() {
    LieRepresentation rep;
    rep.name = "nilpotent2";
    rep.dim = 2;
    rep.params = 1;
    rep.generators = {table2(0, 1, 0, 0)};
    rep.exp_fn = [](const std::vector<Expr>& a) {
        return MatrixExpr(2, {num(1), a[0], num(0), num(1)});
    };
    return rep;
}

LieRepresentation make_lower_nilpotent2() {
    LieRepresentation rep;
    rep.name = "lower-nilpotent2";
    rep.dim = 2;
    rep.params = 1;
    rep.generators = {table2(0, 0, 1, 0)};
    rep.exp_fn = [](const std::vector<Expr>& a) {
        return MatrixExpr(2, {num(1), num(0), a[0], num(1)});
    };
    return rep;
}

LieRepresentation make_so2() {
    LieRepresentation rep;
    rep.name = "so2";
    rep.dim = 2;
    rep.params = 1;
    rep.generators = {table2(0, -1, 1, 0)};
    rep.exp_fn = [](const std::vector<Expr>& a) {
        Expr c = cos_e(a[0]), s = sin_e(a[0]);
        return MatrixExpr(2, {c, neg(s), s, c});
    };
    return rep;
}

LieRepresentation make_su2_real4() {
    LieRepresentation rep;
    rep.name = "su2-real4";
    rep.dim = 4;
    rep.params = 3;
    rep.generators = {
        table_n(4, {0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0}),
        table_n(4, {0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0}),
        table_n(4, {0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0}),
    };
    auto gens = rep.generators;
    // L(a)^2 = -|a|^2 I, so exp(L) = cos|a| I + (sin|a|/|a|) L.
    rep.exp_fn = [gens](const std::vector<Expr>& a) {
        Expr w = radius(a);
        MatrixExpr l = MatrixExpr::zero(4);
        for (int m = 0; m < 3; ++m) l = l + a[m] * gens[m];
        Expr sfac = mul(sin_e(w), powr(w, Rational(-1)));
        return cos_e(w) * MatrixExpr::identity(4) + sfac * l;
    };
    return rep;
}

LieRepresentation make_so3() {
    LieRepresentation rep;
    rep.name = "so3";
    rep.dim = 3;
    rep.params = 3;
    rep.generators = {
        table_n(3, {0, 0, 0, 0, 0, -1, 0, 1, 0}),
        table_n(3, {0, 0, 1, 0, 0, 0, -1, 0, 0}),
        table_n(3, {0, -1, 0, 1, 0, 0, 0, 0, 0}),
    };
    auto gens = rep.generators;
    // L(a)^3 = -|a|^2 L(a): exp(L) = I + (sin w/w) L + ((1-cos w)/w^2) L^2.
    rep.exp_fn = [gens](const std::vector<Expr>& a) {
        Expr w = radius(a);
        MatrixExpr l = MatrixExpr::zero(3);
        for (int m = 0; m < 3; ++m) l = l + a[m] * gens[m];
        Expr sfac = mul(sin_e(w), powr(w, Rational(-1)));
        Expr cfac = mul(sub(num(1), cos_e(w)), powr(w, Rational(-2)));
        return MatrixExpr::identity(3) + sfac * l + cfac * (l * l);
    };
    return rep;
}

std::map<std::string, LieRepresentation>& registry() {
    static std::map<std::string, LieRepresentation> reps = [] {
        std::map<std::string, LieRepresentation> m;
        for (auto& r : {make_nilpotent2(), make_lower_nilpotent2(), make_so2(),
                        make_su2_real4(), make_so3()})
            m.emplace(r.name, r);
        return m;
    }();
    return reps;
}

}  // namespace

const LieRepresentation& representation(const std::string& name) {
    auto& reps = registry();
    auto it = reps.find(name);
    if (it == reps.end()) {
        std::string known;
        for (const auto& [k, v] : reps) {
            if (!known.empty()) known += ", ";
            known += k;
        }
        throw input_error("unknown representation '" + name + "' (available: " + known + ")");
    }
    return it->second;
}

std::vector<std::string> representation_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

void register_representation(LieRepresentation rep) {
    if (rep.name.empty()) throw input_error("representation needs a name");
    if ((int)rep.generators.size() != rep.params)
        throw input_error("representation '" + rep.name + "' declares " +
                          std::to_string(rep.params) + " parameters but has " +
                          std::to_string(rep.generators.size()) + " generators");
    for (const auto& g : rep.generators)
        if (g.dim() != rep.dim)
            throw input_error("generator dimension mismatch in representation '" + rep.name +
                              "'");
    if (!rep.exp_fn) throw input_error("representation '" + rep.name + "' has no exponential");
    registry().insert_or_assign(rep.name, std::move(rep));
}

LieRepresentation custom_representation(std::vector<MatrixExpr> generators) {
    if (generators.empty()) throw input_error("custom representation needs generators");
    LieRepresentation rep;
    rep.name = "custom";
    rep.dim = generators[0].dim();
    rep.params = (int)generators.size();
    rep.generators = std::move(generators);
    for (const auto& g : rep.generators)
        if (g.dim() != rep.dim) throw input_error("custom representation generators differ in dimension");
    rep.exp_fn = [rep](const std::vector<Expr>& alpha) {
        return matrix_exp_closed(algebra_element(rep, alpha));
    };
    return rep;
}

MatrixExpr algebra_element(const LieRepresentation& rep, const std::vector<Expr>& alpha) {
    need_params(rep, alpha);
    MatrixExpr l = MatrixExpr::zero(rep.dim);
    for (int m = 0; m < rep.params; ++m) l = l + alpha[m] * rep.generators[m];
    return l;
}

MatrixExpr exp_rep_at(const LieRepresentation& rep, const std::vector<Expr>& alpha) {
    need_params(rep, alpha);
    MatrixExpr k = rep.exp_fn(alpha);
    if (k.dim() != rep.dim)
        throw input_error("representation '" + rep.name + "' exponential has wrong dimension");
    return k;
}

MatrixExpr exp_rep(const LieRepresentation& rep, const ContextPtr& ctx) {
    if ((int)ctx->n_gauge() != rep.params)
        throw input_error("chart has " + std::to_string((int)ctx->n_gauge()) +
                          " gauge parameters but representation '" + rep.name + "' takes " +
                          std::to_string(rep.params));
    std::vector<Expr> alpha;
    for (int m = 0; m < rep.params; ++m) alpha.push_back(sym(ctx, ctx->gauge_id(m)));
    return exp_rep_at(rep, alpha);
}

std::vector<double> exp_series_oracle(const LieRepresentation& rep,
                                       const std::vector<double>& alpha) {
    if ((int)alpha.size() != rep.params)
        throw input_error("representation '" + rep.name + "' takes " +
                          std::to_string(rep.params) + " parameters, got " +
                          std::to_string(alpha.size()));
    int n = rep.dim;
    EvalPoint none;
    std::vector<double> l(n * n, 0.0);
    for (int m = 0; m < rep.params; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                l[i * n + j] += alpha[m] * eval(rep.generators[m].at(i, j), none);

    double norm = 0.0;
    for (double v : l) norm += std::abs(v);
    int squarings = 0;
    while (norm > 0.5 && squarings < 60) {
        norm /= 2.0;
        ++squarings;
    }
    double scale = std::ldexp(1.0, -squarings);
    for (double& v : l) v *= scale;

    auto matmul = [n](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> c(n * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
        return c;
    };

    std::vector<double> result(n * n, 0.0), term(n * n, 0.0);
    for (int i = 0; i < n; ++i) result[i * n + i] = term[i * n + i] = 1.0;
    for (int k = 1; k <= 24; ++k) {
        term = matmul(term, l);
        for (double& v : term) v /= k;
        for (int idx = 0; idx < n * n; ++idx) result[idx] += term[idx];
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

std::vector<Expr> mat_vec(const MatrixExpr& m, const std::vector<Expr>& v) {
    if ((int)v.size() != m.dim()) throw input_error("matrix and vector dimensions differ");
    std::vector<Expr> out;
    for (int i = 0; i < m.dim(); ++i) {
        std::vector<Expr> terms;
        for (int j = 0; j < m.dim(); ++j) terms.push_back(mul(m.at(i, j), v[j]));
        out.push_back(add(terms));
    }
    return out;
}

}  // namespace jetgauge
