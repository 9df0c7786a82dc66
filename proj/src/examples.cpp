#include "jetgauge/examples.hpp"

#include <array>
#include <string>
#include <vector>

#include "jetgauge/gauge.hpp"
#include "jetgauge/parse.hpp"

namespace jetgauge {

namespace {

Expr pe(const ContextPtr& ctx, const std::string& s) { return parse_expr(s, ctx); }

std::string join_note(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "; " + b;
}

void field_results(Report& r, const std::string& name, const EvoField& f) {
    for (std::size_t a = 0; a < f.q.size(); ++a)
        r.add_result(name + ".q." + f.ctx->dep_name(a), to_string(f.q[a]));
    for (std::size_t m = 0; m < f.p.size(); ++m)
        r.add_result(name + ".p." + f.ctx->gauge_name(m), to_string(f.p[m]));
}

void table_results(Report& r, const std::string& name, const ProlongedField& y) {
    const auto& ctx = y.ctx();
    for (const auto& j : multi_indices_up_to(ctx->n_indep(), y.order()))
        for (std::size_t a = 0; a < ctx->n_dep(); ++a)
            r.add_result(name + "." + ctx->name_of(ctx->dep_jet_id(a, j)),
                         to_string(y.coeff(a, j)));
}

// Structural comparison against pinned values, with the oracle as fallback;
// the verdict note records which route settled it.
void exprs_verdict(Report& r, Oracle& o, const std::string& name,
                   const std::vector<Expr>& got, const std::vector<Expr>& want,
                   const std::vector<std::string>& labels, const std::string& note = "") {
    bool structural = true;
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (equal(got[i], want[i])) continue;
        structural = false;
        auto er = o.check_equal(got[i], want[i], labels[i]);
        if (!er.ok()) {
            r.add_verdict(name, er, note);
            return;
        }
    }
    r.add_verdict(name, true, join_note(note, structural ? "exact" : "numeric"));
}

void matrix_verdict(Report& r, Oracle& o, const std::string& name, const MatrixExpr& got,
                    const MatrixExpr& want, const std::string& note = "") {
    if (got.equal_to(want)) {
        r.add_verdict(name, true, join_note(note, "exact"));
        return;
    }
    auto er = matrix_oracle_equal(o, got, want, name);
    r.add_verdict(name, er, join_note(note, er.ok() ? "numeric" : ""));
}

void field_verdict(Report& r, Oracle& o, const std::string& name, const EvoField& got,
                   const std::vector<std::string>& qref,
                   const std::vector<std::string>& pref, const std::string& note = "") {
    std::vector<Expr> gv, wv;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < got.q.size(); ++a) {
        gv.push_back(got.q[a]);
        wv.push_back(pe(got.ctx, qref[a]));
        labels.push_back("Q." + got.ctx->dep_name(a));
    }
    for (std::size_t m = 0; m < pref.size(); ++m) {
        gv.push_back(got.p[m]);
        wv.push_back(pe(got.ctx, pref[m]));
        labels.push_back("P." + got.ctx->gauge_name(m));
    }
    exprs_verdict(r, o, name, gv, wv, labels, note);
}

// Pinned coefficient tables, one verdict per derivative order.
void table_verdicts(Report& r, Oracle& o, const ProlongedField& y, const std::string& base,
                    const std::vector<std::vector<Expr>>& want,
                    const std::string& note0 = "") {
    static const char* suffix[] = {"", "-x", "-xx", "-xxx"};
    const auto& ctx = y.ctx();
    for (std::size_t k = 0; k < want.size(); ++k) {
        MultiIndex j{(int)k};
        std::vector<Expr> got;
        std::vector<std::string> labels;
        for (std::size_t a = 0; a < ctx->n_dep(); ++a) {
            got.push_back(y.coeff(a, j));
            labels.push_back(ctx->name_of(ctx->dep_jet_id(a, j)));
        }
        exprs_verdict(r, o, base + suffix[k] + "-matches-reference", got, want[k], labels,
                      k == 0 ? note0 : "");
    }
}

void table_verdicts(Report& r, Oracle& o, const ProlongedField& y, const std::string& base,
                    const std::vector<std::vector<std::string>>& want,
                    const std::string& note0 = "") {
    std::vector<std::vector<Expr>> w;
    for (const auto& row : want) {
        w.emplace_back();
        for (const auto& s : row) w.back().push_back(pe(y.ctx(), s));
    }
    table_verdicts(r, o, y, base, w, note0);
}

std::string routes_note(bool structural) {
    return structural ? "coefficients identical after canonicalization"
                      : "verified numerically";
}

// ---------------------------------------------------------------- 1 .. 4
// Two dependent variables, one gauge parameter, section alpha = u.

struct SmallGoldens {
    std::vector<std::string> q, p;
    std::vector<std::string> kg;
    std::vector<std::string> lambda;
    std::vector<std::vector<std::string>> tables;
    std::string table_note;
};

void small_diagram(Report& r, const OracleConfig& cfg, const std::string& rep_name,
                   const std::vector<std::string>& theta, const SmallGoldens& gold) {
    auto ctx = JetContext::make({"x"}, {"u", "v"}, {"a"}, 2);
    Oracle o(ctx, cfg);
    const auto& rep = representation(rep_name);
    auto g = GaugeSection::make(ctx, {pe(ctx, "u")});
    std::vector<Expr> th;
    for (const auto& s : theta) th.push_back(pe(ctx, s));

    auto d = diagram_check(rep, th, g, 2, o);
    field_results(r, "field", d.x);
    r.add_result("k-gamma", k_gamma(rep, g).str());
    r.add_result("lambda", d.mu.lambda[0].str());
    table_results(r, "eta", d.route_b);

    field_verdict(r, o, "field-matches-reference", d.x, gold.q, gold.p);
    matrix_verdict(r, o, "gauge-matrix-matches-reference", k_gamma(rep, g),
                   MatrixExpr::parse_table(ctx, 2, gold.kg));
    matrix_verdict(r, o, "lambda-matches-reference", d.mu.lambda[0],
                   MatrixExpr::parse_table(ctx, 2, gold.lambda));
    table_verdicts(r, o, d.route_b, "eta", gold.tables, gold.table_note);
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(d.route_b, d.mu, o));
    r.add_verdict("section-invariance", d.invariance);
    r.add_verdict("routes-agree", d.coefficients, routes_note(d.structurally_equal));
}

void example1(Report& r, const OracleConfig& cfg) {
    SmallGoldens gold;
    gold.q = {"2*u+a*v", "v"};
    gold.p = {"2*u+a*v"};
    gold.kg = {"1", "u", "0", "1"};
    gold.lambda = {"0", "-u_x", "0", "0"};
    gold.tables = {{"2*u+u*v", "v"}, {"2*u_x+u*v_x", "v_x"}, {"2*u_xx+u*v_xx", "v_xx"}};
    small_diagram(r, cfg, "nilpotent2", {"2*u", "v"}, gold);
}

void example2(Report& r, const OracleConfig& cfg) {
    SmallGoldens gold;
    gold.q = {"-v+a*u", "u"};
    gold.p = {"-v+a*u"};
    gold.kg = {"1", "u", "0", "1"};
    gold.lambda = {"0", "-u_x", "0", "0"};
    gold.tables = {{"u^2-v", "u"}, {"u*u_x-v_x", "u_x"}, {"u*u_xx-v_xx", "u_xx"}};
    small_diagram(r, cfg, "nilpotent2", {"-v", "u"}, gold);
}

void example3(Report& r, const OracleConfig& cfg) {
    SmallGoldens gold;
    gold.q = {"2*u*cos(a)-v*sin(a)", "v*cos(a)+2*u*sin(a)"};
    gold.p = {"2*u*cos(a)-v*sin(a)"};
    gold.kg = {"cos(u)", "-sin(u)", "sin(u)", "cos(u)"};
    gold.lambda = {"0", "u_x", "-u_x", "0"};
    gold.tables = {{"2*u*cos(u)-v*sin(u)", "v*cos(u)+2*u*sin(u)"},
                   {"2*u_x*cos(u)-v_x*sin(u)", "v_x*cos(u)+2*u_x*sin(u)"},
                   {"2*u_xx*cos(u)-v_xx*sin(u)", "v_xx*cos(u)+2*u_xx*sin(u)"}};
    gold.table_note = "reference table adjusted: cosine-for-sine slips corrected";
    small_diagram(r, cfg, "so2", {"2*u", "v"}, gold);
}

void example4(Report& r, const OracleConfig& cfg) {
    SmallGoldens gold;
    gold.q = {"-v*cos(a)-u*sin(a)", "u*cos(a)-v*sin(a)"};
    gold.p = {"-v*cos(a)-u*sin(a)"};
    gold.kg = {"cos(u)", "-sin(u)", "sin(u)", "cos(u)"};
    gold.lambda = {"0", "u_x", "-u_x", "0"};
    gold.tables = {{"-v*cos(u)-u*sin(u)", "u*cos(u)-v*sin(u)"},
                   {"-v_x*cos(u)-u_x*sin(u)", "u_x*cos(u)-v_x*sin(u)"},
                   {"-v_xx*cos(u)-u_xx*sin(u)", "u_xx*cos(u)-v_xx*sin(u)"}};
    gold.table_note = "reference table adjusted: cosine-for-sine slips corrected";
    small_diagram(r, cfg, "so2", {"-v", "u"}, gold);
}

// ---------------------------------------------------------------- 5 .. 6
// Reconstruction of the gauging matrix from the one-form, then the lift.

struct LiftGoldens {
    std::vector<std::string> k;
    std::vector<std::string> q, p;
    std::vector<std::vector<std::string>> eta;
    std::vector<std::vector<std::string>> psi;
};

void lift_example(Report& r, const OracleConfig& cfg, const LieRepresentation& rep,
                  const std::vector<std::string>& lam, const std::string& section,
                  const std::vector<std::string>& w0, const LiftGoldens& gold) {
    auto ctx = JetContext::make({"x"}, {"u", "v"}, {"a"}, 2);
    Oracle o(ctx, cfg);
    auto mu = MuForm::make(ctx, {MatrixExpr::parse_table(ctx, 2, lam)});

    auto k = reconstruct_k_abelian(ctx, mu);
    r.add_result("k-gamma", k.str());
    matrix_verdict(r, o, "matrix-reconstruction-matches-reference", k,
                   MatrixExpr::parse_table(ctx, 2, gold.k));
    r.add_verdict("derivative-identity", verify_k(mu, k, o));
    auto g = GaugeSection::make(ctx, {pe(ctx, section)});
    r.add_verdict("section-recovery", k_gamma(rep, g).equal_to(k),
                  "reconstruction agrees with the pinned section");

    std::vector<Expr> q0;
    for (const auto& s : w0) q0.push_back(pe(ctx, s));
    auto w = EvoField::make(ctx, q0);
    auto y = mu_prolong(w, mu, 2, &o);
    table_results(r, "eta", y);
    table_verdicts(r, o, y, "eta", gold.eta);
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(y, mu, o));

    auto lift = theorem2_lift(w, mu, k, rep, g, 2, o);
    field_results(r, "lifted", lift.x);
    field_verdict(r, o, "lifted-field-matches-reference", lift.x, gold.q, gold.p);
    table_results(r, "psi", lift.prolonged);
    table_verdicts(r, o, lift.prolonged, "psi", gold.psi);
    r.add_verdict("lift-certificate", lift.certificate,
                  routes_note(lift.structurally_equal));
}

void example5(Report& r, const OracleConfig& cfg) {
    auto rep = custom_representation(
        {MatrixExpr::scalar_table(2, {Rational(0), Rational(-1), Rational(0), Rational(0)})});
    LiftGoldens gold;
    gold.k = {"1", "-u", "0", "1"};
    gold.q = {"(u-a)*v", "v"};
    gold.p = {"(u-a)*v"};
    gold.eta = {{"0", "v"}, {"u_x*v", "v_x"}, {"u_xx*v+2*u_x*v_x", "v_xx"}};
    gold.psi = {{"(u-a)*v", "v"},
                {"u_x*v+(u-a)*v_x", "v_x"},
                {"u_xx*v+2*u_x*v_x+(u-a)*v_xx", "v_xx"}};
    lift_example(r, cfg, rep, {"0", "u_x", "0", "0"}, "u", {"0", "v"}, gold);
}

void example6(Report& r, const OracleConfig& cfg) {
    const auto& rep = representation("lower-nilpotent2");
    LiftGoldens gold;
    gold.k = {"1", "0", "-v", "1"};
    gold.q = {"1", "a+v"};
    gold.p = {"-a-v"};
    gold.eta = {{"1", "0"}, {"0", "v_x"}, {"0", "v_xx"}};
    gold.psi = {{"1", "a+v"}, {"0", "v_x"}, {"0", "v_xx"}};
    lift_example(r, cfg, rep, {"0", "0", "v_x", "0"}, "-v", {"1", "0"}, gold);
    auto ctx = JetContext::make({"x"}, {"u", "v"}, {"a"}, 2);
    Oracle o(ctx, cfg);
    matrix_verdict(r, o, "exponential-matches-reference",
                   exp_rep_at(rep, {pe(ctx, "a")}),
                   MatrixExpr::parse_table(ctx, 2, {"1", "0", "a", "1"}),
                   "reference display adjusted: degenerate corner entry corrected");
}

// ---------------------------------------------------------------- 7 .. 10
// Four dependent variables, three gauge parameters.

ContextPtr big_chart() {
    return JetContext::make({"x"}, {"u", "v", "w", "z"}, {"a1", "a2", "a3"}, 2);
}

SampleDomain big_domain() {
    SampleDomain dom;
    dom.default_lo = -0.9;
    dom.default_hi = 0.9;
    dom.set("a1", 0.05, 0.9).set("a2", 0.05, 0.9).set("a3", 0.05, 0.9);
    return dom;
}

const std::array<int, 16> kCoupling = {0, 1, 5, 2, -1, 0, 2, -5, -5, -2, 0, 1, -2, 5, -1, 0};

MatrixExpr coupling_matrix() {
    std::vector<Rational> v;
    for (int e : kCoupling) v.emplace_back(e);
    return MatrixExpr::scalar_table(4, v);
}

std::vector<std::string> coupling_lambda_strings() {
    std::vector<std::string> v;
    for (int e : kCoupling)
        v.push_back(e == 0 ? "0" : std::to_string(-e) + "*z_x");
    return v;
}

// cos(W) I + sin(W)/sqrt(30) C at W = sqrt(30) z.
MatrixExpr coupling_k_reference(const ContextPtr& ctx) {
    Expr om = pe(ctx, "30^1/2*z");
    return cos_e(om) * MatrixExpr::identity(4) +
           mul(sin_e(om), powr(num(30), Rational(-1, 2))) * coupling_matrix();
}

std::vector<Expr> coupling_eta_row(const ContextPtr& ctx,
                                   const std::array<std::string, 4>& th) {
    Expr om = pe(ctx, "30^1/2*z");
    std::vector<Expr> t;
    for (const auto& s : th) t.push_back(pe(ctx, s));
    auto ct = mat_vec(coupling_matrix(), t);
    std::vector<Expr> out;
    for (int a = 0; a < 4; ++a)
        out.push_back(add(mul(cos_e(om), t[a]),
                          mul({sin_e(om), powr(num(30), Rational(-1, 2)), ct[a]})));
    return out;
}

void example7(Report& r, const OracleConfig& cfg) {
    auto ctx = big_chart();
    Oracle o(ctx, cfg, big_domain());
    const auto& rep = representation("su2-real4");
    auto g = GaugeSection::make(ctx, {pe(ctx, "(pi/2)*u"), pe(ctx, "0"),
                                      pe(ctx, "(pi/2)*(1-u^2)^1/2")});
    auto d = diagram_check(rep, {pe(ctx, "-u"), pe(ctx, "0"), pe(ctx, "0"), pe(ctx, "0")},
                           g, 2, o);
    field_results(r, "field", d.x);
    r.add_result("k-gamma", k_gamma(rep, g).str());
    r.add_result("lambda", d.mu.lambda[0].str());
    table_results(r, "eta", d.route_b);

    const std::string wn = "(a1^2+a2^2+a3^2)^1/2";
    const std::string wi = "(a1^2+a2^2+a3^2)^-1/2";
    field_verdict(r, o, "field-matches-reference", d.x,
                  {"-u*cos(" + wn + ")", "u*a1*sin(" + wn + ")*" + wi,
                   "u*a3*sin(" + wn + ")*" + wi, "u*a2*sin(" + wn + ")*" + wi},
                  {"-(pi/2)*u*cos(" + wn + ")", "0",
                   "(pi/2)*u^2*(1-u^2)^-1/2*cos(" + wn + ")"});
    const std::string rho = "(1-u^2)^1/2";
    matrix_verdict(r, o, "gauge-matrix-matches-reference", k_gamma(rep, g),
                   MatrixExpr::parse_table(ctx, 4,
                                           {"0", "u", rho, "0",
                                            "-u", "0", "0", "-" + rho,
                                            "-" + rho, "0", "0", "u",
                                            "0", rho, "-u", "0"}));
    r.add_verdict("gauge-matrix-inverse-is-negative",
                  k_gamma_inverse(rep, g).equal_to(-k_gamma(rep, g)), "exact");
    const std::string lq = "u_x*(1-u^2)^-1/2";
    matrix_verdict(r, o, "lambda-matches-reference", d.mu.lambda[0],
                   MatrixExpr::parse_table(ctx, 4,
                                           {"0", "0", "0", "-" + lq,
                                            "0", "0", "-" + lq, "0",
                                            "0", lq, "0", "0",
                                            lq, "0", "0", "0"}));
    table_verdicts(r, o, d.route_b, "eta",
                   {{"0", "u^2", "u*" + rho, "0"},
                    {"0", "u*u_x", "u_x*" + rho, "0"},
                    {"0", "u*u_xx", "u_xx*" + rho, "0"}},
                   "reference sign corrected to follow the displayed prolongation");
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(d.route_b, d.mu, o));
    r.add_verdict("section-invariance", d.invariance);
    r.add_verdict("routes-agree", d.coefficients, routes_note(d.structurally_equal));
}

void example8(Report& r, const OracleConfig& cfg) {
    auto ctx = big_chart();
    auto dom = big_domain();
    dom.set("z", 0.05, 0.9);
    Oracle o(ctx, cfg, dom);
    const auto& rep = representation("su2-real4");
    auto g = GaugeSection::make(ctx, {pe(ctx, "z"), pe(ctx, "2*z"), pe(ctx, "5*z")});
    auto d = diagram_check(rep, {pe(ctx, "u"), pe(ctx, "v"), pe(ctx, "-z"), pe(ctx, "w")},
                           g, 2, o);
    field_results(r, "field", d.x);
    r.add_result("k-gamma", k_gamma(rep, g).str());
    r.add_result("lambda", d.mu.lambda[0].str());
    table_results(r, "eta", d.route_b);

    matrix_verdict(r, o, "gauge-matrix-matches-reference", k_gamma(rep, g),
                   coupling_k_reference(ctx));
    matrix_verdict(r, o, "lambda-matches-reference", d.mu.lambda[0],
                   MatrixExpr::parse_table(ctx, 4, coupling_lambda_strings()));
    table_verdicts(r, o, d.route_b, "eta",
                   {coupling_eta_row(ctx, {"u", "v", "-z", "w"}),
                    coupling_eta_row(ctx, {"u_x", "v_x", "-z_x", "w_x"}),
                    coupling_eta_row(ctx, {"u_xx", "v_xx", "-z_xx", "w_xx"})});
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(d.route_b, d.mu, o));
    r.add_verdict("section-invariance", d.invariance);
    r.add_verdict("routes-agree", d.coefficients, routes_note(d.structurally_equal));
}

void example9(Report& r, const OracleConfig& cfg) {
    auto ctx = big_chart();
    auto dom = big_domain();
    dom.set("u", 0.1, 0.9).set("v", 0.05, 0.9).set("z", 0.05, 0.9);
    Oracle o(ctx, cfg, dom);
    const auto& rep = representation("su2-real4");

    const std::string rr = "(v^2+z^2)^1/2", ri = "(v^2+z^2)^-1/2";
    auto row = [&](const std::string& f) {
        return std::vector<Expr>{pe(ctx, f + "*cos(" + rr + ")"),
                                 pe(ctx, "-" + f + "*(v-z)*sin(" + rr + ")*" + ri),
                                 pe(ctx, f + "*cos(" + rr + ")"),
                                 pe(ctx, "-" + f + "*(v+z)*sin(" + rr + ")*" + ri)};
    };
    auto e0 = row("u"), e1 = row("u_x"), e2 = row("u_xx");
    std::vector<std::map<MultiIndex, Expr>> eta(4);
    for (int a = 0; a < 4; ++a) {
        eta[a][MultiIndex{0}] = e0[a];
        eta[a][MultiIndex{1}] = e1[a];
        eta[a][MultiIndex{2}] = e2[a];
    }
    ProlongedField y(ctx, 2, eta, {});
    table_results(r, "eta", y);

    auto m0 = MatrixExpr::parse_table(
        ctx, 4, {"0", "-v", "0", "-z", "v", "0", "-z", "0", "0", "z", "0", "-v", "z", "0",
                 "v", "0"});
    auto m1 = MatrixExpr::parse_table(
        ctx, 4, {"0", "-z", "0", "v", "z", "0", "v", "0", "0", "-v", "0", "-z", "-v", "0",
                 "z", "0"});
    auto m2 = MatrixExpr::parse_table(
        ctx, 4, {"0", "0", "1", "0", "0", "0", "0", "-1", "-1", "0", "0", "0", "0", "1",
                 "0", "0"});
    auto lambda = pe(ctx, "(v*v_x+z*z_x)*(v^2+z^2)^-1") * m0 +
                  pe(ctx, "1/2*(v_x*z-v*z_x)*(v^2+z^2)^-3/2*sin(2*" + rr + ")") * m1 +
                  pe(ctx, "(v_x*z-v*z_x)*(v^2+z^2)^-1*sin(" + rr + ")^2") * m2;
    r.add_result("lambda", lambda.str());
    auto mu = MuForm::make(ctx, {lambda});

    r.add_verdict("compatibility", maurer_cartan_check(mu, o),
                  "vacuous (single independent variable)");
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(y, mu, o));

    auto l9 = MatrixExpr::parse_table(
        ctx, 4, {"0", "v", "0", "z", "-v", "0", "z", "0", "0", "-z", "0", "v", "-z", "0",
                 "-v", "0"});
    auto kref = cos_e(pe(ctx, rr)) * MatrixExpr::identity(4) +
                mul(sin_e(pe(ctx, rr)), pe(ctx, ri)) * l9;
    r.add_result("k-gamma", kref.str());
    r.add_verdict("derivative-identity", verify_k(mu, kref, o));
    auto g = GaugeSection::make(ctx, {pe(ctx, "v"), pe(ctx, "z"), pe(ctx, "0")});
    matrix_verdict(r, o, "section-recovery", k_gamma(rep, g), kref);

    auto w = EvoField::make(ctx, e0);
    auto lift = theorem2_lift(w, mu, kref, rep, g, 2, o);
    field_results(r, "lifted", lift.x);
    const std::string wn = "(a1^2+a2^2+a3^2)^1/2";
    const std::string wi = "(a1^2+a2^2+a3^2)^-1/2";
    exprs_verdict(r, o, "lifted-field-matches-reference", lift.x.q,
                  {pe(ctx, "u*cos(" + wn + ")+u*a3*sin(" + wn + ")*" + wi),
                   pe(ctx, "u*(a2-a1)*sin(" + wn + ")*" + wi),
                   pe(ctx, "u*cos(" + wn + ")-u*a3*sin(" + wn + ")*" + wi),
                   pe(ctx, "-u*(a1+a2)*sin(" + wn + ")*" + wi)},
                  {"Q.u", "Q.v", "Q.w", "Q.z"},
                  "reference display adjusted via the exponential identity");
    r.add_verdict("lift-certificate", lift.certificate,
                  routes_note(lift.structurally_equal));
}

void example10(Report& r, const OracleConfig& cfg) {
    auto ctx = big_chart();
    auto dom = big_domain();
    dom.set("z", 0.05, 0.9);
    Oracle o(ctx, cfg, dom);
    const auto& rep = representation("su2-real4");

    const std::string om = "30^1/2*z";
    std::vector<Expr> e0 = {pe(ctx, "cos(" + om + ")+5*30^-1/2*sin(" + om + ")"),
                            pe(ctx, "30^-1/2*sin(" + om + ")"),
                            pe(ctx, "cos(" + om + ")-5*30^-1/2*sin(" + om + ")"),
                            pe(ctx, "-3*30^-1/2*sin(" + om + ")")};
    std::vector<std::map<MultiIndex, Expr>> eta(4);
    for (int a = 0; a < 4; ++a) {
        eta[a][MultiIndex{0}] = e0[a];
        eta[a][MultiIndex{1}] = num(0);
        eta[a][MultiIndex{2}] = num(0);
    }
    ProlongedField y(ctx, 2, eta, {});
    table_results(r, "eta", y);

    auto mu = MuForm::make(
        ctx, {MatrixExpr::parse_table(ctx, 4, coupling_lambda_strings())});
    r.add_result("lambda", mu.lambda[0].str());
    r.add_verdict("compatibility", maurer_cartan_check(mu, o),
                  "vacuous (single independent variable)");
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(y, mu, o));

    auto kref = coupling_k_reference(ctx);
    r.add_result("k-gamma", kref.str());
    r.add_verdict("derivative-identity", verify_k(mu, kref, o),
                  "reference matrix completed: the printed display truncates the "
                  "exponential");
    auto trunc = cos_e(pe(ctx, om)) * MatrixExpr::identity(4);
    r.add_verdict("truncated-matrix-rejected", !verify_k(mu, trunc, o).ok(),
                  "the truncated display fails the derivative identity");
    auto g = GaugeSection::make(ctx, {pe(ctx, "z"), pe(ctx, "2*z"), pe(ctx, "5*z")});
    matrix_verdict(r, o, "section-recovery", k_gamma(rep, g), kref);

    auto th = mat_vec(k_gamma_inverse(rep, g), e0);
    for (int a = 0; a < 4; ++a)
        r.add_result("theta." + ctx->dep_name(a), to_string(th[a]));
    exprs_verdict(r, o, "ungauged-components-recovered", th,
                  {num(1), num(0), num(1), num(0)},
                  {"Theta.u", "Theta.v", "Theta.w", "Theta.z"},
                  "the base direction is constant");
}

// ---------------------------------------------------------------- 11 .. 12
// Three dependent variables, rotation representation, quarter-turn section.

ContextPtr rotation_chart() {
    return JetContext::make({"x"}, {"u", "v", "w"}, {"a1", "a2", "a3"}, 2);
}

std::vector<std::string> rotation_k_strings() {
    const std::string rho = "(1-u^2)^1/2";
    return {"u^2", "-" + rho, "u*" + rho,
            rho,   "0",       "-u",
            "u*" + rho, "u",  "1-u^2"};
}

std::vector<std::string> rotation_lambda_strings() {
    const std::string s = "u_x*(1-u^2)^-1/2";
    return {"0",        "-u*" + s, "-" + s,
            "u*" + s,   "0",       "u_x",
            s,          "-u_x",    "0"};
}

void example11(Report& r, const OracleConfig& cfg) {
    auto ctx = rotation_chart();
    Oracle o(ctx, cfg, big_domain());
    const auto& rep = representation("so3");
    auto g = GaugeSection::make(ctx, {pe(ctx, "(pi/2)*u"), pe(ctx, "0"),
                                      pe(ctx, "(pi/2)*(1-u^2)^1/2")});
    auto d = diagram_check(rep, {pe(ctx, "u"), pe(ctx, "0"), pe(ctx, "0")}, g, 2, o);
    field_results(r, "field", d.x);
    r.add_result("k-gamma", k_gamma(rep, g).str());
    r.add_result("lambda", d.mu.lambda[0].str());
    table_results(r, "eta", d.route_b);

    const std::string wn = "(a1^2+a2^2+a3^2)^1/2";
    field_verdict(
        r, o, "field-matches-reference", d.x,
        {"u*(a1^2+(a2^2+a3^2)*cos(" + wn + "))*(a1^2+a2^2+a3^2)^-1",
         "u*(a1*a2*(1-cos(" + wn + "))+a3*" + wn + "*sin(" + wn +
             "))*(a1^2+a2^2+a3^2)^-1",
         "u*(a1*a3*(1-cos(" + wn + "))-a2*" + wn + "*sin(" + wn +
             "))*(a1^2+a2^2+a3^2)^-1"},
        {});
    matrix_verdict(r, o, "gauge-matrix-matches-reference", k_gamma(rep, g),
                   MatrixExpr::parse_table(ctx, 3, rotation_k_strings()));
    matrix_verdict(r, o, "lambda-matches-reference", d.mu.lambda[0],
                   MatrixExpr::parse_table(ctx, 3, rotation_lambda_strings()));
    const std::string rho = "(1-u^2)^1/2";
    table_verdicts(r, o, d.route_b, "eta",
                   {{"u^3", "u*" + rho, "u^2*" + rho},
                    {"u^2*u_x", "u_x*" + rho, "u*u_x*" + rho},
                    {"u^2*u_xx", "u_xx*" + rho, "u*u_xx*" + rho}},
                   "reference projection adjusted: first slot recomputed from the "
                   "matrix product");
    std::vector<Expr> pg;
    for (const auto& e : d.x.p) pg.push_back(restrict_to_section(g, e));
    exprs_verdict(r, o, "completion-matches-reference", pg,
                  {pe(ctx, "pi/2*u^3"), num(0),
                   pe(ctx, "-pi/2*u^4*(1-u^2)^-1/2")},
                  {"P.a1", "P.a2", "P.a3"});
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(d.route_b, d.mu, o));
    r.add_verdict("section-invariance", d.invariance);
    r.add_verdict("routes-agree", d.coefficients, routes_note(d.structurally_equal));
}

void example12(Report& r, const OracleConfig& cfg) {
    auto ctx = rotation_chart();
    Oracle o(ctx, cfg, big_domain());
    const auto& rep = representation("so3");

    const std::string rho = "(1-u^2)^1/2";
    std::vector<Expr> e0 = {pe(ctx, "-u*w*" + rho), num(0), pe(ctx, "u^2*w")};
    std::vector<Expr> e1 = {pe(ctx, "-(u_x*w+u*w_x)*" + rho), num(0),
                            pe(ctx, "u*(u_x*w+u*w_x)")};
    std::vector<Expr> e2 = {pe(ctx, "-(u_xx*w+2*u_x*w_x+u*w_xx)*" + rho), num(0),
                            pe(ctx, "u*(u_xx*w+2*u_x*w_x+u*w_xx)")};
    std::vector<std::map<MultiIndex, Expr>> eta(3);
    for (int a = 0; a < 3; ++a) {
        eta[a][MultiIndex{0}] = e0[a];
        eta[a][MultiIndex{1}] = e1[a];
        eta[a][MultiIndex{2}] = e2[a];
    }
    ProlongedField y(ctx, 2, eta, {});
    table_results(r, "eta", y);

    auto mu = MuForm::make(ctx,
                           {MatrixExpr::parse_table(ctx, 3, rotation_lambda_strings())});
    r.add_result("lambda", mu.lambda[0].str());
    r.add_verdict("compatibility", maurer_cartan_check(mu, o),
                  "vacuous (single independent variable)");
    r.add_verdict("mu-prolongation-recursion", is_mu_prolongation(y, mu, o),
                  "reference tables adjusted: product-rule terms restored");

    auto k = MatrixExpr::parse_table(ctx, 3, rotation_k_strings());
    r.add_result("k-gamma", k.str());
    r.add_verdict("derivative-identity", verify_k(mu, k, o),
                  "reference prefactor corrected: the derivative identity forces the "
                  "reciprocal radical");
    auto printed = MatrixExpr::parse_table(
        ctx, 3,
        {"0", "-u*u_x*" + rho, "-u_x*" + rho,
         "u*u_x*" + rho, "0", "(1-u^2)*u_x",
         "u_x*" + rho, "-(1-u^2)*u_x", "0"});
    r.add_verdict("printed-prefactor-rejected",
                  !verify_k(MuForm::make(ctx, {printed}), k, o).ok(),
                  "the displayed prefactor fails the derivative identity");

    auto g = GaugeSection::make(ctx, {pe(ctx, "(pi/2)*u"), pe(ctx, "0"),
                                      pe(ctx, "(pi/2)*(1-u^2)^1/2")});
    r.add_verdict("section-recovery", k_gamma(rep, g).equal_to(k),
                  "trial matrix comes from the quarter-turn section");

    auto kinv = k_gamma_inverse(rep, g);
    auto x0 = EvoField::make(ctx, {pe(ctx, "0"), pe(ctx, "u*w"), pe(ctx, "0")});
    auto plain = std_prolong(x0, 2);
    std::vector<Expr> got, want;
    std::vector<std::string> labels;
    for (int k2 = 0; k2 <= 2; ++k2) {
        MultiIndex j{k2};
        std::vector<Expr> row;
        for (int a = 0; a < 3; ++a) row.push_back(y.coeff(a, j));
        auto th = mat_vec(kinv, row);
        for (int a = 0; a < 3; ++a) {
            got.push_back(th[a]);
            want.push_back(plain.coeff(a, j));
            labels.push_back("theta." + ctx->name_of(ctx->dep_jet_id(a, j)));
            if (k2 == 0) r.add_result("theta." + ctx->dep_name(a), to_string(th[a]));
        }
    }
    exprs_verdict(r, o, "ungauged-tables-are-standard-prolongation", got, want, labels,
                  "the base field has the single slot u*w");
    auto ci = complete_invariant(x0, g);
    r.add_verdict("completion-vanishes",
                  is_zero(ci.p[0]) && is_zero(ci.p[1]) && is_zero(ci.p[2]),
                  "reference completion corrected: the base field does not touch the "
                  "section variables");
}

}  // namespace

int example_count() { return 12; }

void run_example(int n, const OracleConfig& cfg, Report& out) {
    switch (n) {
        case 1: return example1(out, cfg);
        case 2: return example2(out, cfg);
        case 3: return example3(out, cfg);
        case 4: return example4(out, cfg);
        case 5: return example5(out, cfg);
        case 6: return example6(out, cfg);
        case 7: return example7(out, cfg);
        case 8: return example8(out, cfg);
        case 9: return example9(out, cfg);
        case 10: return example10(out, cfg);
        case 11: return example11(out, cfg);
        case 12: return example12(out, cfg);
        default:
            throw input_error("example number must be between 1 and " +
                              std::to_string(example_count()));
    }
}

}  // namespace jetgauge
