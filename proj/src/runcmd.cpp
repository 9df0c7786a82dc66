#include "jetgauge/runcmd.hpp"

#include <sstream>

#include "jetgauge/examples.hpp"
#include "jetgauge/problem.hpp"

namespace jetgauge {

namespace {

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

void lambda_results(Report& r, const MuForm& mu) {
    for (std::size_t i = 0; i < mu.lambda.size(); ++i) {
        std::string name =
            mu.lambda.size() == 1 ? "lambda" : "lambda." + mu.ctx->indep_name(i);
        r.add_result(name, mu.lambda[i].str());
    }
}

std::string vacuous_note(const ContextPtr& ctx) {
    return ctx->n_indep() == 1 ? "vacuous (single independent variable)" : "";
}

std::string routes_note(bool structural) {
    return structural ? "coefficients identical after canonicalization"
                      : "verified numerically";
}

void cmd_prolong(const Problem& p, Oracle&, Report& r) {
    table_results(r, "eta", std_prolong(p.need_field(), p.ctx->order()));
}

void cmd_mu_prolong(const Problem& p, Oracle& o, Report& r) {
    table_results(r, "eta", mu_prolong(p.need_field(), p.need_mu(), p.ctx->order()));
    r.add_verdict("compatibility", maurer_cartan_check(p.need_mu(), o),
                  vacuous_note(p.ctx));
}

void cmd_lambda_of_section(const Problem& p, Oracle& o, Report& r) {
    auto mu = lambda_of_section(p.need_rep(), p.need_section());
    auto kg = k_gamma(p.need_rep(), p.need_section());
    r.add_result("k-gamma", kg.str());
    lambda_results(r, mu);
    r.add_verdict("compatibility", maurer_cartan_check(mu, o), vacuous_note(p.ctx));
    r.add_verdict("derivative-identity", verify_k(mu, kg, o));
}

void cmd_mc_check(const Problem& p, Oracle& o, Report& r) {
    r.add_verdict("compatibility", maurer_cartan_check(p.need_mu(), o),
                  vacuous_note(p.ctx));
}

void cmd_diagram_check(const Problem& p, Oracle& o, Report& r) {
    auto d = diagram_check(p.need_rep(), p.need_theta(), p.need_section(),
                           p.ctx->order(), o);
    field_results(r, "field", d.x);
    lambda_results(r, d.mu);
    table_results(r, "eta", d.route_b);
    r.add_verdict("section-invariance", d.invariance);
    r.add_verdict("routes-agree", d.coefficients, routes_note(d.structurally_equal));
}

void cmd_complete_invariant(const Problem& p, Oracle& o, Report& r) {
    auto x = complete_invariant(p.need_field(), p.need_section());
    field_results(r, "field", x);
    r.add_verdict("section-invariance", invariance_check(x, p.need_section(), o));
}

void cmd_invariance_check(const Problem& p, Oracle& o, Report& r) {
    r.add_verdict("section-invariance",
                  invariance_check(p.need_field(), p.need_section(), o));
}

void cmd_reconstruct_k(const Problem& p, Oracle& o, Report& r) {
    auto k = reconstruct_k_abelian(p.ctx, p.need_mu());
    r.add_result("k-gamma", k.str());
    r.add_verdict("derivative-identity", verify_k(p.need_mu(), k, o));
}

void cmd_verify_k(const Problem& p, Oracle& o, Report& r) {
    r.add_verdict("derivative-identity", verify_k(p.need_mu(), p.need_kmatrix(), o));
}

void cmd_lift(const Problem& p, Oracle& o, Report& r) {
    const auto& rep = p.need_rep();
    const auto& g = p.need_section();
    MatrixExpr kg = p.kmatrix ? *p.kmatrix : k_gamma(rep, g);
    MuForm mu = p.mu ? *p.mu : lambda_of_section(rep, g);
    auto lift = theorem2_lift(p.need_field(), mu, kg, rep, g, p.ctx->order(), o);
    field_results(r, "lifted", lift.x);
    table_results(r, "psi", lift.prolonged);
    r.add_verdict("lift-certificate", lift.certificate,
                  routes_note(lift.structurally_equal));
}

void cmd_musym_check(const Problem& p, Oracle& o, Report& r) {
    const auto& eq = p.need_equation();
    SymmetryReport sym = p.mu ? mu_symmetry_check(eq, p.need_field(), *p.mu, o)
                              : symmetry_check(eq, p.need_field(), o);
    for (std::size_t i = 0; i < sym.residuals.size(); ++i) {
        const auto& lead = eq.leads[i];
        r.add_result("residual." + p.ctx->name_of(p.ctx->dep_jet_id(lead.a, lead.j)),
                     to_string(sym.residuals[i]));
    }
    r.add_verdict("tangency", sym.verdict, p.mu ? "" : "classical (zero twist)");
}

using CommandFn = void (*)(const Problem&, Oracle&, Report&);

const std::vector<std::pair<std::string, CommandFn>>& command_table() {
    static const std::vector<std::pair<std::string, CommandFn>> table = {
        {"prolong", cmd_prolong},
        {"mu-prolong", cmd_mu_prolong},
        {"lambda-of-section", cmd_lambda_of_section},
        {"mc-check", cmd_mc_check},
        {"diagram-check", cmd_diagram_check},
        {"complete-invariant", cmd_complete_invariant},
        {"invariance-check", cmd_invariance_check},
        {"reconstruct-k", cmd_reconstruct_k},
        {"verify-k", cmd_verify_k},
        {"lift", cmd_lift},
        {"musym-check", cmd_musym_check},
    };
    return table;
}

void apply_overrides(OracleConfig& cfg, const CommandOptions& opt) {
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.samples) cfg.samples = *opt.samples;
    if (opt.tol) cfg.tol = *opt.tol;
}

void oracle_meta(Report& r, const OracleConfig& cfg) {
    std::ostringstream seed;
    seed << "0x" << std::hex << cfg.seed;
    r.add_meta("seed", seed.str());
    r.add_meta("samples", std::to_string(cfg.samples));
    r.add_meta("tol", format_double(cfg.tol));
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : command_table()) v.push_back(name);
        v.push_back("example");
        return v;
    }();
    return names;
}

Report run_command(const std::string& command, const std::string& argument,
                   const CommandOptions& opt) {
    Report r;
    r.add_meta("command", command);
    r.add_meta("input", argument);

    if (command == "example") {
        int n = 0;
        try {
            std::size_t pos = 0;
            n = std::stoi(argument, &pos);
            if (pos != argument.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw input_error("example takes a number from 1 to " +
                              std::to_string(example_count()) + ", got '" + argument +
                              "'");
        }
        OracleConfig cfg;
        apply_overrides(cfg, opt);
        oracle_meta(r, cfg);
        run_example(n, cfg, r);
        return r;
    }

    for (const auto& [name, fn] : command_table()) {
        if (name != command) continue;
        Problem p = Problem::load(ProblemFile::load(argument));
        apply_overrides(p.oracle_cfg, opt);
        oracle_meta(r, p.oracle_cfg);
        Oracle o = p.make_oracle();
        fn(p, o, r);
        return r;
    }
    throw input_error("unknown command '" + command + "'");
}

}  // namespace jetgauge
