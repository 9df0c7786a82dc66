#pragma once

#include <string>
#include <vector>

#include "jetgauge/field.hpp"
#include "jetgauge/lie.hpp"
#include "jetgauge/prolong.hpp"

namespace jetgauge {

// Section of the gauge bundle: alpha^m = A^m(x,u).  Entries may use the
// independent variables and the order-0 dependent variables only.
class GaugeSection {
public:
    static GaugeSection make(ContextPtr ctx, std::vector<Expr> a);

    const ContextPtr& ctx() const { return ctx_; }
    const std::vector<Expr>& entries() const { return a_; }
    const Expr& entry(std::size_t m) const { return a_[m]; }

private:
    GaugeSection(ContextPtr ctx, std::vector<Expr> a) : ctx_(std::move(ctx)), a_(std::move(a)) {}
    ContextPtr ctx_;
    std::vector<Expr> a_;
};

// Substitute alpha^m -> A^m.  Only the order-0 gauge symbols are touched;
// fields keep their gauge components, with the same substitution applied.
Expr restrict_to_section(const GaugeSection& g, const Expr& e);
MatrixExpr restrict_to_section(const GaugeSection& g, const MatrixExpr& m);
EvoField restrict_to_section(const GaugeSection& g, const EvoField& f);
ProlongedField restrict_to_section(const GaugeSection& g, const ProlongedField& y);

// Jet-level restriction for charts carrying gauge jets: alpha^m_J -> D_J A^m.
Expr restrict_prolonged(const GaugeSection& g, const Expr& e);

// Drop the gauge components.  The remaining coefficients must already be
// gauge-free; a leftover gauge symbol is reported by name.
EvoField project_to_base(const EvoField& f);
ProlongedField project_to_base(const ProlongedField& y);

// Components of the gauged field K(alpha) Theta.
std::vector<Expr> gauged_field(const LieRepresentation& rep, const ContextPtr& ctx,
                               const std::vector<Expr>& theta);

// K(alpha) restricted to the section, and its inverse K(-A).
MatrixExpr k_gamma(const LieRepresentation& rep, const GaugeSection& g);
MatrixExpr k_gamma_inverse(const LieRepresentation& rep, const GaugeSection& g);

// R_i = (D_i K) K^{-1} for a gauge-free invertible matrix.
std::vector<MatrixExpr> r_matrices(const ContextPtr& ctx, const MatrixExpr& k);

// Lambda_i = -R_i^{(gamma)}; satisfies the horizontal compatibility equation
// by construction.
MuForm lambda_of_section(const LieRepresentation& rep, const GaugeSection& g);

// nabla_i V = D_i V - R_i V, componentwise on a vector.
std::vector<Expr> nabla(const ContextPtr& ctx, const std::vector<MatrixExpr>& r, std::size_t i,
                        const std::vector<Expr>& v);

// Prolongation by the twisted derivatives of the section; coefficient-equal
// to mu_prolong with lambda_of_section.
ProlongedField twisted_prolong(const EvoField& w, const LieRepresentation& rep,
                               const GaugeSection& g, int order);

// Extend a field on the dependent variables with the gauge components
// P^m = (dA^m/du^a) Q^a that keep the section invariant.
EvoField complete_invariant(const EvoField& x0, const GaugeSection& g);

// P^m restricted to the section equals (dA^m/du^a) Q^a restricted.
EqualResult invariance_check(const EvoField& x, const GaugeSection& g, Oracle& oracle);

// Two routes from Theta to a prolonged field on the base jet space:
//   A: standard prolongation upstairs, then restrict and project;
//   B: restrict and project first, then mu-prolong with the section's form.
struct DiagramReport {
    EvoField x;              // gauged field completed with its P components
    MuForm mu;               // lambda_of_section
    ProlongedField route_a;
    ProlongedField route_b;
    EqualResult invariance;  // section kept invariant by x
    bool structurally_equal = false;
    EqualResult coefficients;  // oracle comparison of the two routes
    bool ok() const { return invariance.ok() && coefficients.ok(); }
};

DiagramReport diagram_check(const LieRepresentation& rep, const std::vector<Expr>& theta,
                            const GaugeSection& g, int order, Oracle& oracle);

// Entrywise antiderivative P with D_x P = Lambda, then K = exp(-P).
// Single independent variable, abelian shapes only; throws input_error when
// no antiderivative or closed-form exponential is found.
MatrixExpr reconstruct_k_abelian(const ContextPtr& ctx, const MuForm& mu);

// D_i K = -Lambda_i K, entrywise over every independent variable.
EqualResult verify_k(const MuForm& mu, const MatrixExpr& k, Oracle& oracle);

// Lift of a mu-prolonged field to the gauged space: Q = K(alpha) K_gamma^{-1} Q_W
// with the invariant completion, certified by prolong/restrict/project.
struct LiftReport {
    EvoField x;
    ProlongedField prolonged;         // standard prolongation of x upstairs
    bool structurally_equal = false;  // restricted projection vs mu-prolongation
    EqualResult certificate;
    bool ok() const { return certificate.ok(); }
};

LiftReport theorem2_lift(const EvoField& w, const MuForm& mu, const MatrixExpr& kg,
                         const LieRepresentation& rep, const GaugeSection& g, int order,
                         Oracle& oracle);

// Restriction versus the augmented and plain total derivatives on a chart
// with gauge jets:
//   a1: restrict(augmented_i F) = D_i restrict(F)
//   a2: restrict(D_i F) = D_i restrict(F) - restrict(Z_i F)
struct AppendixReport {
    EqualResult a1;
    EqualResult a2;
    bool ok() const { return a1.ok() && a2.ok(); }
};

AppendixReport appendix_a1_check(const GaugeSection& g, const Expr& f, std::size_t i,
                                 Oracle& oracle);

// restrict((Z_i K) K^{-1}) = R_i^{(gamma)} for the representation's K(alpha).
EqualResult appendix_z_check(const LieRepresentation& rep, const GaugeSection& g, std::size_t i,
                             Oracle& oracle);

}  // namespace jetgauge
