#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jetgauge/matrix.hpp"

namespace jetgauge {

// A matrix representation of a gauge group: constant generators L_1..L_r
// plus a closed-form exponential for K(alpha) = exp(alpha^m L_m).
struct LieRepresentation {
    std::string name;
    int dim = 0;     // matrix dimension
    int params = 0;  // number of gauge parameters
    std::vector<MatrixExpr> generators;
    std::function<MatrixExpr(const std::vector<Expr>&)> exp_fn;
};

// Built-in families: nilpotent2, lower-nilpotent2, so2, su2-real4, so3.
const LieRepresentation& representation(const std::string& name);
std::vector<std::string> representation_names();
// Makes a family available under rep.name; replaces any previous entry.
void register_representation(LieRepresentation rep);

// alpha^m L_m
MatrixExpr algebra_element(const LieRepresentation& rep, const std::vector<Expr>& alpha);

// K at arbitrary parameter expressions.
MatrixExpr exp_rep_at(const LieRepresentation& rep, const std::vector<Expr>& alpha);
// K at the context's gauge symbols.
MatrixExpr exp_rep(const LieRepresentation& rep, const ContextPtr& ctx);

// Family assembled from explicit constant generators; the exponential is
// computed through matrix_exp_closed on alpha^m L_m, so the generators must
// span a nilpotent, rotation, or diagonal algebra.
LieRepresentation custom_representation(std::vector<MatrixExpr> generators);

// Numeric exp(alpha^m L_m) by scaling and squaring, row-major.  Reference
// implementation the closed forms are tested against.
std::vector<double> exp_series_oracle(const LieRepresentation& rep,
                                      const std::vector<double>& alpha);

// M v for a symbolic vector.
std::vector<Expr> mat_vec(const MatrixExpr& m, const std::vector<Expr>& v);

}  // namespace jetgauge
