#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jetgauge/expr.hpp"
#include "jetgauge/oracle.hpp"

namespace jetgauge {

// Square matrix with symbolic entries, row-major storage.
class MatrixExpr {
public:
    MatrixExpr(int dim, std::vector<Expr> entries);

    static MatrixExpr zero(int dim);
    static MatrixExpr identity(int dim);
    // Entries given as rationals, row-major.
    static MatrixExpr scalar_table(int dim, const std::vector<Rational>& entries);
    // Entries given as strings in the context's chart, row-major.
    static MatrixExpr parse_table(const ContextPtr& ctx, int dim,
                                  const std::vector<std::string>& entries);

    int dim() const { return d_; }
    const Expr& at(int i, int j) const;
    void set(int i, int j, Expr e);

    MatrixExpr map(const std::function<Expr(const Expr&)>& f) const;
    MatrixExpr transpose() const;

    // Cofactor expansion; fine for the small dimensions used here.
    Expr det() const;
    // Adjugate over determinant.  Throws input_error when the determinant
    // is identically zero.
    MatrixExpr inverse() const;

    bool equal_to(const MatrixExpr& other) const;
    bool is_zero() const;

    // "[[a, b], [c, d]]"
    std::string str() const;

private:
    int d_;
    std::vector<Expr> a_;
};

MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b);
MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b);
MatrixExpr operator-(const MatrixExpr& a);
MatrixExpr operator*(const MatrixExpr& a, const MatrixExpr& b);
MatrixExpr operator*(const Expr& s, const MatrixExpr& a);
MatrixExpr operator*(const Rational& s, const MatrixExpr& a);

// a*b - b*a
MatrixExpr commutator(const MatrixExpr& a, const MatrixExpr& b);

// Symbolic exponential for the shapes that admit one: nilpotent matrices
// (truncated series), 2x2 antisymmetric blocks (rotation), and diagonal
// matrices.  Throws input_error otherwise.
MatrixExpr matrix_exp_closed(const MatrixExpr& m);

// Entrywise numeric comparison; on failure the witness label carries the
// offending entry as "label[i][j]".
EqualResult matrix_oracle_equal(Oracle& o, const MatrixExpr& a, const MatrixExpr& b,
                                const std::string& label);

}  // namespace jetgauge
