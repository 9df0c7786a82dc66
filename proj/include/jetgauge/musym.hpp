#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jetgauge/field.hpp"
#include "jetgauge/oracle.hpp"

namespace jetgauge {

// Differential equation (or system) in solved form: one leading jet of the
// common top order per equation, each right side free of every leading jet.
// Restriction to the solution manifold is then plain substitution.
struct SolvedEquation {
    struct Lead {
        std::size_t a;  // dependent variable index
        MultiIndex j;   // |j| = order
    };

    ContextPtr ctx;
    int order = 0;
    std::vector<Lead> leads;
    std::vector<Expr> rhs;

    // Each pair is (leading jet name, right side), e.g. ("u_xx", u*u_x).
    // Leading jets must be pairwise distinct and share one order; right
    // sides must be gauge-free, of order at most the equation order, and
    // free of all leading jets.
    static SolvedEquation make(ContextPtr ctx,
                               std::vector<std::pair<std::string, Expr>> eqs);
};

struct SymmetryReport {
    // One residual per equation, with the leading jets and their derived
    // consequences already eliminated.  The field is a symmetry exactly
    // when every residual vanishes on the remaining free coordinates.
    std::vector<Expr> residuals;
    EqualResult verdict;
    bool ok() const { return verdict.ok(); }
};

// Determining check: prolong w by mu, apply the prolonged field to each
// equation u^a_J - rhs, restrict to the solution manifold, and test the
// residuals for zero.  The verdict carries the first failing equation.
SymmetryReport mu_symmetry_check(const SolvedEquation& eq, const EvoField& w,
                                 const MuForm& mu, Oracle& oracle);

// Classical check: the same with the twist matrices set to zero.
SymmetryReport symmetry_check(const SolvedEquation& eq, const EvoField& w, Oracle& oracle);

}  // namespace jetgauge
