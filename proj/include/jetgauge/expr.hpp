#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "jetgauge/context.hpp"
#include "jetgauge/rational.hpp"

namespace jetgauge {

struct eval_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct context_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NodeKind : unsigned char { Number, Pi, Coord, Call, Power, Product, Sum };
enum class FuncTag : unsigned char { Sin, Cos, Sqrt, Exp, Log };

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// Immutable expression node. Trees are always canonical: sums and products
// are flattened and sorted under a fixed total order, rational constants are
// folded (a sum keeps at most one constant term, a product at most one
// leading coefficient), like terms and like factors are merged, and a sum
// factor inside a product is stored content-free (its common rational and
// monomial part pulled out) so that exact quotients cancel structurally.
class ExprNode {
public:
    NodeKind kind;
    FuncTag func = FuncTag::Sin;         // Call
    Rational value;                      // Number, or Power exponent
    int coord = -1;                      // Coord
    std::vector<Expr> kids;              // Sum/Product children; Power base, Call arg
    ContextPtr ctx_hold;                 // Coord keeps its chart alive
    const JetContext* ctx = nullptr;     // chart of any coord below (nullptr if none)
    std::size_t hash = 0;

    const Expr& base() const { return kids[0]; }  // Power
    const Expr& arg() const { return kids[0]; }   // Call
};

// Construction (always canonical).
Expr num(const Rational& r);
Expr num(long long n);
Expr pi_const();
Expr sym(const ContextPtr& ctx, int id);
Expr sym(const ContextPtr& ctx, const std::string& name);
Expr add(std::vector<Expr> terms);
Expr add(const Expr& a, const Expr& b);
Expr mul(std::vector<Expr> factors);
Expr mul(const Expr& a, const Expr& b);
Expr powr(const Expr& base, const Rational& expo);
Expr call(FuncTag f, const Expr& arg);
Expr neg(const Expr& e);
Expr sub(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr sin_e(const Expr& e);
Expr cos_e(const Expr& e);
Expr sqrt_e(const Expr& e);
Expr exp_e(const Expr& e);
Expr log_e(const Expr& e);

// Total order on canonical trees (independent of memory layout).
int compare(const Expr& a, const Expr& b);
bool equal(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

bool is_zero(const Expr& e);
bool is_one(const Expr& e);
bool is_number(const Expr& e);

std::string to_string(const Expr& e);

// Point for numeric evaluation: value per coordinate id.
struct EvalPoint {
    std::vector<double> values;
    double at(int id) const;
};
// Throws eval_error on domain faults (log of a non-positive value, sqrt of a
// negative one, division by zero, fractional power of a negative base).
double eval(const Expr& e, const EvalPoint& p);

// Partial derivative with respect to one coordinate, all others held fixed.
Expr pdiff(const Expr& e, int coord_id);
Expr pdiff(const Expr& e, const ContextPtr& ctx, const std::string& name);

// Simultaneous substitution coordinate id -> expression.
Expr substitute(const Expr& e, const std::map<int, Expr>& map);

// Coordinate ids occurring in e, ascending.
std::set<int> coords_of(const Expr& e);

// Max jet order over dep-jet (and gauge-jet) coordinates in e; 0 if none.
int max_jet_order(const Expr& e);
bool contains_gauge(const Expr& e);

// The chart referenced by e's coordinates, nullptr if e is constant.
const JetContext* chart_of(const Expr& e);

}  // namespace jetgauge
