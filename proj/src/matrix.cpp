#include "jetgauge/matrix.hpp"

#include <stdexcept>

#include "jetgauge/parse.hpp"

namespace jetgauge {

MatrixExpr::MatrixExpr(int dim, std::vector<Expr> entries) : d_(dim), a_(std::move(entries)) {
    if (dim <= 0) throw input_error("matrix dimension must be positive");
    if (a_.size() != (std::size_t)(dim * dim))
        throw input_error("matrix of dimension " + std::to_string(dim) + " needs " +
                          std::to_string(dim * dim) + " entries, got " +
                          std::to_string(a_.size()));
    for (const auto& e : a_)
        if (!e) throw input_error("matrix entry is empty");
}

MatrixExpr MatrixExpr::zero(int dim) {
    return MatrixExpr(dim, std::vector<Expr>(dim * dim, num(0)));
}

MatrixExpr MatrixExpr::identity(int dim) {
    MatrixExpr m = zero(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, num(1));
    return m;
}

MatrixExpr MatrixExpr::scalar_table(int dim, const std::vector<Rational>& entries) {
    std::vector<Expr> es;
    es.reserve(entries.size());
    for (const auto& r : entries) es.push_back(num(r));
    return MatrixExpr(dim, std::move(es));
}

MatrixExpr MatrixExpr::parse_table(const ContextPtr& ctx, int dim,
                                   const std::vector<std::string>& entries) {
    std::vector<Expr> es;
    es.reserve(entries.size());
    for (const auto& s : entries) es.push_back(parse_expr(s, ctx));
    return MatrixExpr(dim, std::move(es));
}

const Expr& MatrixExpr::at(int i, int j) const {
    if (i < 0 || i >= d_ || j < 0 || j >= d_) throw input_error("matrix index out of range");
    return a_[i * d_ + j];
}

void MatrixExpr::set(int i, int j, Expr e) {
    if (i < 0 || i >= d_ || j < 0 || j >= d_) throw input_error("matrix index out of range");
    if (!e) throw input_error("matrix entry is empty");
    a_[i * d_ + j] = std::move(e);
}

MatrixExpr MatrixExpr::map(const std::function<Expr(const Expr&)>& f) const {
    std::vector<Expr> es;
    es.reserve(a_.size());
    for (const auto& e : a_) es.push_back(f(e));
    return MatrixExpr(d_, std::move(es));
}

MatrixExpr MatrixExpr::transpose() const {
    MatrixExpr m = *this;
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) m.set(i, j, at(j, i));
    return m;
}

namespace {

// Minor with row r and column c removed, as a flat entry list.
std::vector<Expr> minor_entries(const MatrixExpr& m, int r, int c) {
    std::vector<Expr> es;
    es.reserve((m.dim() - 1) * (m.dim() - 1));
    for (int i = 0; i < m.dim(); ++i) {
        if (i == r) continue;
        for (int j = 0; j < m.dim(); ++j) {
            if (j == c) continue;
            es.push_back(m.at(i, j));
        }
    }
    return es;
}

}  // namespace

Expr MatrixExpr::det() const {
    if (d_ == 1) return at(0, 0);
    std::vector<Expr> terms;
    for (int j = 0; j < d_; ++j) {
        MatrixExpr sub(d_ - 1, minor_entries(*this, 0, j));
        Expr t = mul(at(0, j), sub.det());
        terms.push_back(j % 2 ? neg(t) : t);
    }
    return add(terms);
}

MatrixExpr MatrixExpr::inverse() const {
    Expr dt = det();
    if (equal(dt, num(0)))
        throw input_error("matrix determinant is identically zero");
    Expr dinv = powr(dt, Rational(-1));
    MatrixExpr inv = zero(d_);
    if (d_ == 1) {
        inv.set(0, 0, dinv);
        return inv;
    }
    for (int i = 0; i < d_; ++i) {
        for (int j = 0; j < d_; ++j) {
            MatrixExpr sub(d_ - 1, minor_entries(*this, j, i));
            Expr cof = sub.det();
            if ((i + j) % 2) cof = neg(cof);
            inv.set(i, j, mul(cof, dinv));
        }
    }
    return inv;
}

bool MatrixExpr::equal_to(const MatrixExpr& other) const {
    if (d_ != other.d_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!equal(a_[k], other.a_[k])) return false;
    return true;
}

bool MatrixExpr::is_zero() const {
    Expr z = num(0);
    for (const auto& e : a_)
        if (!equal(e, z)) return false;
    return true;
}

std::string MatrixExpr::str() const {
    std::string out = "[";
    for (int i = 0; i < d_; ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < d_; ++j) {
            if (j) out += ", ";
            out += to_string(at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

namespace {

MatrixExpr zip(const MatrixExpr& a, const MatrixExpr& b,
               const std::function<Expr(const Expr&, const Expr&)>& f) {
    if (a.dim() != b.dim()) throw input_error("matrix dimensions differ");
    MatrixExpr m = MatrixExpr::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m.set(i, j, f(a.at(i, j), b.at(i, j)));
    return m;
}

}  // namespace

MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b) {
    return zip(a, b, [](const Expr& x, const Expr& y) { return add(x, y); });
}

MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b) {
    return zip(a, b, [](const Expr& x, const Expr& y) { return sub(x, y); });
}

MatrixExpr operator-(const MatrixExpr& a) {
    return a.map([](const Expr& e) { return neg(e); });
}

MatrixExpr operator*(const MatrixExpr& a, const MatrixExpr& b) {
    if (a.dim() != b.dim()) throw input_error("matrix dimensions differ");
    MatrixExpr m = MatrixExpr::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            std::vector<Expr> terms;
            for (int k = 0; k < a.dim(); ++k) terms.push_back(mul(a.at(i, k), b.at(k, j)));
            m.set(i, j, add(terms));
        }
    }
    return m;
}

MatrixExpr operator*(const Expr& s, const MatrixExpr& a) {
    return a.map([&](const Expr& e) { return mul(s, e); });
}

MatrixExpr operator*(const Rational& s, const MatrixExpr& a) {
    return num(s) * a;
}

MatrixExpr commutator(const MatrixExpr& a, const MatrixExpr& b) {
    return a * b - b * a;
}

MatrixExpr matrix_exp_closed(const MatrixExpr& m) {
    int d = m.dim();

    // Nilpotent: the series terminates within d steps.
    {
        MatrixExpr power = m;
        int steps = 1;
        while (steps < d && !power.is_zero()) {
            power = power * m;
            ++steps;
        }
        if (power.is_zero()) {
            MatrixExpr sum = MatrixExpr::identity(d);
            MatrixExpr term = MatrixExpr::identity(d);
            Rational fact(1);
            for (int k = 1; k < steps; ++k) {
                term = term * m;
                fact = fact * Rational(k);
                sum = sum + (Rational(1) / fact) * term;
            }
            return sum;
        }
    }

    bool diagonal = true;
    for (int i = 0; i < d && diagonal; ++i)
        for (int j = 0; j < d && diagonal; ++j)
            if (i != j && !jetgauge::is_zero(m.at(i, j))) diagonal = false;
    if (diagonal) {
        MatrixExpr out = MatrixExpr::identity(d);
        for (int i = 0; i < d; ++i) out.set(i, i, exp_e(m.at(i, i)));
        return out;
    }

    if (d == 2 && jetgauge::is_zero(m.at(0, 0)) && jetgauge::is_zero(m.at(1, 1)) &&
        equal(m.at(0, 1), neg(m.at(1, 0)))) {
        Expr t = m.at(1, 0);
        return MatrixExpr(2, {cos_e(t), neg(sin_e(t)), sin_e(t), cos_e(t)});
    }

    throw input_error("matrix exponential has no supported closed form for " + m.str());
}

EqualResult matrix_oracle_equal(Oracle& o, const MatrixExpr& a, const MatrixExpr& b,
                                const std::string& label) {
    if (a.dim() != b.dim()) throw input_error("matrix dimensions differ");
    EqualResult r;
    r.verdict = EqualResult::Equal;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            std::string lab = label + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            EqualResult er = o.check_equal(a.at(i, j), b.at(i, j), lab);
            if (er.verdict != EqualResult::Equal) return er;
        }
    }
    return r;
}

}  // namespace jetgauge
