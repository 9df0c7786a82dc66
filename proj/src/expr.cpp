#include "jetgauge/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace jetgauge {

namespace {

std::size_t hash_mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Expr make_node(NodeKind kind, FuncTag func, Rational value, int coord,
               std::vector<Expr> kids, ContextPtr ctx_hold) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->func = func;
    n->value = value;
    n->coord = coord;
    n->kids = std::move(kids);
    n->ctx_hold = std::move(ctx_hold);
    const JetContext* ctx = n->ctx_hold.get();
    for (const auto& k : n->kids) {
        if (!k->ctx) continue;
        if (!ctx)
            ctx = k->ctx;
        else if (ctx != k->ctx)
            throw context_mismatch_error("expression mixes coordinate charts");
    }
    n->ctx = ctx;

    std::size_t h = hash_mix((std::size_t)kind, 0x51ed270b);
    switch (kind) {
        case NodeKind::Number:
            h = hash_mix(h, n->value.hash());
            break;
        case NodeKind::Pi:
            break;
        case NodeKind::Coord:
            h = hash_mix(h, (std::size_t)coord);
            break;
        case NodeKind::Call:
            h = hash_mix(h, (std::size_t)func);
            h = hash_mix(h, n->kids[0]->hash);
            break;
        case NodeKind::Power:
            h = hash_mix(h, n->kids[0]->hash);
            h = hash_mix(h, n->value.hash());
            break;
        case NodeKind::Product:
        case NodeKind::Sum:
            for (const auto& k : n->kids) h = hash_mix(h, k->hash);
            break;
    }
    n->hash = h;
    return n;
}

int kind_rank(NodeKind k) {
    switch (k) {
        case NodeKind::Number: return 0;
        case NodeKind::Pi: return 1;
        case NodeKind::Coord: return 2;
        case NodeKind::Call: return 3;
        case NodeKind::Power: return 4;
        case NodeKind::Product: return 5;
        case NodeKind::Sum: return 6;
    }
    return 7;
}

// Splits a canonical term into (rational coefficient, key). Null key means a
// pure constant.
std::pair<Rational, Expr> split_coeff(const Expr& t) {
    if (t->kind == NodeKind::Number) return {t->value, nullptr};
    if (t->kind == NodeKind::Product && t->kids[0]->kind == NodeKind::Number) {
        Rational c = t->kids[0]->value;
        if (t->kids.size() == 2) return {c, t->kids[1]};
        std::vector<Expr> rest(t->kids.begin() + 1, t->kids.end());
        return {c, make_node(NodeKind::Product, FuncTag::Sin, Rational(), -1,
                             std::move(rest), nullptr)};
    }
    return {Rational(1), t};
}

// (base, exponent) view of a canonical factor.
std::pair<Expr, Rational> split_power(const Expr& f) {
    if (f->kind == NodeKind::Power) return {f->kids[0], f->value};
    return {f, Rational(1)};
}

// Rebuilds coeff * key where key is canonical and not a Number.
Expr attach_coeff(const Rational& c, const Expr& key) {
    if (c.is_zero()) return num(0);
    if (c.is_one()) return key;
    std::vector<Expr> kids;
    kids.push_back(num(c));
    if (key->kind == NodeKind::Product && key->kids[0]->kind != NodeKind::Number) {
        for (const auto& k : key->kids) kids.push_back(k);
    } else {
        kids.push_back(key);
    }
    return make_node(NodeKind::Product, FuncTag::Sin, Rational(), -1, std::move(kids),
                     nullptr);
}

// Largest s with s^2 | n (n > 0), by trial division; inputs stay small.
long long square_part(long long n) {
    long long s = 1;
    for (long long p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            s *= p;
        }
    }
    return s;
}

// Exact integer b-th root if it exists.
bool exact_root(long long n, long long b, long long& out) {
    if (n < 0) return false;
    long long r = (long long)std::llround(std::pow((double)n, 1.0 / (double)b));
    for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c) {
        long long p = 1;
        bool ovf = false;
        for (long long i = 0; i < b; ++i) {
            if (p > n / (c == 0 ? 1 : c) + 1) { ovf = true; break; }
            p *= c;
        }
        if (!ovf && p == n) { out = c; return true; }
    }
    return false;
}

// If e is manifestly a negation (-3, -2*x, or a sum of such terms), returns
// its positive counterpart.
Expr manifest_neg(const Expr& e) {
    if (e->kind == NodeKind::Number)
        return e->value.is_negative() ? num(-e->value) : nullptr;
    if (e->kind == NodeKind::Product && e->kids[0]->kind == NodeKind::Number &&
        e->kids[0]->value.is_negative()) {
        auto [c, key] = split_coeff(e);
        return attach_coeff(-c, key);
    }
    if (e->kind == NodeKind::Sum) {
        std::vector<Expr> flipped;
        for (const auto& t : e->kids) {
            Expr f = manifest_neg(t);
            if (!f) return nullptr;
            flipped.push_back(f);
        }
        return add(std::move(flipped));
    }
    return nullptr;
}

// e == q * pi for rational q?
bool pi_multiple(const Expr& e, Rational& q) {
    if (e->kind == NodeKind::Pi) {
        q = Rational(1);
        return true;
    }
    if (e->kind == NodeKind::Product && e->kids.size() == 2 &&
        e->kids[0]->kind == NodeKind::Number && e->kids[1]->kind == NodeKind::Pi) {
        q = e->kids[0]->value;
        return true;
    }
    return false;
}

struct SumContent {
    Rational coeff{1};
    std::vector<std::pair<Expr, Rational>> factors;  // base -> extracted exponent
    Expr primitive;
};

// Pulls the common rational coefficient and the common monomial part (shared
// bases with uniform-sign exponents) out of a term list.
SumContent sum_content_terms(const std::vector<Expr>& term_list) {
    SumContent out;
    std::vector<std::pair<Rational, Expr>> terms;
    for (const auto& t : term_list) terms.push_back(split_coeff(t));

    Rational g(0);
    for (auto& [c, key] : terms) g = Rational::content_gcd(g, c);
    bool all_neg = true;
    for (auto& [c, key] : terms)
        if (!c.is_negative()) all_neg = false;
    if (g.is_zero()) g = Rational(1);
    if (all_neg) g = -g;
    out.coeff = g;

    // Factor maps per term; a null key (pure constant) blocks extraction.
    bool blocked = false;
    std::vector<std::map<Expr, Rational, ExprLess>> maps;
    for (auto& [c, key] : terms) {
        if (!key) { blocked = true; break; }
        std::map<Expr, Rational, ExprLess> m;
        if (key->kind == NodeKind::Product) {
            for (const auto& f : key->kids) {
                auto [b, e] = split_power(f);
                m[b] = e;
            }
        } else {
            auto [b, e] = split_power(key);
            m[b] = e;
        }
        maps.push_back(std::move(m));
    }

    std::map<Expr, Rational, ExprLess> common;
    if (!blocked && !maps.empty()) {
        for (const auto& [b, e] : maps[0]) {
            Rational acc = e;
            bool ok = true;
            for (std::size_t i = 1; i < maps.size() && ok; ++i) {
                auto it = maps[i].find(b);
                if (it == maps[i].end()) { ok = false; break; }
                acc = std::min(acc, it->second, std::less<Rational>());
            }
            if (ok && !acc.is_zero()) common[b] = acc;
        }
    }

    if (g.is_one() && common.empty()) return out;  // primitive left empty: no-op

    std::vector<Expr> new_terms;
    for (auto& [c, key] : terms) {
        Expr t = key ? attach_coeff(c / g, key) : num(c / g);
        if (!common.empty()) {
            std::vector<Expr> parts;
            parts.push_back(t);
            for (const auto& [b, e] : common) parts.push_back(powr(b, -e));
            t = mul(std::move(parts));
        }
        new_terms.push_back(t);
    }
    for (const auto& [b, e] : common) out.factors.emplace_back(b, e);
    out.primitive = add(std::move(new_terms));
    return out;
}

SumContent sum_content(const Expr& s) {
    SumContent out = sum_content_terms(s->kids);
    if (!out.primitive) out.primitive = s;
    return out;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return 0;
    int ra = kind_rank(a->kind), rb = kind_rank(b->kind);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a->kind) {
        case NodeKind::Number:
            if (a->value == b->value) return 0;
            return a->value < b->value ? -1 : 1;
        case NodeKind::Pi:
            return 0;
        case NodeKind::Coord:
            if (a->coord == b->coord) return 0;
            return a->coord < b->coord ? -1 : 1;
        case NodeKind::Call:
            if (a->func != b->func) return (int)a->func < (int)b->func ? -1 : 1;
            return compare(a->kids[0], b->kids[0]);
        case NodeKind::Power: {
            int c = compare(a->kids[0], b->kids[0]);
            if (c != 0) return c;
            if (a->value == b->value) return 0;
            return a->value < b->value ? -1 : 1;
        }
        case NodeKind::Product:
        case NodeKind::Sum: {
            std::size_t n = std::min(a->kids.size(), b->kids.size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = compare(a->kids[i], b->kids[i]);
                if (c != 0) return c;
            }
            if (a->kids.size() == b->kids.size()) return 0;
            return a->kids.size() < b->kids.size() ? -1 : 1;
        }
    }
    return 0;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash != b->hash) return false;
    return compare(a, b) == 0;
}

bool is_zero(const Expr& e) { return e->kind == NodeKind::Number && e->value.is_zero(); }
bool is_one(const Expr& e) { return e->kind == NodeKind::Number && e->value.is_one(); }
bool is_number(const Expr& e) { return e->kind == NodeKind::Number; }

Expr num(const Rational& r) {
    return make_node(NodeKind::Number, FuncTag::Sin, r, -1, {}, nullptr);
}
Expr num(long long n) { return num(Rational(n)); }

Expr pi_const() {
    return make_node(NodeKind::Pi, FuncTag::Sin, Rational(), -1, {}, nullptr);
}

Expr sym(const ContextPtr& ctx, int id) {
    if (!ctx || id < 0 || (std::size_t)id >= ctx->total_symbols())
        throw input_error("coordinate id out of range");
    return make_node(NodeKind::Coord, FuncTag::Sin, Rational(), id, {}, ctx);
}

Expr sym(const ContextPtr& ctx, const std::string& name) {
    auto id = ctx->id_of(name);
    if (!id) throw input_error("unknown identifier '" + name + "'");
    return sym(ctx, *id);
}

Expr add(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, b}); }
Expr mul(const Expr& a, const Expr& b) { return mul(std::vector<Expr>{a, b}); }

Expr add(std::vector<Expr> terms) {
    // Flatten nested sums.
    std::vector<Expr> flat;
    std::vector<Expr> work(terms.rbegin(), terms.rend());
    while (!work.empty()) {
        Expr t = work.back();
        work.pop_back();
        if (t->kind == NodeKind::Sum)
            for (auto it = t->kids.rbegin(); it != t->kids.rend(); ++it) work.push_back(*it);
        else
            flat.push_back(t);
    }

    // Merge like terms.
    Rational constant(0);
    std::map<Expr, Rational, ExprLess> by_key;
    for (const auto& t : flat) {
        auto [c, key] = split_coeff(t);
        if (!key)
            constant += c;
        else
            by_key[key] += c;
    }

    // Positive terms first, then negative ones, each bucket in key order with
    // any constant leading; reads as "u - a" and "1 - u^2".
    std::vector<Expr> out;
    if (!constant.is_zero() && !constant.is_negative()) out.push_back(num(constant));
    for (const auto& [key, c] : by_key)
        if (!c.is_zero() && !c.is_negative()) out.push_back(attach_coeff(c, key));
    if (constant.is_negative()) out.push_back(num(constant));
    for (const auto& [key, c] : by_key)
        if (!c.is_zero() && c.is_negative()) out.push_back(attach_coeff(c, key));
    if (out.empty()) return num(0);
    if (out.size() == 1) return out[0];

    // Factoring a sum is only done when it cancels an inverse power shared by
    // every term, as with quotients built from cofactor inverses:
    // c^2/(c^2 + s^2) + s^2/(c^2 + s^2) -> 1.  Everything else stays flat;
    // the flat expanded sum is the normal form.
    SumContent sc = sum_content_terms(out);
    if (sc.primitive) {
        bool collapses = sc.primitive->kind != NodeKind::Sum;
        for (const auto& [b, e] : sc.factors)
            if (e.is_negative() && equal(b, sc.primitive)) collapses = true;
        if (collapses) {
            std::vector<Expr> parts;
            if (!sc.coeff.is_one()) parts.push_back(num(sc.coeff));
            for (const auto& [b, e] : sc.factors) parts.push_back(powr(b, e));
            parts.push_back(sc.primitive);
            return mul(std::move(parts));
        }
    }

    return make_node(NodeKind::Sum, FuncTag::Sin, Rational(), -1, std::move(out), nullptr);
}

Expr mul(std::vector<Expr> factors) {
    std::vector<Expr> pending = std::move(factors);
    for (int round = 0; round < 16; ++round) {
        // Flatten nested products and gather the rational coefficient.
        Rational coeff(1);
        std::vector<Expr> flat;
        std::vector<Expr> work(pending.rbegin(), pending.rend());
        while (!work.empty()) {
            Expr f = work.back();
            work.pop_back();
            if (f->kind == NodeKind::Product)
                for (auto it = f->kids.rbegin(); it != f->kids.rend(); ++it)
                    work.push_back(*it);
            else if (f->kind == NodeKind::Number)
                coeff *= f->value;
            else
                flat.push_back(f);
        }
        if (coeff.is_zero()) return num(0);

        // Merge like bases; sums are stored content-free.
        std::map<Expr, Rational, ExprLess> entries;
        for (const auto& f : flat) {
            auto [base, expo] = split_power(f);
            if (base->kind == NodeKind::Sum && expo.is_integer()) {
                SumContent sc = sum_content(base);
                if (!sc.coeff.is_one() || !sc.factors.empty()) {
                    coeff *= sc.coeff.pow(expo.num());
                    for (const auto& [b, e] : sc.factors) entries[b] += e * expo;
                    entries[sc.primitive] += expo;
                    continue;
                }
            }
            entries[base] += expo;
        }

        // Rebuild factors; a rebuild can fold (sqrt(x)^2 -> x) or expand, in
        // which case we run another round.
        bool redo = false;
        std::vector<std::pair<Expr, Expr>> rebuilt;  // base, factor
        for (const auto& [base, expo] : entries) {
            if (expo.is_zero()) continue;
            if (base->kind == NodeKind::Sum && expo.is_integer() && expo.num() > 0) {
                // Left whole here; the distribution step below expands it.
                Expr f = expo.is_one() ? base
                                       : make_node(NodeKind::Power, FuncTag::Sin, expo, -1,
                                                   {base}, nullptr);
                rebuilt.emplace_back(base, f);
                continue;
            }
            Expr f = powr(base, expo);
            if (f->kind == NodeKind::Number) {
                coeff *= f->value;
                continue;
            }
            if (f->kind == NodeKind::Product) {
                redo = true;
                rebuilt.emplace_back(base, f);
                continue;
            }
            auto [b2, e2] = split_power(f);
            if (!equal(b2, base)) redo = true;
            rebuilt.emplace_back(b2, f);
        }
        if (coeff.is_zero()) return num(0);

        if (redo) {
            pending.clear();
            pending.push_back(num(coeff));
            for (auto& [b, f] : rebuilt) pending.push_back(f);
            continue;
        }

        if (rebuilt.empty()) return num(coeff);
        if (rebuilt.size() == 1 && coeff.is_one()) {
            const Expr& f = rebuilt[0].second;
            // A whole sum under a positive integer exponent is still pending
            // distribution; everything else is already canonical.
            bool undistributed = f->kind == NodeKind::Power &&
                                 f->kids[0]->kind == NodeKind::Sum &&
                                 f->value.is_integer() && !f->value.is_negative();
            if (!undistributed) return f;
        }

        // Distribute sums carrying positive integer exponents; canonical
        // products keep sums only under inverse or fractional powers.
        std::vector<Expr> monos;
        std::vector<std::pair<Expr, long long>> sums;
        for (auto& [b, f] : rebuilt) {
            auto [base, expo] = split_power(f);
            if (base->kind == NodeKind::Sum && expo.is_integer() && expo.num() > 0)
                sums.emplace_back(base, expo.num());
            else
                monos.push_back(f);
        }
        if (!sums.empty()) {
            std::size_t total = 1;
            for (auto& [s, k] : sums)
                for (long long i = 0; i < k; ++i) {
                    total *= s->kids.size();
                    if (total > (std::size_t)1 << 20)
                        throw std::logic_error("product expansion too large");
                }
            std::vector<std::vector<Expr>> picks{{}};
            for (auto& [s, k] : sums)
                for (long long rep = 0; rep < k; ++rep) {
                    std::vector<std::vector<Expr>> next;
                    next.reserve(picks.size() * s->kids.size());
                    for (const auto& p : picks)
                        for (const auto& t : s->kids) {
                            auto q = p;
                            q.push_back(t);
                            next.push_back(std::move(q));
                        }
                    picks = std::move(next);
                }
            std::vector<Expr> expanded;
            expanded.reserve(picks.size());
            for (auto& p : picks) {
                std::vector<Expr> fs;
                fs.reserve(monos.size() + p.size() + 1);
                if (!coeff.is_one()) fs.push_back(num(coeff));
                fs.insert(fs.end(), monos.begin(), monos.end());
                fs.insert(fs.end(), p.begin(), p.end());
                expanded.push_back(mul(std::move(fs)));
            }
            return add(std::move(expanded));
        }

        std::sort(rebuilt.begin(), rebuilt.end(), [](const auto& x, const auto& y) {
            return compare(x.first, y.first) < 0;
        });
        std::vector<Expr> kids;
        if (!coeff.is_one()) kids.push_back(num(coeff));
        for (auto& [b, f] : rebuilt) kids.push_back(f);
        return make_node(NodeKind::Product, FuncTag::Sin, Rational(), -1, std::move(kids),
                         nullptr);
    }
    throw std::logic_error("product canonicalization did not settle");
}

Expr powr(const Expr& base, const Rational& expo) {
    if (expo.is_zero()) return num(1);
    if (expo.is_one()) return base;

    if (base->kind == NodeKind::Number) {
        const Rational& v = base->value;
        if (expo.is_integer()) {
            if (v.is_zero() && expo.is_negative())
                throw std::domain_error("zero raised to a negative power");
            return num(v.pow(expo.num()));
        }
        if (v.is_zero()) {
            if (expo.is_negative()) throw std::domain_error("zero raised to a negative power");
            return num(0);
        }
        if (v.is_negative())
            throw std::domain_error("fractional power of a negative constant");
        long long rn, rd;
        if (exact_root(v.num(), expo.den(), rn) && exact_root(v.den(), expo.den(), rd))
            return powr(num(Rational(rn, rd)), Rational(expo.num()));
        if (v.is_one()) return num(1);
    }

    if (base->kind == NodeKind::Power && expo.is_integer())
        return powr(base->kids[0], base->value * expo);

    if (base->kind == NodeKind::Sum && expo.is_integer()) {
        long long k = expo.num();
        if (k >= 2) return mul(std::vector<Expr>((std::size_t)k, base));
        // k <= -1: canonical inverse powers of sums carry exponent -1 over an
        // expanded, content-free base.
        Expr e = k == -1 ? base : mul(std::vector<Expr>((std::size_t)(-k), base));
        if (e->kind != NodeKind::Sum) return powr(e, Rational(-1));
        SumContent sc = sum_content(e);
        if (!sc.coeff.is_one() || !sc.factors.empty()) {
            std::vector<Expr> parts;
            parts.push_back(num(Rational(1) / sc.coeff));
            for (const auto& [b, ex] : sc.factors) parts.push_back(powr(b, -ex));
            parts.push_back(powr(sc.primitive, Rational(-1)));
            return mul(std::move(parts));
        }
        return make_node(NodeKind::Power, FuncTag::Sin, Rational(-1), -1, {e}, nullptr);
    }

    if (base->kind == NodeKind::Product && expo.is_integer()) {
        std::vector<Expr> parts;
        for (const auto& k : base->kids) parts.push_back(powr(k, expo));
        return mul(std::move(parts));
    }

    if (base->kind == NodeKind::Product && !expo.is_integer()) {
        // Peel the integer part of the exponent; it distributes over the
        // product exactly, so only a proper fractional power remains and
        // coefficient-carrying radicals merge (30 z^2 (30 z^2)^-3/2 and
        // (30 z^2)^-1/2 land on the same factor).
        long long n = expo.num() / expo.den();
        if (n != 0) {
            Expr frac = make_node(NodeKind::Power, FuncTag::Sin, expo - Rational(n), -1,
                                  {base}, nullptr);
            return mul(powr(base, Rational(n)), frac);
        }
    }

    if (base->kind == NodeKind::Call) {
        // Even powers of a square root fold away; odd ones keep the root so
        // quotients like u_x/sqrt(1 - u^2) print as written.
        if (base->func == FuncTag::Sqrt && expo.is_integer() && expo.num() % 2 == 0)
            return powr(base->kids[0], Rational(expo.num() / 2));
        if (base->func == FuncTag::Exp)
            return call(FuncTag::Exp, mul(num(expo), base->kids[0]));
    }

    return make_node(NodeKind::Power, FuncTag::Sin, expo, -1, {base}, nullptr);
}

Expr call(FuncTag f, const Expr& a) {
    switch (f) {
        case FuncTag::Sqrt: {
            if (a->kind == NodeKind::Number) {
                const Rational& v = a->value;
                if (v.is_negative())
                    throw std::domain_error("square root of a negative constant");
                if (v.is_zero()) return num(0);
                long long sn = square_part(v.num()), sd = square_part(v.den());
                Rational s(sn, sd);
                Rational inner = v / (s * s);
                if (inner.is_one()) return num(s);
                Expr node = powr(num(inner), Rational(1, 2));
                if (s.is_one()) return node;
                return mul(num(s), node);
            }
            // Pull positively-known square factors (rationals, powers of pi)
            // out of a product argument.
            if (a->kind == NodeKind::Product || a->kind == NodeKind::Power ||
                a->kind == NodeKind::Pi) {
                Rational c(1);
                std::vector<std::pair<Expr, Rational>> entries;
                if (a->kind == NodeKind::Product) {
                    for (const auto& k : a->kids) {
                        if (k->kind == NodeKind::Number) {
                            c *= k->value;
                            continue;
                        }
                        auto [b, e] = split_power(k);
                        entries.emplace_back(b, e);
                    }
                } else {
                    auto [b, e] = split_power(a);
                    entries.emplace_back(b, e);
                }
                std::vector<Expr> outside;
                std::vector<Expr> inside;
                if (!c.is_negative() && !c.is_one()) {
                    long long sn = square_part(c.num()), sd = square_part(c.den());
                    Rational s(sn, sd);
                    if (!s.is_one()) outside.push_back(num(s));
                    Rational rest = c / (s * s);
                    if (!rest.is_one()) inside.push_back(num(rest));
                } else if (!c.is_one()) {
                    inside.push_back(num(c));
                }
                bool extracted = !outside.empty();
                for (auto& [b, e] : entries) {
                    if (b->kind == NodeKind::Pi && e.is_integer()) {
                        long long t = e.num() >= 0 ? e.num() / 2 : -((-e.num() + 1) / 2);
                        long long r = e.num() - 2 * t;
                        if (t != 0) {
                            outside.push_back(powr(b, Rational(t)));
                            extracted = true;
                        }
                        if (r != 0) inside.push_back(powr(b, Rational(r)));
                    } else {
                        inside.push_back(powr(b, e));
                    }
                }
                if (extracted) {
                    Expr in = inside.empty() ? num(1) : mul(std::move(inside));
                    Expr root = call(FuncTag::Sqrt, in);
                    if (is_one(root)) return mul(std::move(outside));
                    outside.push_back(root);
                    return mul(std::move(outside));
                }
            }
            // Roots are represented as rational powers, so "sqrt(x)" and
            // "x^1/2" land on the same tree.
            return powr(a, Rational(1, 2));
        }
        case FuncTag::Sin:
        case FuncTag::Cos: {
            if (Expr p = manifest_neg(a)) {
                Expr inner = call(f, p);
                return f == FuncTag::Sin ? neg(inner) : inner;
            }
            if (is_zero(a)) return f == FuncTag::Sin ? num(0) : num(1);
            Rational q;
            if (pi_multiple(a, q)) {
                // Exact values at multiples of pi/2.
                Rational twice = q * Rational(2);
                if (twice.is_integer()) {
                    long long k = twice.num() % 4;
                    if (k < 0) k += 4;
                    static const int sin_tab[4] = {0, 1, 0, -1};
                    static const int cos_tab[4] = {1, 0, -1, 0};
                    return num(f == FuncTag::Sin ? sin_tab[k] : cos_tab[k]);
                }
            }
            break;
        }
        case FuncTag::Exp:
            if (is_zero(a)) return num(1);
            break;
        case FuncTag::Log:
            if (a->kind == NodeKind::Number) {
                if (a->value.is_one()) return num(0);
                if (a->value <= Rational(0))
                    throw std::domain_error("logarithm of a non-positive constant");
            }
            break;
    }
    return make_node(NodeKind::Call, f, Rational(), -1, {a}, nullptr);
}

Expr neg(const Expr& e) { return mul(num(-1), e); }
Expr sub(const Expr& a, const Expr& b) { return add(a, neg(b)); }
Expr div(const Expr& a, const Expr& b) { return mul(a, powr(b, Rational(-1))); }
Expr sin_e(const Expr& e) { return call(FuncTag::Sin, e); }
Expr cos_e(const Expr& e) { return call(FuncTag::Cos, e); }
Expr sqrt_e(const Expr& e) { return call(FuncTag::Sqrt, e); }
Expr exp_e(const Expr& e) { return call(FuncTag::Exp, e); }
Expr log_e(const Expr& e) { return call(FuncTag::Log, e); }

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { PrecSum = 0, PrecProd = 1, PrecPow = 2, PrecAtom = 3 };

std::string print(const Expr& e, int min_prec);

std::string print_power(const Expr& base, const Rational& expo) {
    std::string b = print(base, PrecSum);
    bool parens = base->kind == NodeKind::Sum || base->kind == NodeKind::Product ||
                  base->kind == NodeKind::Power ||
                  (base->kind == NodeKind::Number &&
                   (base->value.is_negative() || !base->value.is_integer()));
    if (parens) b = "(" + b + ")";
    return b + "^" + expo.str();
}

// A product, sign split off; |coeff| folded into numerator/denominator.
std::string print_product_body(const Expr& e) {
    Rational coeff(1);
    std::vector<std::pair<Expr, Rational>> numer, denom;
    auto handle = [&](const Expr& f) {
        auto [b, ex] = split_power(f);
        if (ex.is_negative())
            denom.emplace_back(b, -ex);
        else
            numer.emplace_back(b, ex);
    };
    if (e->kind == NodeKind::Product) {
        for (const auto& k : e->kids) {
            if (k->kind == NodeKind::Number)
                coeff = k->value;
            else
                handle(k);
        }
    } else {
        handle(e);
    }

    Rational ac = coeff.abs();
    std::vector<std::string> top;
    if (ac.num() != 1 || (numer.empty() && denom.empty() && ac.den() == 1))
        top.push_back(std::to_string(ac.num()));
    for (auto& [b, ex] : numer) {
        if (ex.is_one()) {
            if (b->kind == NodeKind::Sum)
                top.push_back("(" + print(b, PrecSum) + ")");
            else
                top.push_back(print(b, PrecProd));
        } else {
            top.push_back(print_power(b, ex));
        }
    }
    if (top.empty()) top.push_back("1");
    std::string out;
    for (std::size_t i = 0; i < top.size(); ++i) {
        if (i) out += "*";
        out += top[i];
    }
    if (ac.den() != 1) out += "/" + std::to_string(ac.den());
    for (auto& [b, ex] : denom) {
        std::string s;
        if (ex.is_one()) {
            if (b->kind == NodeKind::Sum || b->kind == NodeKind::Product)
                s = "(" + print(b, PrecSum) + ")";
            else
                s = print(b, PrecAtom);
        } else {
            s = print_power(b, ex);
        }
        out += "/" + s;
    }
    return out;
}

// (sign, body) of a term for use inside sums.
std::pair<bool, std::string> print_term(const Expr& t) {
    if (t->kind == NodeKind::Number) {
        Rational v = t->value.abs();
        return {t->value.is_negative(), v.str()};
    }
    if (t->kind == NodeKind::Product) {
        bool negv = t->kids[0]->kind == NodeKind::Number && t->kids[0]->value.is_negative();
        return {negv, print_product_body(t)};
    }
    return {false, print(t, PrecProd)};
}

std::string print(const Expr& e, int min_prec) {
    switch (e->kind) {
        case NodeKind::Number:
            return e->value.str();
        case NodeKind::Pi:
            return "pi";
        case NodeKind::Coord:
            return e->ctx->name_of(e->coord);
        case NodeKind::Call: {
            const char* name = "";
            switch (e->func) {
                case FuncTag::Sin: name = "sin"; break;
                case FuncTag::Cos: name = "cos"; break;
                case FuncTag::Sqrt: name = "sqrt"; break;
                case FuncTag::Exp: name = "exp"; break;
                case FuncTag::Log: name = "log"; break;
            }
            return std::string(name) + "(" + print(e->kids[0], PrecSum) + ")";
        }
        case NodeKind::Power:
            if (e->value.is_negative()) return print_product_body(e);  // "1/x" forms
            return print_power(e->kids[0], e->value);
        case NodeKind::Product: {
            auto [sign, body] = print_term(e);
            std::string s = sign ? "-" + body : body;
            if (min_prec > PrecProd && sign) return "(" + s + ")";
            return s;
        }
        case NodeKind::Sum: {
            std::string out;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                auto [sign, body] = print_term(e->kids[i]);
                if (i == 0)
                    out += sign ? "-" + body : body;
                else
                    out += (sign ? " - " : " + ") + body;
            }
            if (min_prec > PrecSum) return "(" + out + ")";
            return out;
        }
    }
    return "";
}

}  // namespace

std::string to_string(const Expr& e) { return print(e, PrecSum); }

// ---------------------------------------------------------------------------
// Evaluation

double EvalPoint::at(int id) const {
    if (id < 0 || (std::size_t)id >= values.size())
        throw eval_error("no value for coordinate id " + std::to_string(id));
    return values[id];
}

namespace {

double eval_rec(const Expr& e, const EvalPoint& p) {
    switch (e->kind) {
        case NodeKind::Number:
            return e->value.to_double();
        case NodeKind::Pi:
            return M_PI;
        case NodeKind::Coord:
            return p.at(e->coord);
        case NodeKind::Sum: {
            double s = 0;
            for (const auto& k : e->kids) s += eval_rec(k, p);
            return s;
        }
        case NodeKind::Product: {
            double s = 1;
            for (const auto& k : e->kids) s *= eval_rec(k, p);
            return s;
        }
        case NodeKind::Power: {
            double b = eval_rec(e->kids[0], p);
            if (e->value.is_integer()) {
                if (b == 0.0 && e->value.is_negative())
                    throw eval_error("division by zero");
                return std::pow(b, (double)e->value.num());
            }
            if (b < 0) throw eval_error("fractional power of a negative base");
            if (b == 0.0 && e->value.is_negative()) throw eval_error("division by zero");
            return std::pow(b, e->value.to_double());
        }
        case NodeKind::Call: {
            double a = eval_rec(e->kids[0], p);
            switch (e->func) {
                case FuncTag::Sin: return std::sin(a);
                case FuncTag::Cos: return std::cos(a);
                case FuncTag::Sqrt:
                    if (a < 0) throw eval_error("square root of a negative value");
                    return std::sqrt(a);
                case FuncTag::Exp: return std::exp(a);
                case FuncTag::Log:
                    if (a <= 0) throw eval_error("logarithm of a non-positive value");
                    return std::log(a);
            }
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

double eval(const Expr& e, const EvalPoint& p) {
    double v = eval_rec(e, p);
    if (!std::isfinite(v)) throw eval_error("evaluation left the finite range");
    return v;
}

// ---------------------------------------------------------------------------
// Differentiation and substitution

Expr pdiff(const Expr& e, int coord_id) {
    switch (e->kind) {
        case NodeKind::Number:
        case NodeKind::Pi:
            return num(0);
        case NodeKind::Coord:
            return e->coord == coord_id ? num(1) : num(0);
        case NodeKind::Sum: {
            std::vector<Expr> parts;
            for (const auto& k : e->kids) parts.push_back(pdiff(k, coord_id));
            return add(std::move(parts));
        }
        case NodeKind::Product: {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (e->kids[i]->kind == NodeKind::Number) continue;
                Expr d = pdiff(e->kids[i], coord_id);
                if (is_zero(d)) continue;
                std::vector<Expr> fs;
                for (std::size_t j = 0; j < e->kids.size(); ++j)
                    fs.push_back(i == j ? d : e->kids[j]);
                terms.push_back(mul(std::move(fs)));
            }
            return add(std::move(terms));
        }
        case NodeKind::Power: {
            Expr d = pdiff(e->kids[0], coord_id);
            if (is_zero(d)) return num(0);
            return mul({num(e->value), powr(e->kids[0], e->value - Rational(1)), d});
        }
        case NodeKind::Call: {
            Expr d = pdiff(e->kids[0], coord_id);
            if (is_zero(d)) return num(0);
            const Expr& a = e->kids[0];
            switch (e->func) {
                case FuncTag::Sin: return mul(cos_e(a), d);
                case FuncTag::Cos: return neg(mul(sin_e(a), d));
                case FuncTag::Sqrt:
                    return mul({num(Rational(1, 2)), powr(sqrt_e(a), Rational(-1)), d});
                case FuncTag::Exp: return mul(exp_e(a), d);
                case FuncTag::Log: return div(d, a);
            }
        }
    }
    throw std::logic_error("unreachable");
}

Expr pdiff(const Expr& e, const ContextPtr& ctx, const std::string& name) {
    auto id = ctx->id_of(name);
    if (!id) throw input_error("unknown identifier '" + name + "'");
    return pdiff(e, *id);
}

namespace {

Expr substitute_rec(const Expr& e, const std::map<int, Expr>& m,
                    std::unordered_map<const ExprNode*, Expr>& memo) {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    Expr out;
    switch (e->kind) {
        case NodeKind::Number:
        case NodeKind::Pi:
            out = e;
            break;
        case NodeKind::Coord: {
            auto f = m.find(e->coord);
            out = f == m.end() ? e : f->second;
            break;
        }
        case NodeKind::Sum:
        case NodeKind::Product: {
            std::vector<Expr> kids;
            bool changed = false;
            for (const auto& k : e->kids) {
                Expr s = substitute_rec(k, m, memo);
                changed = changed || s.get() != k.get();
                kids.push_back(s);
            }
            if (!changed)
                out = e;
            else if (e->kind == NodeKind::Sum)
                out = add(std::move(kids));
            else
                out = mul(std::move(kids));
            break;
        }
        case NodeKind::Power: {
            Expr b = substitute_rec(e->kids[0], m, memo);
            out = b.get() == e->kids[0].get() ? e : powr(b, e->value);
            break;
        }
        case NodeKind::Call: {
            Expr a = substitute_rec(e->kids[0], m, memo);
            out = a.get() == e->kids[0].get() ? e : call(e->func, a);
            break;
        }
    }
    memo.emplace(e.get(), out);
    return out;
}

}  // namespace

Expr substitute(const Expr& e, const std::map<int, Expr>& m) {
    if (m.empty()) return e;
    std::unordered_map<const ExprNode*, Expr> memo;
    return substitute_rec(e, m, memo);
}

namespace {

void walk_coords(const Expr& e, std::set<int>& out,
                 std::unordered_set<const ExprNode*>& seen) {
    if (!e->ctx) return;  // constants below carry no coordinates
    if (!seen.insert(e.get()).second) return;
    if (e->kind == NodeKind::Coord) {
        out.insert(e->coord);
        return;
    }
    for (const auto& k : e->kids) walk_coords(k, out, seen);
}

}  // namespace

std::set<int> coords_of(const Expr& e) {
    std::set<int> out;
    std::unordered_set<const ExprNode*> seen;
    walk_coords(e, out, seen);
    return out;
}

int max_jet_order(const Expr& e) {
    const JetContext* ctx = e->ctx;
    if (!ctx) return 0;
    int best = 0;
    for (int id : coords_of(e)) best = std::max(best, ctx->jet_order_of(id));
    return best;
}

bool contains_gauge(const Expr& e) {
    const JetContext* ctx = e->ctx;
    if (!ctx) return false;
    for (int id : coords_of(e)) {
        CoordKind k = ctx->kind_of(id);
        if (k == CoordKind::Gauge || k == CoordKind::GaugeJet) return true;
    }
    return false;
}

const JetContext* chart_of(const Expr& e) { return e->ctx; }

}  // namespace jetgauge
