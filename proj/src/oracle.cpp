#include "jetgauge/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace jetgauge {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string Witness::str() const {
    std::string out;
    if (!label.empty()) out += label + ": ";
    out += "lhs=" + format_double(lhs) + " rhs=" + format_double(rhs) + " at ";
    if (point.empty()) return out + "(constants)";
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i) out += ",";
        out += point[i].first + "=" + format_double(point[i].second);
    }
    return out;
}

namespace {

// Portable uniform double in [0,1): top 53 bits of the generator output.
double unit_double(std::mt19937_64& g) {
    return (double)(g() >> 11) * 0x1.0p-53;
}

}  // namespace

EqualResult Oracle::check_equal(const Expr& lhs, const Expr& rhs,
                                const std::string& label) const {
    std::mt19937_64 gen(cfg_.seed);
    int retries = cfg_.max_retries;

    std::set<int> used = coords_of(lhs);
    for (int id : coords_of(rhs)) used.insert(id);

    EvalPoint p;
    p.values.resize(ctx_->total_symbols(), 0.0);

    for (int s = 0; s < cfg_.samples; ++s) {
        for (;;) {
            for (std::size_t id = 0; id < p.values.size(); ++id) {
                auto [lo, hi] = dom_.range_for(ctx_->name_of((int)id));
                p.values[id] = lo + (hi - lo) * unit_double(gen);
            }
            double a, b;
            try {
                a = eval(lhs, p);
                b = eval(rhs, p);
            } catch (const eval_error&) {
                if (--retries < 0) {
                    EqualResult r;
                    r.verdict = EqualResult::Unsampleable;
                    return r;
                }
                continue;
            }
            if (std::fabs(a - b) > cfg_.tol) {
                EqualResult r;
                r.verdict = EqualResult::NotEqual;
                Witness w;
                for (int id : used)
                    w.point.emplace_back(ctx_->name_of(id), p.values[id]);
                w.lhs = a;
                w.rhs = b;
                w.label = label;
                r.witness = w;
                return r;
            }
            break;
        }
    }
    return {};
}

EqualResult Oracle::check_zero(const Expr& e, const std::string& label) const {
    return check_equal(e, num(0), label);
}

}  // namespace jetgauge
