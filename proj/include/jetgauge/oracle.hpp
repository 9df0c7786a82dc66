#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetgauge/expr.hpp"

namespace jetgauge {

// Sampling box: one closed interval per coordinate name, with a default for
// everything unnamed. Checks set these to keep clear of singular loci
// (denominators, sqrt branch points).
struct SampleDomain {
    double default_lo = -1.0;
    double default_hi = 1.0;
    std::map<std::string, std::pair<double, double>> ranges;

    SampleDomain& set(const std::string& name, double lo, double hi) {
        ranges[name] = {lo, hi};
        return *this;
    }
    std::pair<double, double> range_for(const std::string& name) const {
        auto it = ranges.find(name);
        if (it != ranges.end()) return it->second;
        return {default_lo, default_hi};
    }
};

struct OracleConfig {
    std::uint64_t seed = 0x6A657467ULL;
    int samples = 20;
    double tol = 1e-9;
    int max_retries = 200;  // redraws allowed per check on domain faults
};

struct Witness {
    std::vector<std::pair<std::string, double>> point;  // name -> value
    double lhs = 0, rhs = 0;
    std::string label;  // which quantity disagreed, when checking several
    std::string str() const;
};

struct EqualResult {
    enum Verdict { Equal, NotEqual, Unsampleable } verdict = Equal;
    std::optional<Witness> witness;
    bool ok() const { return verdict == Equal; }
};

// Seeded random-evaluation equality check: draws points from the domain,
// evaluates both sides, and accepts when |lhs - rhs| <= tol at every sample.
// Points that fault (division by zero, sqrt of a negative value, ...) are
// redrawn up to a retry budget; running out yields Unsampleable. The
// generator is reset per check, so verdicts are deterministic in
// (expressions, seed, domain).
class Oracle {
public:
    Oracle(ContextPtr ctx, OracleConfig cfg = {}, SampleDomain dom = {})
        : ctx_(std::move(ctx)), cfg_(cfg), dom_(std::move(dom)) {}

    const OracleConfig& config() const { return cfg_; }
    const SampleDomain& domain() const { return dom_; }
    const ContextPtr& ctx() const { return ctx_; }

    EqualResult check_equal(const Expr& lhs, const Expr& rhs,
                            const std::string& label = "") const;
    EqualResult check_zero(const Expr& e, const std::string& label = "") const;

private:
    ContextPtr ctx_;
    OracleConfig cfg_;
    SampleDomain dom_;
};

std::string format_double(double v);

}  // namespace jetgauge
