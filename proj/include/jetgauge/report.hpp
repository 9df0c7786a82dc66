#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetgauge/oracle.hpp"

namespace jetgauge {

// Outcome of one CLI command: parameter echo, computed values, and named
// true/false verdicts.  Two renderings share the same verdicts: a
// line-oriented machine form and a prose form.
//
// Machine form, one record per line:
//   META <key> = <value>
//   RESULT <name> = <value>
//   VERDICT <name> <true|false> [witness: k=v,k=v,...]
// Witness points use the oracle's number formatting, so reports are
// byte-identical for identical input and seed.
struct Report {
    struct Meta {
        std::string key, value;
    };
    struct Result {
        std::string name, value;
    };
    struct Verdict {
        std::string name;
        bool value = false;
        std::optional<Witness> witness;
        std::string note;  // short annotation, e.g. vacuity
    };

    std::vector<Meta> meta;
    std::vector<Result> results;
    std::vector<Verdict> verdicts;

    void add_meta(const std::string& key, const std::string& value);
    void add_result(const std::string& name, const std::string& value);
    // Name should be a single token; a witness label is folded into it.
    void add_verdict(const std::string& name, const EqualResult& r,
                     const std::string& note = "");
    void add_verdict(const std::string& name, bool value, const std::string& note = "");

    bool all_true() const;

    std::string machine() const;
    std::string human() const;
};

}  // namespace jetgauge
