#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetgauge/gauge.hpp"
#include "jetgauge/lie.hpp"
#include "jetgauge/musym.hpp"

namespace jetgauge {

// Line-oriented problem file: `[block]` headers, `key = value` entries,
// `#` comments.  Keys may repeat inside a block (equation lines do).
struct ProblemFile {
    using Entries = std::vector<std::pair<std::string, std::string>>;

    std::vector<std::pair<std::string, Entries>> blocks;  // declaration order

    static ProblemFile parse(const std::string& text);
    static ProblemFile load(const std::string& path);

    const Entries* find(const std::string& block) const;
    std::optional<std::string> value(const std::string& block, const std::string& key) const;
};

// Problem data decoded against the declared chart.  Blocks are optional;
// each command states which ones it needs and `need_*` accessors raise a
// uniform error naming the missing block.
struct Problem {
    ContextPtr ctx;
    std::optional<LieRepresentation> rep;
    std::optional<GaugeSection> section;
    std::vector<Expr> theta;
    std::optional<EvoField> field;
    std::optional<MuForm> mu;
    std::optional<MatrixExpr> kmatrix;
    std::optional<SolvedEquation> equation;
    OracleConfig oracle_cfg;
    SampleDomain domain;

    static Problem load(const ProblemFile& f);

    Oracle make_oracle() const { return Oracle(ctx, oracle_cfg, domain); }

    const LieRepresentation& need_rep() const;
    const GaugeSection& need_section() const;
    const std::vector<Expr>& need_theta() const;
    const EvoField& need_field() const;
    const MuForm& need_mu() const;
    const MatrixExpr& need_kmatrix() const;
    const SolvedEquation& need_equation() const;
};

// Splits on commas at bracket depth zero; list syntax for fields and ranges.
std::vector<std::string> split_top_level(const std::string& s, char sep);

}  // namespace jetgauge
