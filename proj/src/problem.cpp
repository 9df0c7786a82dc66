#include "jetgauge/problem.hpp"

#include <fstream>
#include <sstream>

#include "jetgauge/parse.hpp"

namespace jetgauge {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Expr parse_in(const ContextPtr& ctx, const std::string& block, const std::string& key,
              const std::string& text) {
    try {
        return parse_expr(text, ctx);
    } catch (const parse_error& e) {
        throw input_error("[" + block + "] " + key + ": " + e.what());
    } catch (const input_error& e) {
        throw input_error("[" + block + "] " + key + ": " + e.what());
    }
}

std::vector<Expr> parse_list(const ContextPtr& ctx, const std::string& block,
                             const std::string& key, const std::string& text) {
    std::vector<Expr> out;
    for (const auto& piece : split_top_level(text, ','))
        out.push_back(parse_in(ctx, block, key, piece));
    return out;
}

// "[[a, b], [c, d]]", or a bare expression for a 1x1 matrix.
MatrixExpr parse_matrix(const ContextPtr& ctx, const std::string& block,
                        const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (t.empty() || t[0] != '[')
        return MatrixExpr(1, {parse_in(ctx, block, key, t)});
    if (t.size() < 4 || t.back() != ']')
        throw input_error("[" + block + "] " + key + ": unterminated matrix");
    std::vector<std::vector<Expr>> rows;
    for (const auto& row_text : split_top_level(t.substr(1, t.size() - 2), ',')) {
        std::string r = trim(row_text);
        if (r.size() < 2 || r.front() != '[' || r.back() != ']')
            throw input_error("[" + block + "] " + key + ": matrix row '" + r +
                              "' is not bracketed");
        rows.push_back(parse_list(ctx, block, key, r.substr(1, r.size() - 2)));
    }
    std::size_t d = rows.size();
    std::vector<Expr> entries;
    for (const auto& row : rows) {
        if (row.size() != d)
            throw input_error("[" + block + "] " + key + ": matrix is not square");
        for (const auto& e : row) entries.push_back(e);
    }
    return MatrixExpr((int)d, std::move(entries));
}

std::vector<std::string> name_list(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& piece : split_top_level(text, ',')) out.push_back(piece);
    return out;
}

int parse_int(const std::string& block, const std::string& key, const std::string& text) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw input_error("[" + block + "] " + key + ": '" + text + "' is not an integer");
    }
}

double parse_real(const std::string& block, const std::string& key, const std::string& text) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw input_error("[" + block + "] " + key + ": '" + text + "' is not a number");
    }
}

bool parse_bool(const std::string& block, const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw input_error("[" + block + "] " + key + ": '" + text + "' is not true/false");
}

}  // namespace

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    if (out.size() == 1 && out[0].empty()) return {};
    for (const auto& piece : out)
        if (piece.empty()) throw input_error("empty entry in list '" + s + "'");
    return out;
}

ProblemFile ProblemFile::parse(const std::string& text) {
    ProblemFile f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    Entries* current = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            std::string name = trim(t.substr(1, t.size() - 2));
            if (name.empty())
                throw input_error("line " + std::to_string(lineno) + ": empty block name");
            for (const auto& [existing, _] : f.blocks)
                if (existing == name)
                    throw input_error("line " + std::to_string(lineno) + ": block [" + name +
                                      "] given twice");
            f.blocks.push_back({name, {}});
            current = &f.blocks.back().second;
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw input_error("line " + std::to_string(lineno) +
                              ": expected '[block]' or 'key = value', got '" + t + "'");
        if (!current)
            throw input_error("line " + std::to_string(lineno) +
                              ": entry before any [block] header");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw input_error("line " + std::to_string(lineno) + ": empty key");
        current->push_back({key, value});
    }
    return f;
}

ProblemFile ProblemFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const ProblemFile::Entries* ProblemFile::find(const std::string& block) const {
    for (const auto& [name, entries] : blocks)
        if (name == block) return &entries;
    return nullptr;
}

std::optional<std::string> ProblemFile::value(const std::string& block,
                                              const std::string& key) const {
    const Entries* e = find(block);
    if (!e) return std::nullopt;
    for (const auto& [k, v] : *e)
        if (k == key) return v;
    return std::nullopt;
}

Problem Problem::load(const ProblemFile& f) {
    Problem p;

    const ProblemFile::Entries* cb = f.find("context");
    if (!cb) throw input_error("problem file needs a [context] block");
    {
        std::vector<std::string> indep, dep, gauge;
        int order = -1;
        bool gauge_jets = false;
        for (const auto& [key, value] : *cb) {
            if (key == "independent") indep = name_list(value);
            else if (key == "dependent") dep = name_list(value);
            else if (key == "gauge") gauge = name_list(value);
            else if (key == "order") order = parse_int("context", key, value);
            else if (key == "gauge_jets") gauge_jets = parse_bool("context", key, value);
            else throw input_error("[context] has no key '" + key + "'");
        }
        if (indep.empty()) throw input_error("[context] needs 'independent'");
        if (dep.empty()) throw input_error("[context] needs 'dependent'");
        if (order < 0) throw input_error("[context] needs 'order'");
        p.ctx = JetContext::make(indep, dep, gauge, order, gauge_jets);
    }

    for (const auto& [name, entries] : f.blocks) {
        if (name == "context") continue;
        if (name == "representation") {
            std::optional<std::string> family;
            std::vector<MatrixExpr> gens;
            for (const auto& [key, value] : entries) {
                if (key == "family") family = value;
                else if (key == "generators") {
                    for (const auto& g : split_top_level(value, ';'))
                        gens.push_back(parse_matrix(p.ctx, name, key, g));
                } else throw input_error("[representation] has no key '" + key + "'");
            }
            if (family && !gens.empty())
                throw input_error("[representation] takes 'family' or 'generators', not both");
            if (family) p.rep = representation(*family);
            else if (!gens.empty()) p.rep = custom_representation(std::move(gens));
            else throw input_error("[representation] needs 'family' or 'generators'");
        } else if (name == "section") {
            std::vector<Expr> entries_a(p.ctx->n_gauge());
            std::vector<bool> seen(p.ctx->n_gauge(), false);
            for (const auto& [key, value] : entries) {
                if (key == "a") {
                    auto list = parse_list(p.ctx, name, key, value);
                    if (list.size() != p.ctx->n_gauge())
                        throw input_error("[section] a: expected " +
                                          std::to_string(p.ctx->n_gauge()) +
                                          " entries, got " + std::to_string(list.size()));
                    entries_a = list;
                    seen.assign(p.ctx->n_gauge(), true);
                    continue;
                }
                bool matched = false;
                for (std::size_t m = 0; m < p.ctx->n_gauge(); ++m) {
                    if (key != p.ctx->gauge_name(m)) continue;
                    entries_a[m] = parse_in(p.ctx, name, key, value);
                    seen[m] = true;
                    matched = true;
                    break;
                }
                if (!matched)
                    throw input_error("[section] has no key '" + key +
                                      "' (use 'a' or a gauge symbol name)");
            }
            for (std::size_t m = 0; m < p.ctx->n_gauge(); ++m)
                if (!seen[m])
                    throw input_error("[section] is missing an entry for " +
                                      p.ctx->gauge_name(m));
            p.section = GaugeSection::make(p.ctx, std::move(entries_a));
        } else if (name == "field") {
            std::vector<Expr> q, pm, xi, phi;
            for (const auto& [key, value] : entries) {
                if (key == "theta") p.theta = parse_list(p.ctx, name, key, value);
                else if (key == "q") q = parse_list(p.ctx, name, key, value);
                else if (key == "p") pm = parse_list(p.ctx, name, key, value);
                else if (key == "xi") xi = parse_list(p.ctx, name, key, value);
                else if (key == "phi") phi = parse_list(p.ctx, name, key, value);
                else throw input_error("[field] has no key '" + key + "'");
            }
            if (!q.empty() && (!xi.empty() || !phi.empty()))
                throw input_error("[field] takes 'q' or 'xi'/'phi', not both");
            if (!q.empty()) {
                p.field = EvoField::make(p.ctx, std::move(q), std::move(pm));
            } else if (!xi.empty() || !phi.empty()) {
                if (xi.empty() || phi.empty())
                    throw input_error("[field] needs both 'xi' and 'phi'");
                p.field = evolutionary(
                    PointField::make(p.ctx, std::move(xi), std::move(phi), std::move(pm)));
            } else if (!pm.empty()) {
                throw input_error("[field] has 'p' but no 'q' or 'xi'/'phi'");
            }
        } else if (name == "mu") {
            std::vector<MatrixExpr> lambda;
            std::optional<MatrixExpr> single;
            std::map<std::size_t, MatrixExpr> per_dir;
            for (const auto& [key, value] : entries) {
                if (key == "lambda") {
                    single = parse_matrix(p.ctx, name, key, value);
                } else if (key.rfind("lambda", 0) == 0) {
                    int i = parse_int(name, key, key.substr(6));
                    if (i < 1 || (std::size_t)i > p.ctx->n_indep())
                        throw input_error("[mu] " + key + ": direction out of range");
                    per_dir.emplace((std::size_t)(i - 1),
                                    parse_matrix(p.ctx, name, key, value));
                } else throw input_error("[mu] has no key '" + key + "'");
            }
            if (single && !per_dir.empty())
                throw input_error("[mu] takes 'lambda' or 'lambda1..', not both");
            if (single) {
                if (p.ctx->n_indep() != 1)
                    throw input_error("[mu] lambda: several base variables; use lambda1..");
                lambda.push_back(*single);
            } else {
                for (std::size_t i = 0; i < p.ctx->n_indep(); ++i) {
                    auto it = per_dir.find(i);
                    if (it == per_dir.end())
                        throw input_error("[mu] is missing lambda" + std::to_string(i + 1));
                    lambda.push_back(it->second);
                }
            }
            p.mu = MuForm::make(p.ctx, std::move(lambda));
        } else if (name == "kmatrix") {
            for (const auto& [key, value] : entries) {
                if (key == "k") p.kmatrix = parse_matrix(p.ctx, name, key, value);
                else throw input_error("[kmatrix] has no key '" + key + "'");
            }
            if (!p.kmatrix) throw input_error("[kmatrix] needs 'k'");
        } else if (name == "equation") {
            std::vector<std::pair<std::string, Expr>> eqs;
            for (const auto& [key, value] : entries)
                eqs.push_back({key, parse_in(p.ctx, name, key, value)});
            p.equation = SolvedEquation::make(p.ctx, std::move(eqs));
        } else if (name == "oracle") {
            for (const auto& [key, value] : entries) {
                if (key == "seed") {
                    try {
                        p.oracle_cfg.seed = std::stoull(value, nullptr, 0);
                    } catch (const std::exception&) {
                        throw input_error("[oracle] seed: '" + value + "' is not a number");
                    }
                } else if (key == "samples") {
                    p.oracle_cfg.samples = parse_int(name, key, value);
                } else if (key == "tol") {
                    p.oracle_cfg.tol = parse_real(name, key, value);
                } else if (key.rfind("range_", 0) == 0) {
                    auto parts = split_top_level(value, ',');
                    if (parts.size() != 2)
                        throw input_error("[oracle] " + key + ": expected 'lo, hi'");
                    double lo = parse_real(name, key, parts[0]);
                    double hi = parse_real(name, key, parts[1]);
                    std::string sym = key.substr(6);
                    if (sym == "default") {
                        p.domain.default_lo = lo;
                        p.domain.default_hi = hi;
                    } else {
                        p.domain.set(sym, lo, hi);
                    }
                } else throw input_error("[oracle] has no key '" + key + "'");
            }
        } else {
            throw input_error("unknown block [" + name + "]");
        }
    }
    return p;
}

const LieRepresentation& Problem::need_rep() const {
    if (!rep) throw input_error("this command needs a [representation] block");
    return *rep;
}
const GaugeSection& Problem::need_section() const {
    if (!section) throw input_error("this command needs a [section] block");
    return *section;
}
const std::vector<Expr>& Problem::need_theta() const {
    if (theta.empty())
        throw input_error("this command needs 'theta' in the [field] block");
    return theta;
}
const EvoField& Problem::need_field() const {
    if (!field) throw input_error("this command needs a [field] block with q or xi/phi");
    return *field;
}
const MuForm& Problem::need_mu() const {
    if (!mu) throw input_error("this command needs a [mu] block");
    return *mu;
}
const MatrixExpr& Problem::need_kmatrix() const {
    if (!kmatrix) throw input_error("this command needs a [kmatrix] block");
    return *kmatrix;
}
const SolvedEquation& Problem::need_equation() const {
    if (!equation) throw input_error("this command needs an [equation] block");
    return *equation;
}

}  // namespace jetgauge
