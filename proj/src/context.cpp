#include "jetgauge/context.hpp"

#include <algorithm>
#include <cctype>

namespace jetgauge {

namespace {

void gen_indices(std::size_t m, int left, std::size_t pos, std::vector<int>& cur,
                 std::vector<MultiIndex>& out) {
    if (pos == m) {
        if (left == 0) out.emplace_back(cur);
        return;
    }
    for (int j = left; j >= 0; --j) {
        cur[pos] = j;
        gen_indices(m, left - j, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha((unsigned char)s[0])) return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return true;
}

const char* kReserved[] = {"pi", "sin", "cos", "sqrt", "exp", "log"};

std::string jet_name(const std::string& base, const MultiIndex& J,
                     const std::vector<std::string>& indep) {
    if (J.order() == 0) return base;
    std::string s = base + "_";
    for (std::size_t i = 0; i < indep.size(); ++i)
        for (int t = 0; t < J[i]; ++t) s += indep[i];
    return s;
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(std::size_t m, int k) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(m, 0);
    for (int o = 0; o <= k; ++o) {
        std::vector<MultiIndex> level;
        gen_indices(m, o, 0, cur, level);
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::shared_ptr<const JetContext> JetContext::make(std::vector<std::string> indep,
                                                  std::vector<std::string> dep,
                                                  std::vector<std::string> gauge,
                                                  int order, bool gauge_jets) {
    if (indep.empty()) throw input_error("at least one independent variable required");
    if (dep.empty()) throw input_error("at least one dependent variable required");
    if (order < 1) throw input_error("jet order must be at least 1");

    auto ctx = std::shared_ptr<JetContext>(new JetContext());
    ctx->indep_ = std::move(indep);
    ctx->dep_ = std::move(dep);
    ctx->gauge_ = std::move(gauge);
    ctx->order_ = order;
    ctx->gauge_jets_ = gauge_jets;

    auto add = [&](const std::string& name, CoordKind kind, std::size_t slot,
                   const MultiIndex& J) {
        if (!valid_name(name)) throw input_error("invalid coordinate name '" + name + "'");
        for (const char* r : kReserved)
            if (name == r) throw input_error("coordinate name '" + name + "' is reserved");
        if (ctx->by_name_.count(name))
            throw input_error("duplicate coordinate name '" + name + "'");
        int id = (int)ctx->names_.size();
        ctx->names_.push_back(name);
        ctx->kinds_.push_back(kind);
        ctx->payload_.emplace_back(slot, J);
        ctx->by_name_[name] = id;
        return id;
    };

    const MultiIndex zero((std::size_t)ctx->indep_.size());
    for (std::size_t i = 0; i < ctx->indep_.size(); ++i)
        add(ctx->indep_[i], CoordKind::Independent, i, zero);
    for (std::size_t mi = 0; mi < ctx->gauge_.size(); ++mi) {
        int id = add(ctx->gauge_[mi], CoordKind::Gauge, mi, zero);
        ctx->gauge_lookup_[{mi, zero.parts()}] = id;
    }

    auto indices = multi_indices_up_to(ctx->indep_.size(), order);
    for (const auto& J : indices) {
        for (std::size_t a = 0; a < ctx->dep_.size(); ++a) {
            int id = add(jet_name(ctx->dep_[a], J, ctx->indep_), CoordKind::DepJet, a, J);
            ctx->dep_lookup_[{a, J.parts()}] = id;
            ctx->dep_jet_ids_.push_back(id);
        }
    }
    if (gauge_jets) {
        for (const auto& J : indices) {
            if (J.order() == 0) continue;
            for (std::size_t mi = 0; mi < ctx->gauge_.size(); ++mi) {
                int id = add(jet_name(ctx->gauge_[mi], J, ctx->indep_), CoordKind::GaugeJet,
                             mi, J);
                ctx->gauge_lookup_[{mi, J.parts()}] = id;
                ctx->gauge_jet_ids_.push_back(id);
            }
        }
    }
    return ctx;
}

std::optional<int> JetContext::id_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int JetContext::gauge_id(std::size_t mi) const {
    auto it = gauge_lookup_.find({mi, std::vector<int>(indep_.size(), 0)});
    if (it == gauge_lookup_.end()) throw std::logic_error("no such gauge coordinate");
    return it->second;
}

int JetContext::dep_jet_id(std::size_t a, const MultiIndex& J) const {
    auto it = dep_lookup_.find({a, J.parts()});
    if (it == dep_lookup_.end())
        throw order_overflow_error("jet coordinate of order " + std::to_string(J.order()) +
                                   " exceeds chart order " + std::to_string(order_));
    return it->second;
}

int JetContext::gauge_jet_id(std::size_t mi, const MultiIndex& J) const {
    auto it = gauge_lookup_.find({mi, J.parts()});
    if (it == gauge_lookup_.end())
        throw order_overflow_error("gauge jet coordinate of order " +
                                   std::to_string(J.order()) + " exceeds chart order " +
                                   std::to_string(order_));
    return it->second;
}

std::pair<std::size_t, MultiIndex> JetContext::dep_jet_info(int id) const {
    if (kinds_[id] != CoordKind::DepJet) throw std::logic_error("not a jet coordinate");
    return payload_[id];
}

std::pair<std::size_t, MultiIndex> JetContext::gauge_jet_info(int id) const {
    if (kinds_[id] != CoordKind::Gauge && kinds_[id] != CoordKind::GaugeJet)
        throw std::logic_error("not a gauge coordinate");
    return payload_[id];
}

int JetContext::jet_successor(int id, std::size_t i) const {
    const auto& [slot, J] = payload_[id];
    MultiIndex next = J.bump(i);
    if (next.order() > order_)
        throw order_overflow_error("derivative of " + names_[id] + " needs jet order " +
                                   std::to_string(next.order()) + " but chart stops at " +
                                   std::to_string(order_));
    if (kinds_[id] == CoordKind::DepJet) return dep_jet_id(slot, next);
    return gauge_jet_id(slot, next);
}

int JetContext::jet_order_of(int id) const {
    switch (kinds_[id]) {
        case CoordKind::DepJet:
        case CoordKind::GaugeJet:
            return payload_[id].second.order();
        default:
            return 0;
    }
}

}  // namespace jetgauge
