#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetgauge {

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct order_overflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Derivative multi-index over m independent variables: J = (j_1, ..., j_m).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t m) : j_(m, 0) {}
    MultiIndex(std::initializer_list<int> v) : j_(v) {}
    explicit MultiIndex(std::vector<int> v) : j_(std::move(v)) {}

    std::size_t size() const { return j_.size(); }
    int operator[](std::size_t i) const { return j_[i]; }

    int order() const {
        int s = 0;
        for (int x : j_) s += x;
        return s;
    }

    static MultiIndex unit(std::size_t m, std::size_t i) {
        MultiIndex r(m);
        r.j_[i] = 1;
        return r;
    }

    MultiIndex bump(std::size_t i) const {
        MultiIndex r = *this;
        r.j_[i] += 1;
        return r;
    }

    MultiIndex drop(std::size_t i) const {
        MultiIndex r = *this;
        if (r.j_[i] == 0) throw std::logic_error("multi-index underflow");
        r.j_[i] -= 1;
        return r;
    }

    bool operator==(const MultiIndex& o) const { return j_ == o.j_; }
    bool operator!=(const MultiIndex& o) const { return j_ != o.j_; }
    // Order by |J| first, then lexicographically; gives a stable table layout.
    bool operator<(const MultiIndex& o) const {
        int a = order(), b = o.order();
        if (a != b) return a < b;
        return j_ < o.j_;
    }

    const std::vector<int>& parts() const { return j_; }

private:
    std::vector<int> j_;
};

// All multi-indices over m variables with |J| <= k, sorted.
std::vector<MultiIndex> multi_indices_up_to(std::size_t m, int k);

enum class CoordKind { Independent, DepJet, Gauge, GaugeJet };

// Fixed coordinate chart for one computation: m independent variables,
// n dependent ones carrying jet coordinates up to a maximum order, and r
// inert gauge parameters (optionally with their own formal jet coordinates
// for augmented-derivative work). Immutable once built; expressions hold
// coordinate ids into this table.
class JetContext : public std::enable_shared_from_this<JetContext> {
public:
    static std::shared_ptr<const JetContext> make(std::vector<std::string> indep,
                                                  std::vector<std::string> dep,
                                                  std::vector<std::string> gauge,
                                                  int order, bool gauge_jets = false);

    std::size_t n_indep() const { return indep_.size(); }
    std::size_t n_dep() const { return dep_.size(); }
    std::size_t n_gauge() const { return gauge_.size(); }
    int order() const { return order_; }
    bool has_gauge_jets() const { return gauge_jets_; }

    const std::string& indep_name(std::size_t i) const { return indep_[i]; }
    const std::string& dep_name(std::size_t a) const { return dep_[a]; }
    const std::string& gauge_name(std::size_t mi) const { return gauge_[mi]; }

    std::size_t total_symbols() const { return names_.size(); }
    CoordKind kind_of(int id) const { return kinds_[id]; }
    const std::string& name_of(int id) const { return names_[id]; }
    std::optional<int> id_of(const std::string& name) const;

    int indep_id(std::size_t i) const { return (int)i; }
    int gauge_id(std::size_t mi) const;
    int dep_jet_id(std::size_t a, const MultiIndex& J) const;
    int gauge_jet_id(std::size_t mi, const MultiIndex& J) const;

    // (a, J) for a DepJet id; (mi, J) for a Gauge/GaugeJet id.
    std::pair<std::size_t, MultiIndex> dep_jet_info(int id) const;
    std::pair<std::size_t, MultiIndex> gauge_jet_info(int id) const;

    // Id of u^a_{J+e_i} given id of u^a_J (same for gauge jets); throws
    // order_overflow_error when |J|+1 would exceed the chart's order.
    int jet_successor(int id, std::size_t i) const;

    // Max |J| over dep-jet ids in `ids`; gauge jets counted when
    // `count_gauge_jets`.
    int jet_order_of(int id) const;

    const std::vector<int>& dep_jet_ids() const { return dep_jet_ids_; }
    const std::vector<int>& gauge_jet_ids() const { return gauge_jet_ids_; }

private:
    JetContext() = default;

    std::vector<std::string> indep_, dep_, gauge_;
    int order_ = 0;
    bool gauge_jets_ = false;

    std::vector<std::string> names_;
    std::vector<CoordKind> kinds_;
    std::map<std::string, int> by_name_;
    // id -> (slot, J) payloads for jet coords
    std::vector<std::pair<std::size_t, MultiIndex>> payload_;
    std::map<std::pair<std::size_t, std::vector<int>>, int> dep_lookup_;
    std::map<std::pair<std::size_t, std::vector<int>>, int> gauge_lookup_;
    std::vector<int> dep_jet_ids_;
    std::vector<int> gauge_jet_ids_;
};

using ContextPtr = std::shared_ptr<const JetContext>;

}  // namespace jetgauge
