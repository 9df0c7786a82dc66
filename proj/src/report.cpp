#include "jetgauge/report.hpp"

#include <sstream>

namespace jetgauge {

namespace {

// Verdict names are single tokens; labels like "coefficient of u_xx" fold
// into them with dashes.
std::string tokenize(const std::string& s) {
    std::string out;
    for (char c : s) out.push_back(c == ' ' ? '-' : c);
    return out;
}

std::string witness_point(const Witness& w) {
    std::ostringstream os;
    for (const auto& [name, value] : w.point) os << name << "=" << format_double(value) << ",";
    os << "lhs=" << format_double(w.lhs) << ",rhs=" << format_double(w.rhs);
    return os.str();
}

}  // namespace

void Report::add_meta(const std::string& key, const std::string& value) {
    meta.push_back({key, value});
}

void Report::add_result(const std::string& name, const std::string& value) {
    results.push_back({name, value});
}

void Report::add_verdict(const std::string& name, const EqualResult& r,
                         const std::string& note) {
    Verdict v;
    v.name = name;
    if (r.witness && !r.witness->label.empty()) v.name += ":" + tokenize(r.witness->label);
    v.value = r.ok();
    v.witness = r.witness;
    v.note = note;
    if (r.verdict == EqualResult::Unsampleable)
        v.note = note.empty() ? "domain could not be sampled" : note;
    verdicts.push_back(std::move(v));
}

void Report::add_verdict(const std::string& name, bool value, const std::string& note) {
    Verdict v;
    v.name = name;
    v.value = value;
    v.note = note;
    verdicts.push_back(std::move(v));
}

bool Report::all_true() const {
    for (const auto& v : verdicts)
        if (!v.value) return false;
    return true;
}

std::string Report::machine() const {
    std::ostringstream os;
    for (const auto& m : meta) os << "META " << m.key << " = " << m.value << "\n";
    for (const auto& r : results) os << "RESULT " << r.name << " = " << r.value << "\n";
    for (const auto& v : verdicts) {
        os << "VERDICT " << v.name << " " << (v.value ? "true" : "false");
        if (!v.value && v.witness && !v.witness->point.empty())
            os << " witness: " << witness_point(*v.witness);
        os << "\n";
    }
    return os.str();
}

std::string Report::human() const {
    std::ostringstream os;
    for (const auto& m : meta) os << m.key << ": " << m.value << "\n";
    if (!results.empty()) os << "\n";
    for (const auto& r : results) os << r.name << " = " << r.value << "\n";
    if (!verdicts.empty()) os << "\n";
    for (const auto& v : verdicts) {
        os << (v.value ? "  pass  " : "  FAIL  ") << v.name;
        if (!v.note.empty()) os << "  (" << v.note << ")";
        os << "\n";
        if (!v.value && v.witness) os << "        " << v.witness->str() << "\n";
    }
    if (!verdicts.empty())
        os << (all_true() ? "all checks passed" : "some checks FAILED") << "\n";
    return os.str();
}

}  // namespace jetgauge
