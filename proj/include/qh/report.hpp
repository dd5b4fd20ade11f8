#pragma once

#include <string>
#include <vector>

namespace qh {

/// One verified identity: deterministic name, outcome, and a witness for
/// failures (first differing coefficient index plus both values). Advisory
/// entries are informational and never fail a suite.
struct CheckEntry {
    std::string name;
    bool pass = true;
    bool advisory = false;
    std::string witness;
};

class Report {
public:
    void add(const std::string& name, bool pass, const std::string& witness = "") {
        entries_.push_back({name, pass, false, witness});
    }
    void info(const std::string& name, const std::string& note) {
        entries_.push_back({name, true, true, note});
    }
    void merge(const Report& other, const std::string& prefix = "") {
        for (const auto& e : other.entries_) {
            CheckEntry c = e;
            if (!prefix.empty()) c.name = prefix + "/" + c.name;
            entries_.push_back(std::move(c));
        }
    }

    bool ok() const {
        for (const auto& e : entries_)
            if (!e.advisory && !e.pass) return false;
        return true;
    }

    const CheckEntry* first_failure() const {
        for (const auto& e : entries_)
            if (!e.advisory && !e.pass) return &e;
        return nullptr;
    }

    const std::vector<CheckEntry>& entries() const { return entries_; }

    std::string text() const;

private:
    std::vector<CheckEntry> entries_;
};

}  // namespace qh
