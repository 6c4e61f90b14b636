#pragma once

#include <string>
#include <vector>

namespace piconn {

// Outcome of one named check.  When a multilinear identity fails, the first
// violating basis-index tuple and the residual scalar are kept as a witness.
struct CheckResult {
    std::string name;
    bool passed = true;
    std::vector<int> witness_index;  // empty when passed or not index-based
    std::string residual;            // canonical form of the nonzero residual
    std::string detail;              // optional human-readable note

    static CheckResult ok(std::string check_name, std::string note = {}) {
        CheckResult r;
        r.name = std::move(check_name);
        r.detail = std::move(note);
        return r;
    }
    static CheckResult fail(std::string check_name, std::vector<int> index,
                            std::string residual_text, std::string note = {}) {
        CheckResult r;
        r.name = std::move(check_name);
        r.passed = false;
        r.witness_index = std::move(index);
        r.residual = std::move(residual_text);
        r.detail = std::move(note);
        return r;
    }
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void merge(const ValidationReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
};

}  // namespace piconn
