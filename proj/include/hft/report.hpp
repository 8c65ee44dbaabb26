#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hft {

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;  // empty on success
    nlohmann::json detail;
};

// Ordered list of named pass/fail checks. Order is insertion order, which
// every producer keeps canonical so serialized reports are reproducible.
struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string witness = {}, nlohmann::json detail = nullptr) {
        checks.push_back({std::move(name), pass, std::move(witness), std::move(detail)});
    }
    void merge(const Report& other, const std::string& prefix = {}) {
        for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.witness, c.detail});
    }
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.pass ? 0 : 1;
        return n;
    }
    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j{{"name", c.name}, {"pass", c.pass}};
            if (!c.witness.empty()) j["witness"] = c.witness;
            if (!c.detail.is_null()) j["detail"] = c.detail;
            arr.push_back(std::move(j));
        }
        return {{"pass", pass()}, {"checks", arr}};
    }
};

}  // namespace hft
