#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hft {

class GroupTable {
public:
    // Validates the Latin square property, associativity, identity and
    // inverses; throws Error("NotAGroup") naming the axiom and a witness.
    static GroupTable from_table(const std::vector<std::vector<int>>& grid,
                                 std::vector<std::string> names = {});

    static GroupTable cyclic(int n);
    static GroupTable product(const GroupTable& a, const GroupTable& b);
    static GroupTable symmetric3();

    int order() const { return n_; }
    int identity() const { return e_; }
    int mul(int g, int h) const { return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
    int inv(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
    int commutator(int g, int h) const { return mul(mul(g, h), mul(inv(g), inv(h))); }
    int conj(int c, int g) const { return mul(mul(c, g), inv(c)); }
    bool is_involutory() const;
    bool is_abelian() const;

    const std::vector<std::vector<int>>& table() const { return table_; }
    const std::string& name(int g) const { return names_[static_cast<std::size_t>(g)]; }
    const std::vector<std::string>& names() const { return names_; }
    // Resolves an element by name or decimal index; throws Error("UnknownElement").
    int lookup(const std::string& s) const;

    nlohmann::json to_json() const;
    static GroupTable from_json(const nlohmann::json& j);

    friend bool operator==(const GroupTable& a, const GroupTable& b) { return a.table_ == b.table_; }

private:
    int n_ = 0;
    int e_ = 0;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
};

}  // namespace hft
