#include "hft/group.hpp"

#include <algorithm>
#include <sstream>

#include "hft/error.hpp"

namespace hft {

namespace {

std::string triple(int a, int b, int c) {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

}  // namespace

GroupTable GroupTable::from_table(const std::vector<std::vector<int>>& grid, std::vector<std::string> names) {
    const int n = static_cast<int>(grid.size());
    if (n == 0) throw Error("NotAGroup", "empty table");
    for (const auto& row : grid) {
        if (static_cast<int>(row.size()) != n) throw Error("NotAGroup", "table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw Error("NotAGroup", "entry out of range");
    }
    for (int i = 0; i < n; ++i) {
        std::vector<int> seen_row(n, -1), seen_col(n, -1);
        for (int j = 0; j < n; ++j) {
            int r = grid[i][j], c = grid[j][i];
            if (seen_row[r] >= 0) throw Error("NotAGroup", "Latin square fails in row " + std::to_string(i) +
                                                                " at witness " + triple(i, seen_row[r], j));
            if (seen_col[c] >= 0) throw Error("NotAGroup", "Latin square fails in column " + std::to_string(i) +
                                                                " at witness " + triple(seen_col[c], j, i));
            seen_row[r] = j;
            seen_col[c] = j;
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (grid[grid[a][b]][c] != grid[a][grid[b][c]])
                    throw Error("NotAGroup", "associativity fails at witness " + triple(a, b, c));
    int e = -1;
    for (int x = 0; x < n && e < 0; ++x) {
        bool ok = true;
        for (int y = 0; y < n && ok; ++y) ok = grid[x][y] == y && grid[y][x] == y;
        if (ok) e = x;
    }
    if (e < 0) throw Error("NotAGroup", "identity fails: no two-sided identity element");
    GroupTable g;
    g.n_ = n;
    g.e_ = e;
    g.table_ = grid;
    g.inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (grid[x][y] == e && grid[y][x] == e) g.inverse_[static_cast<std::size_t>(x)] = y;
        if (g.inverse_[static_cast<std::size_t>(x)] < 0)
            throw Error("NotAGroup", "inverse fails for element at witness " + triple(x, x, e));
    }
    if (names.empty()) {
        for (int x = 0; x < n; ++x) names.push_back(x == e ? "e" : "g" + std::to_string(x));
    }
    if (static_cast<int>(names.size()) != n) throw Error("NotAGroup", "name list has wrong length");
    g.names_ = std::move(names);
    return g;
}

GroupTable GroupTable::cyclic(int n) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(i == 0 ? "e" : (n == 2 ? "s" : "c" + std::to_string(i)));
    return from_table(t, names);
}

GroupTable GroupTable::product(const GroupTable& a, const GroupTable& b) {
    const int n = a.order() * b.order();
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<std::string> names(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int ia = i / b.order(), ib = i % b.order();
        bool ea = ia == a.identity(), eb = ib == b.identity();
        names[i] = ea && eb ? "e" : (ea ? "" : a.name(ia)) + (ea || eb ? "" : "*") + (eb ? "" : b.name(ib));
        for (int j = 0; j < n; ++j) {
            int ja = j / b.order(), jb = j % b.order();
            t[i][j] = a.mul(ia, ja) * b.order() + b.mul(ib, jb);
        }
    }
    // Disambiguate names when the factors reuse the same labels.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (names[i] == names[j]) names[j] += "'";
    return from_table(t, names);
}

GroupTable GroupTable::symmetric3() {
    // Elements as images of (0,1,2); composition (p*q)(x) = p(q(x)).
    std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::string> names = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::vector<int> c(3);
            for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
            t[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return from_table(t, names);
}

bool GroupTable::is_involutory() const {
    for (int g = 0; g < n_; ++g)
        if (mul(g, g) != e_) return false;
    return true;
}

bool GroupTable::is_abelian() const {
    for (int g = 0; g < n_; ++g)
        for (int h = 0; h < n_; ++h)
            if (mul(g, h) != mul(h, g)) return false;
    return true;
}

int GroupTable::lookup(const std::string& s) const {
    for (int g = 0; g < n_; ++g)
        if (names_[static_cast<std::size_t>(g)] == s) return g;
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        int v = std::stoi(s);
        if (v < n_) return v;
    }
    throw Error("UnknownElement", "no group element named '" + s + "'");
}

nlohmann::json GroupTable::to_json() const {
    return nlohmann::json{{"order", n_}, {"table", table_}, {"names", names_}};
}

GroupTable GroupTable::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("table")) throw Error("Schema", "group needs a \"table\"");
    auto grid = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(grid.size()))
        throw Error("Schema", "group \"order\" disagrees with table size");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return from_table(grid, names);
}

}  // namespace hft
