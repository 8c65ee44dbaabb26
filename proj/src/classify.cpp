#include "hft/classify.hpp"

#include <algorithm>
#include <numeric>

#include "hft/error.hpp"
#include "hft/frobenius.hpp"

namespace hft {

namespace {

using Table = std::vector<std::vector<std::vector<int>>>;

std::size_t sz(int g) { return static_cast<std::size_t>(g); }

int mod(long x, int m) { return static_cast<int>(((x % m) + m) % m); }

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[sz(p[i])] = static_cast<int>(i);
    return q;
}

std::vector<std::vector<int>> all_perms(std::size_t n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Advances digits (last fastest) with each digit in [0, base); false after wrapping.
bool odometer(std::vector<int>& d, int base) {
    for (std::size_t i = d.size(); i-- > 0;) {
        if (++d[i] < base) return true;
        d[i] = 0;
    }
    return false;
}

std::size_t power(std::size_t b, std::size_t e, std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b) return cap + 1;
        r *= b;
    }
    return r;
}

bool is_cocycle(const GroupTable& G, const std::vector<std::vector<int>>& sigma, const Table& tau, int m) {
    const std::size_t n = sigma.empty() ? 0 : sigma[0].size();
    for (int g = 0; g < G.order(); ++g) {
        auto sinv = inverse_perm(sigma[sz(g)]);
        for (int h = 0; h < G.order(); ++h)
            for (int l = 0; l < G.order(); ++l)
                for (std::size_t i = 0; i < n; ++i) {
                    long lhs = tau[sz(g)][sz(h)][i] + tau[sz(G.mul(g, h))][sz(l)][i];
                    long rhs = tau[sz(h)][sz(l)][sz(sinv[i])] + tau[sz(g)][sz(G.mul(h, l))][i];
                    if (mod(lhs - rhs, m) != 0) return false;
                }
    }
    return true;
}

// (d phi)(g, h)_i = phi(h)_{sigma_g^-1 i} + phi(g)_i - phi(gh)_i, in exponents.
Table coboundary(const GroupTable& G, const std::vector<std::vector<int>>& sigma,
                 const std::vector<std::vector<int>>& phi, int m) {
    const std::size_t N = sz(G.order()), n = phi[0].size();
    Table d(N, std::vector<std::vector<int>>(N, std::vector<int>(n)));
    for (int g = 0; g < G.order(); ++g) {
        auto sinv = inverse_perm(sigma[sz(g)]);
        for (int h = 0; h < G.order(); ++h)
            for (std::size_t i = 0; i < n; ++i)
                d[sz(g)][sz(h)][i] =
                    mod(phi[sz(h)][sz(sinv[i])] + phi[sz(g)][i] - phi[sz(G.mul(g, h))][i], m);
    }
    return d;
}

}  // namespace

ModelData normalized(const ModelData& in) {
    ModelData m = in;
    const std::size_t N = sz(m.group.order()), n = m.n();
    if (m.tau.empty()) m.tau.assign(N, std::vector<std::vector<int>>(N, std::vector<int>(n, 0)));
    if (m.sigma.empty()) {
        std::vector<int> id(n);
        std::iota(id.begin(), id.end(), 0);
        m.sigma.assign(N, id);
    }
    if (m.r.empty()) m.r.assign(n, Scalar(1));
    for (auto& row : m.tau)
        for (auto& cell : row)
            for (auto& x : cell) x = mod(x, std::max(m.value_group_m, 1));
    return m;
}

MatrixModelSpec to_spec(const ModelData& in) {
    ModelData m = normalized(in);
    MatrixModelSpec s;
    s.blocks = m.blocks;
    s.sigma = m.sigma;
    s.r = m.r;
    s.tau.resize(m.tau.size());
    for (std::size_t g = 0; g < m.tau.size(); ++g)
        for (const auto& cell : m.tau[g]) {
            std::vector<Scalar> v;
            for (int x : cell) v.push_back(Scalar::zeta(m.value_group_m, x));
            s.tau[g].push_back(std::move(v));
        }
    return s;
}

Report validate_model(const ModelData& in) {
    Report rep;
    const auto& G = in.group;
    const std::size_t N = sz(G.order()), n = in.n();
    std::string w;
    if (n == 0) w = "at least one block required";
    for (auto k : in.blocks)
        if (k == 0) w = "block sizes must be positive";
    if (in.value_group_m < 1) w = "value group order must be positive";
    if (!in.tau.empty()) {
        if (in.tau.size() != N) w = "tau has the wrong shape";
        for (const auto& row : in.tau) {
            if (row.size() != N) w = "tau has the wrong shape";
            for (const auto& cell : row)
                if (cell.size() != n) w = "tau has the wrong shape";
        }
    }
    if (!in.sigma.empty()) {
        if (in.sigma.size() != N) w = "sigma has the wrong shape";
        for (const auto& p : in.sigma) {
            auto q = p;
            std::sort(q.begin(), q.end());
            std::vector<int> id(n);
            std::iota(id.begin(), id.end(), 0);
            if (q != id) w = "sigma value is not a permutation of the blocks";
        }
    }
    if (!in.r.empty() && in.r.size() != n) w = "r has the wrong length";
    for (const auto& x : in.r)
        if (x.is_zero()) w = "r entries must be invertible";
    rep.add("Schema", w.empty(), w);
    if (!w.empty()) return rep;

    ModelData m = normalized(in);
    const int e = G.identity();

    w.clear();
    for (int g = 0; g < G.order() && w.empty(); ++g)
        for (int h = 0; h < G.order() && w.empty(); ++h)
            if (m.sigma[sz(G.mul(g, h))] != [&] {
                    std::vector<int> c(n);
                    for (std::size_t i = 0; i < n; ++i) c[i] = m.sigma[sz(g)][sz(m.sigma[sz(h)][i])];
                    return c;
                }())
                w = "sigma(" + G.name(g) + G.name(h) + ") != sigma(" + G.name(g) + ")sigma(" + G.name(h) + ")";
    rep.add("NotAHomomorphism", w.empty(), w);

    w.clear();
    for (int g = 0; g < G.order() && w.empty(); ++g)
        for (std::size_t i = 0; i < n && w.empty(); ++i) {
            auto j = sz(m.sigma[sz(g)][i]);
            if (m.r[j] != m.r[i]) w = "sigma(" + G.name(g) + ") moves r";
            else if (m.blocks[j] != m.blocks[i]) w = "sigma(" + G.name(g) + ") moves block sizes";
        }
    rep.add("StabViolated", w.empty(), w);

    w.clear();
    for (int g = 0; g < G.order() && w.empty(); ++g)
        for (std::size_t i = 0; i < n; ++i)
            if (m.tau[sz(e)][sz(g)][i] != 0 || m.tau[sz(g)][sz(e)][i] != 0) {
                w = "tau is not normalized at " + G.name(g);
                break;
            }
    if (w.empty() && !is_cocycle(G, m.sigma, m.tau, m.value_group_m)) w = "cocycle identity fails";
    rep.add("CocycleInvalid", w.empty(), w);
    return rep;
}

std::optional<EquivalenceWitness> are_equivalent(const ModelData& a_in, const ModelData& b_in, std::size_t budget) {
    if (a_in.value_group_m != b_in.value_group_m)
        throw Error("ValueGroupMismatch", "models use mu_" + std::to_string(a_in.value_group_m) + " and mu_" +
                                              std::to_string(b_in.value_group_m));
    if (!(a_in.group.table() == b_in.group.table())) throw Error("ModelMismatch", "models live over different groups");
    if (a_in.n() != b_in.n()) throw Error("ModelMismatch", "models have different block counts");
    ModelData a = normalized(a_in), b = normalized(b_in);
    const auto& G = a.group;
    const std::size_t N = sz(G.order()), n = a.n();
    const int m = a.value_group_m;
    const std::size_t cochains = power(sz(m), n * (N - 1), budget);
    if (cochains > budget) throw Error("TooLarge", "coboundary search exceeds the budget");

    for (const auto& pi : all_perms(n)) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = b.blocks[sz(pi[i])] == a.blocks[i] && b.r[sz(pi[i])] == a.r[i];
        for (std::size_t g = 0; g < N && ok; ++g)
            for (std::size_t i = 0; i < n && ok; ++i) ok = b.sigma[g][sz(pi[i])] == pi[sz(a.sigma[g][i])];
        if (!ok) continue;

        // target difference: tau_b minus the transported tau_a
        Table diff(N, std::vector<std::vector<int>>(N, std::vector<int>(n)));
        for (std::size_t g = 0; g < N; ++g)
            for (std::size_t h = 0; h < N; ++h)
                for (std::size_t i = 0; i < n; ++i)
                    diff[g][h][sz(pi[i])] = mod(b.tau[g][h][sz(pi[i])] - a.tau[g][h][i], m);

        std::vector<int> digits(n * (N - 1), 0);
        do {
            std::vector<std::vector<int>> phi(N, std::vector<int>(n, 0));
            std::size_t k = 0;
            for (std::size_t g = 0; g < N; ++g) {
                if (static_cast<int>(g) == G.identity()) continue;
                for (std::size_t i = 0; i < n; ++i) phi[g][i] = digits[k++];
            }
            if (coboundary(G, b.sigma, phi, m) == diff) return EquivalenceWitness{pi, phi};
        } while (odometer(digits, m));
    }
    return std::nullopt;
}

std::vector<ModelData> enumerate_classes(const GroupTable& G, std::size_t n, int m, std::vector<std::vector<Scalar>> r_reps,
                                         std::vector<std::size_t> blocks, std::size_t budget) {
    if (n == 0) throw Error("Schema", "at least one block required");
    if (m < 1) throw Error("Schema", "value group order must be positive");
    if (blocks.empty()) blocks.assign(n, 1);
    if (blocks.size() != n) throw Error("Schema", "blocks has the wrong length");
    if (r_reps.empty()) r_reps.push_back(std::vector<Scalar>(n, Scalar(1)));
    const std::size_t N = sz(G.order());
    const int e = G.identity();

    const auto perms = all_perms(n);
    if (power(perms.size(), N, budget) > budget) throw Error("TooLarge", "homomorphism search exceeds the budget");
    const std::size_t free_cells = (N - 1) * (N - 1) * n;
    if (power(sz(m), free_cells, budget) > budget) throw Error("TooLarge", "cochain search exceeds the budget");

    std::vector<ModelData> out;
    for (const auto& r : r_reps) {
        if (r.size() != n) throw Error("Schema", "r has the wrong length");
        std::vector<std::vector<std::vector<int>>> homs;
        std::vector<int> pick(N, 0);
        do {
            std::vector<std::vector<int>> sigma;
            for (int x : pick) sigma.push_back(perms[sz(x)]);
            ModelData probe{G, blocks, m, {}, sigma, r};
            auto rep = validate_model(probe);
            const Check* hom = rep.find("NotAHomomorphism");
            const Check* stab = rep.find("StabViolated");
            if (hom && hom->pass && stab && stab->pass) homs.push_back(sigma);
        } while (odometer(pick, static_cast<int>(perms.size())));

        std::vector<ModelData> reps;
        for (const auto& sigma : homs) {
            std::vector<int> digits(free_cells, 0);
            do {
                Table tau(N, std::vector<std::vector<int>>(N, std::vector<int>(n, 0)));
                std::size_t k = 0;
                for (std::size_t g = 0; g < N; ++g)
                    for (std::size_t h = 0; h < N; ++h) {
                        if (static_cast<int>(g) == e || static_cast<int>(h) == e) continue;
                        for (std::size_t i = 0; i < n; ++i) tau[g][h][i] = digits[k++];
                    }
                if (!is_cocycle(G, sigma, tau, m)) continue;
                ModelData cand{G, blocks, m, tau, sigma, r};
                bool fresh = true;
                for (const auto& x : reps)
                    if (are_equivalent(x, cand, budget)) {
                        fresh = false;
                        break;
                    }
                if (fresh) reps.push_back(std::move(cand));
            } while (odometer(digits, m));
        }
        for (auto& x : reps) out.push_back(std::move(x));
    }
    return out;
}

std::vector<Monodromy> surface_battery(const GroupTable& G, int max_genus, std::size_t genus2_cap) {
    std::vector<Monodromy> out;
    out.push_back({});
    const int N = G.order(), e = G.identity();
    if (max_genus >= 1)
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                if (G.commutator(a, b) == e) out.push_back({{a, b}});
    if (max_genus >= 2) {
        std::size_t count = 0;
        for (int a1 = 0; a1 < N && count < genus2_cap; ++a1)
            for (int b1 = 0; b1 < N && count < genus2_cap; ++b1)
                for (int a2 = 0; a2 < N && count < genus2_cap; ++a2)
                    for (int b2 = 0; b2 < N && count < genus2_cap; ++b2)
                        if (G.mul(G.commutator(a1, b1), G.commutator(a2, b2)) == e) {
                            out.push_back({{a1, b1}, {a2, b2}});
                            ++count;
                        }
    }
    return out;
}

TheoryPackage model_theory(const ModelData& m) {
    auto spec = to_spec(m);
    auto f = make_frobenius(matrix_model(m.group, spec), matrix_model_trace(m.group, spec));
    attach_z(f);
    return standard_theory(f);
}

Report cross_validate(const ModelData& a, const ModelData& b, const std::vector<Monodromy>& battery) {
    Report rep;
    auto witness = are_equivalent(a, b);
    nlohmann::json eq = {{"equivalent", witness.has_value()}};
    if (witness) eq["witness"] = {{"perm", witness->perm}, {"cochain", witness->cochain}};
    rep.add("equivalence", true, {}, eq);

    auto ta = model_theory(a), tb = model_theory(b);
    std::size_t differing = 0;
    for (const auto& mono : battery) {
        Scalar va = surface_invariant(ta, mono), vb = surface_invariant(tb, mono);
        std::string label = "genus " + std::to_string(mono.size());
        for (auto [x, y] : mono) label += " " + a.group.name(x) + "," + a.group.name(y);
        const bool same = va == vb;
        differing += same ? 0 : 1;
        rep.add("surface " + label, same || !witness,
                same || !witness ? "" : "equivalent models differ: " + va.str() + " vs " + vb.str(),
                {{"values", {va.str(), vb.str()}}});
    }
    rep.add("separated", true, {}, {{"differing_surfaces", differing}, {"separated", differing > 0}});
    return rep;
}

nlohmann::json model_to_json(const ModelData& in) {
    ModelData m = normalized(in);
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : m.r) r.push_back(x.str());
    return {{"n", m.n()},   {"blocks", m.blocks}, {"value_group_m", m.value_group_m},
            {"tau", m.tau}, {"sigma", m.sigma},   {"r", r}};
}

ModelData model_from_json(const nlohmann::json& j, const GroupTable& g) {
    try {
        ModelData m;
        m.group = g;
        m.blocks = j.at("blocks").get<std::vector<std::size_t>>();
        if (j.contains("n") && j.at("n").get<std::size_t>() != m.blocks.size())
            throw Error("Schema", "n does not match the number of blocks");
        m.value_group_m = j.value("value_group_m", 2);
        if (j.contains("tau")) m.tau = j.at("tau").get<Table>();
        if (j.contains("sigma")) m.sigma = j.at("sigma").get<std::vector<std::vector<int>>>();
        if (j.contains("r"))
            for (const auto& x : j.at("r")) m.r.push_back(x.is_string() ? Scalar::parse(x.get<std::string>()) : Scalar(x.get<long>()));
        auto rep = validate_model(m);
        const Check* schema = rep.find("Schema");
        if (schema && !schema->pass) throw Error("Schema", schema->witness);
        return m;
    } catch (const nlohmann::json::exception& ex) {
        throw Error("Schema", std::string("model JSON: ") + ex.what());
    }
}

}  // namespace hft
