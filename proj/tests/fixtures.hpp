#pragma once

// Small algebras shared by several test files.

#include "hft/algebra.hpp"
#include "hft/bimodule.hpp"
#include "hft/frobenius.hpp"

namespace fx {

using hft::GroupTable;
using hft::MatrixModelSpec;
using hft::Scalar;

// Two blocks of sizes 1 and 2 with weights 1 and 3 over Z/2, no twist.
inline MatrixModelSpec small_model_spec() {
    MatrixModelSpec s;
    s.blocks = {1, 2};
    s.r = {Scalar(1), Scalar(3)};
    return s;
}

// Z/2 x Z/2 with the bicharacter cocycle (-1)^{g_1 h_2} on a single 2x2 block.
inline MatrixModelSpec klein_twisted_spec(const GroupTable& v4) {
    MatrixModelSpec s;
    s.blocks = {2};
    s.r = {Scalar(1)};
    const int n = v4.order();
    s.tau.assign(static_cast<std::size_t>(n), std::vector<std::vector<Scalar>>(static_cast<std::size_t>(n)));
    // product() orders elements as a*|b| + b, so index bits are (first, second).
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const int g1 = g / 2, h2 = h % 2;
            s.tau[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = {Scalar((g1 * h2) % 2 ? -1 : 1)};
        }
    return s;
}

// Z/2 acting on two 1x1 blocks of equal weight by swapping them.
inline MatrixModelSpec swap_model_spec() {
    MatrixModelSpec s;
    s.blocks = {1, 1};
    s.r = {Scalar(2), Scalar(2)};
    s.sigma = {{0, 1}, {1, 0}};
    return s;
}

inline GroupTable z2() { return GroupTable::cyclic(2); }
inline GroupTable v4() { return GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2)); }

inline hft::FrobeniusPackage model_package(const GroupTable& g, const MatrixModelSpec& s) {
    auto f = hft::make_frobenius(hft::matrix_model(g, s), hft::matrix_model_trace(g, s));
    hft::attach_z(f);
    return f;
}

inline hft::FrobeniusPackage group_package(const GroupTable& g) {
    auto a = hft::group_algebra(g);
    hft::Vec tr{Scalar(1)};
    auto f = hft::make_frobenius(a, tr);
    hft::attach_z(f);
    return f;
}

// k[x]/(x^2) over the trivial group.
inline hft::GradedAlgebra dual_numbers() {
    hft::Matrix m(2, 4);
    m(0, 0) = Scalar(1);  // 1*1
    m(1, 1) = Scalar(1);  // 1*x
    m(1, 2) = Scalar(1);  // x*1
    return hft::GradedAlgebra::build(GroupTable::cyclic(1), {2}, {{m}}, {Scalar(1), Scalar(0)});
}

struct ColumnRow {
    hft::GradedAlgebra k, l;
    MatrixModelSpec spec;
    hft::MoritaContext ctx;
};

// k[G] and M_2 (x) k[G] related by column vectors U and row vectors V.
inline ColumnRow column_row(const GroupTable& G, Scalar mu_scale = Scalar(1)) {
    MatrixModelSpec spec;
    spec.blocks = {2};
    auto k = hft::group_algebra(G);
    auto l = hft::matrix_model(G, spec);
    const int n = G.order();
    auto idx = [&](int g, std::size_t a, std::size_t b) { return hft::matrix_model_index(G, spec, g, 0, a, b); };
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::vector<hft::Matrix>> ula(un), ura(un), vla(un), vra(un), mu(un), nu(un);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            hft::Matrix la(2, 8), ra(2, 2), vl(2, 2), vr(2, 8), m(4, 4), v(1, 4);
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    la(a, idx(g, a, b) * 2 + b) = Scalar(1);  // E_ab c_b = c_a
                    vr(b, a * 4 + idx(h, a, b)) = Scalar(1);  // r_a E_ab = r_b
                    m(idx(G.mul(g, h), a, b), a * 2 + b) = mu_scale;
                }
            for (std::size_t a = 0; a < 2; ++a) {
                ra(a, a) = Scalar(1);
                vl(a, a) = Scalar(1);
                v(0, a * 2 + a) = Scalar(1);
            }
            ula[static_cast<std::size_t>(g)].push_back(la);
            ura[static_cast<std::size_t>(g)].push_back(ra);
            vla[static_cast<std::size_t>(g)].push_back(vl);
            vra[static_cast<std::size_t>(g)].push_back(vr);
            mu[static_cast<std::size_t>(g)].push_back(m);
            nu[static_cast<std::size_t>(g)].push_back(v);
        }
    auto u = hft::GradedBimodule::build(l, k, std::vector<std::size_t>(un, 2), ula, ura);
    auto vv = hft::GradedBimodule::build(k, l, std::vector<std::size_t>(un, 2), vla, vra);
    return {k, l, spec, hft::make_context(u, vv, mu, nu)};
}

}  // namespace fx
