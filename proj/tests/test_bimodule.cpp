#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "hft/bimodule.hpp"
#include "hft/error.hpp"

using namespace hft;

namespace {

std::size_t sz(int g) { return static_cast<std::size_t>(g); }

}  // namespace

TEST_CASE("A tensor over A is A") {
    for (const auto& a : {group_algebra(GroupTable::symmetric3()), matrix_model(fx::z2(), fx::small_model_spec())}) {
        auto r = regular(a);
        auto t = tensor_over(r, r);
        CHECK(t.result.dims() == a.dims());
        // Multiplication induces the isomorphism, and sends 1 (x) 1 to 1.
        const auto& G = a.group();
        for (int g = 0; g < G.order(); ++g) {
            Matrix m = Matrix::zero(a.dim(g), t.raw_dim[sz(g)]);
            for (int h = 0; h < G.order(); ++h) m.put(0, t.offset[sz(g)][sz(h)], a.mult(h, G.mul(G.inv(h), g)));
            Matrix bar = m * t.section[sz(g)];
            CHECK(rank(bar) == a.dim(g));
            CHECK((m * t.balancing[sz(g)]).is_zero());
        }
        const int e = G.identity();
        Vec one_one = zero_vec(t.raw_dim[sz(e)]);
        one_one = vadd(one_one, [&] {
            Vec v = zero_vec(t.raw_dim[sz(e)]);
            Vec uu = tensor(a.unit(), a.unit());
            for (std::size_t i = 0; i < uu.size(); ++i) v[t.offset[sz(e)][sz(e)] + i] = uu[i];
            return v;
        }());
        Matrix m = Matrix::zero(a.dim(e), t.raw_dim[sz(e)]);
        for (int h = 0; h < G.order(); ++h) m.put(0, t.offset[sz(e)][sz(h)], a.mult(h, G.inv(h)));
        CHECK(m * one_one == a.unit());
    }
}

TEST_CASE("rows tensor columns over M2 is one-dimensional") {
    auto cr = fx::column_row(GroupTable::cyclic(1));
    auto t = tensor_over(cr.ctx.v, cr.ctx.u);
    CHECK(t.result.dim(0) == 1);
    auto t2 = tensor_over(cr.ctx.u, cr.ctx.v);
    CHECK(t2.result.dim(0) == 4);
}

TEST_CASE("relative tensor dimension is raw minus balancing rank") {
    auto v4 = fx::v4();
    auto a = matrix_model(v4, fx::klein_twisted_spec(v4));
    auto r = regular(a);
    auto t = tensor_over(r, r);
    for (int g = 0; g < 4; ++g) CHECK(t.result.dim(g) == t.raw_dim[sz(g)] - rank(t.balancing[sz(g)]));
}

TEST_CASE("strong grading: A_g over A_e times A_h is A_gh") {
    auto v4 = fx::v4();
    for (const auto& a : {matrix_model(v4, fx::klein_twisted_spec(v4)), matrix_model(fx::z2(), fx::swap_model_spec()),
                          group_algebra(GroupTable::symmetric3())}) {
        const auto& G = a.group();
        for (int g = 0; g < G.order(); ++g)
            for (int h = 0; h < G.order(); ++h) {
                auto t = tensor_over(component_bimodule(a, g), component_bimodule(a, h));
                CHECK(t.result.dim(0) == a.dim(G.mul(g, h)));
                CHECK(rank(a.mult(g, h) * t.section[0]) == a.dim(G.mul(g, h)));
            }
    }
}

TEST_CASE("induced maps") {
    auto f = fx::model_package(fx::z2(), fx::small_model_spec());
    const auto& a = f.algebra;
    auto r = regular(a);
    auto t = tensor_over(r, r);
    auto id = identity_map(r);
    auto ii = induced_map(t, t, id, id);
    for (int g = 0; g < 2; ++g) CHECK(ii.blocks[sz(g)] == Matrix::identity(t.result.dim(g)));

    GradedMap zl;
    for (int g = 0; g < 2; ++g) zl.blocks.push_back(a.left_mul(0, *f.z, g));
    CHECK(is_bimodule_map(r, r, zl));
    auto zi = induced_map(t, t, zl, id);
    for (int g = 0; g < 2; ++g) CHECK(zi.blocks[sz(g)] == t.result.right_matrix(g, 0, *f.z));

    GradedMap junk;
    for (int g = 0; g < 2; ++g) junk.blocks.push_back(gen::matrix(a.dim(g), a.dim(g), 3, 0.2));
    CHECK(!is_bimodule_map(r, r, junk));
    CHECK_THROWS_AS(induced_map(t, t, junk, id), Error);
}

TEST_CASE("identity and column/row contexts validate") {
    auto v4 = fx::v4();
    for (const auto& a : {group_algebra(GroupTable::symmetric3()), matrix_model(v4, fx::klein_twisted_spec(v4))}) {
        auto rep = validate_context(identity_context(a));
        CHECK_MESSAGE(rep.pass(), rep.to_json().dump());
    }
    for (const auto& G : {GroupTable::cyclic(1), fx::z2()}) {
        auto rep = validate_context(fx::column_row(G).ctx);
        CHECK_MESSAGE(rep.pass(), rep.to_json().dump());
    }
}

TEST_CASE("doubling mu breaks both zig-zags") {
    auto rep = validate_context(fx::column_row(fx::z2(), Scalar(2)).ctx);
    CHECK(!rep.find("zigzag-U")->pass);
    CHECK(!rep.find("zigzag-V")->pass);
    CHECK(rep.find("mu-balanced")->pass);
}

TEST_CASE("trace transfer") {
    auto a = matrix_model(fx::z2(), fx::small_model_spec());
    auto tr = matrix_model_trace(fx::z2(), fx::small_model_spec());
    CHECK(transfer_trace(identity_context(a), tr) == tr);

    auto cr = fx::column_row(GroupTable::cyclic(1));
    Vec pushed = transfer_trace(cr.ctx, Vec{Scalar(1)});
    CHECK(pushed == Vec{Scalar(1), Scalar(0), Scalar(0), Scalar(1)});
    auto back = reverse_context(cr.ctx);
    CHECK(validate_context(back).pass());
    CHECK(transfer_trace(back, pushed) == Vec{Scalar(1)});
    CHECK(transfer_trace(back, Vec{Scalar(3), Scalar(0), Scalar(0), Scalar(3)}) == Vec{Scalar(3)});
}

TEST_CASE("matrix models related by a coboundary twist are compatibly Morita equivalent") {
    auto v4 = fx::v4();
    MatrixModelSpec base;
    base.blocks = {1, 2};
    base.r = {Scalar(2), Scalar(1)};
    auto spec1 = base;
    spec1.tau = fx::klein_twisted_spec(v4).tau;
    for (auto& row : spec1.tau)
        for (auto& t : row) t = {t[0], t[0]};
    // phi(g)_i: an arbitrary normalized cochain with values in Q*.
    std::vector<std::vector<Scalar>> phi = {{1, 1}, {2, -1}, {Scalar(1, 3), 5}, {-2, Scalar(1, 2)}};
    auto spec2 = spec1;
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h)
            for (std::size_t i = 0; i < 2; ++i)
                spec2.tau[sz(g)][sz(h)][i] =
                    spec1.tau[sz(g)][sz(h)][i] * phi[sz(v4.mul(g, h))][i] * (phi[sz(g)][i] * phi[sz(h)][i]).inverse();
    auto k = matrix_model(v4, spec1);
    auto l = matrix_model(v4, spec2);
    std::vector<Matrix> f;
    for (int g = 0; g < 4; ++g) {
        Matrix d = Matrix::zero(k.dim(g), k.dim(g));
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t r = 0; r < base.blocks[b]; ++r)
                for (std::size_t c = 0; c < base.blocks[b]; ++c) {
                    std::size_t i = matrix_model_index(v4, spec1, g, b, r, c);
                    d(i, i) = phi[sz(g)][b];
                }
        f.push_back(d);
    }
    auto ctx = context_from_isomorphism(l, k, f);
    CHECK(validate_context(ctx).pass());
    auto fk = fx::model_package(v4, spec1);
    auto fl = fx::model_package(v4, spec2);
    auto rep = is_compatible(ctx, fk, fl);
    CHECK_MESSAGE(rep.pass(), rep.to_json().dump());

    auto doubled = make_frobenius(l, vscale(matrix_model_trace(v4, spec2), Scalar(2)));
    CHECK(!is_compatible(ctx, fk, doubled).pass());
}

TEST_CASE("equivalences of contexts") {
    auto cr = fx::column_row(fx::z2());
    const auto& c = cr.ctx;
    auto xi = identity_map(c.u), rho = identity_map(c.v);
    CHECK(equivalent_contexts(xi, rho, c, c));
    GradedMap xi3, rho3, xi2;
    for (int g = 0; g < 2; ++g) {
        xi3.blocks.push_back(Matrix::identity(2).scaled(Scalar(3)));
        rho3.blocks.push_back(Matrix::identity(2).scaled(Scalar(1, 3)));
        xi2.blocks.push_back(Matrix::identity(2).scaled(Scalar(2)));
    }
    CHECK(equivalent_contexts(xi3, rho3, c, c));
    CHECK(!equivalent_contexts(xi2, rho, c, c));
}

TEST_CASE("conjugation") {
    auto v4 = fx::v4();
    auto a = matrix_model(v4, fx::klein_twisted_spec(v4));
    auto r = regular(a);
    CHECK(conjugate(conjugate(r)) == r);
    auto cr = fx::column_row(fx::z2());
    CHECK(conjugate(conjugate(cr.ctx.u)) == cr.ctx.u);

    auto kg = group_algebra(v4);
    CHECK(conjugate(regular(kg)) == regular(kg));

    CHECK(validate_context(conjugate_context(identity_context(a))).pass());
    CHECK(validate_context(conjugate_context(cr.ctx)).pass());
}

TEST_CASE("bimodule JSON round trip and malformed actions") {
    auto cr = fx::column_row(fx::z2());
    auto j = cr.ctx.u.to_json();
    CHECK(GradedBimodule::from_json(cr.l, cr.k, j) == cr.ctx.u);
    auto bad = j;
    bad["left"].erase(0);
    CHECK_THROWS_AS(GradedBimodule::from_json(cr.l, cr.k, bad), Error);
}
