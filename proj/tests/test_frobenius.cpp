#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "hft/error.hpp"

using namespace hft;

namespace {

Vec random_vec(std::size_t n) {
    Vec v(n);
    for (auto& s : v) s = gen::rational(4);
    return v;
}

// Applies an invertible change of basis P_g on every component and returns the
// transported algebra: new structure constants P_gh^-1 m (P_g (x) P_h).
GradedAlgebra rebase(const GradedAlgebra& a, const std::vector<Matrix>& p) {
    const auto& G = a.group();
    std::vector<std::vector<Matrix>> mult(G.order(), std::vector<Matrix>(G.order()));
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h)
            mult[g][h] = *inverse(p[G.mul(g, h)]) * a.mult(g, h) * kron(p[g], p[h]);
    return GradedAlgebra::build(G, a.dims(), mult, *inverse(p[G.identity()]) * a.unit());
}

}  // namespace

TEST_CASE("group algebra of Z/2: copairing at s is s (x) s and z = 1") {
    auto f = fx::group_package(fx::z2());
    CHECK(f.copairing(1) == Vec{Scalar(1)});
    REQUIRE(f.z);
    CHECK(*f.z == Vec{Scalar(1)});
    CHECK(coproduct(f, 1, 1, Vec{Scalar(1)}) == Vec{Scalar(1)});
}

TEST_CASE("zero trace is degenerate, a non-trace functional is not symmetric") {
    auto a = group_algebra(fx::z2());
    try {
        make_frobenius(a, Vec{Scalar(0)});
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(std::string(e.kind()) == "Degenerate");
    }
    MatrixModelSpec s;
    s.blocks = {2};
    auto m = matrix_model(GroupTable::cyclic(1), s);
    Vec tr(4, Scalar(0));
    tr[0] = Scalar(1);
    tr[1] = Scalar(1);  // picks up the off-diagonal entry E_01
    try {
        make_frobenius(m, tr);
        FAIL("expected NotSymmetric");
    } catch (const Error& e) {
        CHECK(std::string(e.kind()) == "NotSymmetric");
    }
}

TEST_CASE("matrix model dual bases are blockwise scaled transposed units") {
    auto z2 = fx::z2();
    auto spec = fx::small_model_spec();
    auto f = fx::model_package(z2, spec);
    // Oracle: q for l_g E_ab in block i is l_{g^-1} E_ba / (r_i k_i).
    for (int g = 0; g < 2; ++g)
        for (std::size_t b = 0; b < 2; ++b) {
            const std::size_t k = spec.blocks[b];
            const Scalar w = spec.r[b] * Scalar(static_cast<long>(k));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) {
                    Vec expect = unit_vec(5, matrix_model_index(z2, spec, g, b, c, r));
                    expect = vscale(expect, w.inverse());
                    CHECK(f.q(g, matrix_model_index(z2, spec, g, b, r, c)) == expect);
                }
        }
    REQUIRE(f.z);
    Vec zexp(5, Scalar(0));
    zexp[matrix_model_index(z2, spec, 0, 0, 0, 0)] = Scalar(1);
    zexp[matrix_model_index(z2, spec, 0, 1, 0, 0)] = Scalar(3);
    zexp[matrix_model_index(z2, spec, 0, 1, 1, 1)] = Scalar(3);
    CHECK(*f.z == zexp);
    CHECK(find_central_z(f).unique());
}

TEST_CASE("single block model recovers z = r I") {
    MatrixModelSpec s;
    s.blocks = {3};
    s.r = {Scalar(5)};
    auto f = fx::model_package(fx::z2(), s);
    REQUIRE(f.z);
    for (std::size_t i = 0; i < 9; ++i) CHECK((*f.z)[i] == (i % 4 == 0 ? Scalar(5) : Scalar(0)));
}

TEST_CASE("dual numbers have no z and fail quasi-biangularity") {
    auto f = make_frobenius(fx::dual_numbers(), Vec{Scalar(0), Scalar(1)});
    auto c = find_central_z(f);
    CHECK(!c.z);
    auto rep = is_quasi_biangular(f);
    CHECK(!rep.pass());
    CHECK(rep.find("frobenius")->pass);
    CHECK(!rep.find("z")->pass);
    CHECK(!rep.find("separability")->pass);
}

TEST_CASE("quasi-biangular reports pass on every fixture") {
    auto v4 = fx::v4();
    std::vector<FrobeniusPackage> all = {
        fx::group_package(GroupTable::symmetric3()), fx::model_package(fx::z2(), fx::small_model_spec()),
        fx::model_package(v4, fx::klein_twisted_spec(v4)), fx::model_package(fx::z2(), fx::swap_model_spec())};
    for (const auto& f : all) {
        auto rep = is_quasi_biangular(f);
        CHECK_MESSAGE(rep.pass(), rep.to_json().dump());
        // z times sum_i p_i^e q_i^e is the unit, and the same holds for every degree.
        const int e = f.group().identity();
        CHECK(f.algebra.mul(e, *f.z, e, z_inverse(f)) == f.algebra.unit());
        for (int g = 0; g < f.group().order(); ++g)
            CHECK(f.sandwich(g, e, f.algebra.unit()) == z_inverse(f));
    }
}

TEST_CASE("copairing is symmetric under swapping degrees") {
    auto v4 = fx::v4();
    auto f = fx::model_package(v4, fx::klein_twisted_spec(v4));
    for (int g = 0; g < 4; ++g) {
        const int gi = v4.inv(g);
        Matrix flip = swap_matrix(f.algebra.dim(g), f.algebra.dim(gi));
        CHECK(flip * f.copairing(g) == f.copairing(gi));
    }
}

TEST_CASE("saddle element commutes with A_e") {
    auto f = fx::model_package(fx::z2(), fx::small_model_spec());
    const std::size_t de = f.algebra.dim(0);
    const Vec& s = f.copairing(0);
    for (std::size_t a = 0; a < de; ++a) {
        Vec av = unit_vec(de, a);
        Vec left = kron(f.algebra.left_mul(0, av, 0), Matrix::identity(de)) * s;
        Vec right = kron(Matrix::identity(de), f.algebra.right_mul(0, av, 0)) * s;
        CHECK(left == right);
    }
}

TEST_CASE("inner-product elements do not depend on the chosen basis") {
    auto v4 = fx::v4();
    auto spec = fx::klein_twisted_spec(v4);
    auto a = matrix_model(v4, spec);
    auto tr = matrix_model_trace(v4, spec);
    auto f = make_frobenius(a, tr);
    for (int it = 0; it < 3; ++it) {
        std::vector<Matrix> p;
        for (int g = 0; g < 4; ++g) {
            Matrix m;
            do m = gen::matrix(a.dim(g), a.dim(g), 3, 0.4);
            while (rank(m) != a.dim(g));
            p.push_back(m);
        }
        auto b = rebase(a, p);
        auto fb = make_frobenius(b, p[v4.identity()].transpose() * tr);
        for (int g = 0; g < 4; ++g)
            CHECK(kron(p[g], p[v4.inv(g)]) * fb.copairing(g) == f.copairing(g));
    }
}

TEST_CASE("shift identity holds for random b and z'") {
    auto v4 = fx::v4();
    std::vector<FrobeniusPackage> all = {fx::model_package(v4, fx::klein_twisted_spec(v4)),
                                         fx::group_package(GroupTable::symmetric3()),
                                         fx::model_package(fx::z2(), fx::swap_model_spec())};
    for (const auto& f : all) {
        const auto& G = f.group();
        for (int g = 0; g < G.order(); ++g)
            for (int h = 0; h < G.order(); ++h) {
                Vec b = random_vec(f.algebra.dim(G.inv(g)));
                Vec zp = random_vec(f.algebra.dim(G.identity()));
                CHECK(shift_identity_check(f, g, h, b, zp));
            }
    }
    auto f = fx::group_package(fx::z2());
    CHECK(shift_identity_check(f, 1, 1, Vec{Scalar(1)}, Vec{Scalar(1)}));
    CHECK_THROWS_AS(shift_identity_check(f, 1, 1, Vec{}, Vec{Scalar(1)}), Error);
}

TEST_CASE("coproduct satisfies its defining equation and the saddle form") {
    auto v4 = fx::v4();
    auto f = fx::model_package(v4, fx::klein_twisted_spec(v4));
    const int e = v4.identity();
    CHECK(coproduct(f, e, e, f.algebra.unit()) == f.copairing(e));
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h) {
            Matrix d = coproduct_matrix(f, g, h);
            // Contracting the right factor against A_{h^-1} recovers multiplication.
            for (std::size_t k = 0; k < f.algebra.dim(v4.mul(g, h)); ++k)
                for (std::size_t w = 0; w < f.algebra.dim(v4.inv(h)); ++w) {
                    Vec wv = unit_vec(f.algebra.dim(v4.inv(h)), w);
                    Vec t = d.col(k);
                    Vec lhs = zero_vec(f.algebra.dim(g));
                    for (std::size_t a = 0; a < f.algebra.dim(g); ++a)
                        for (std::size_t c = 0; c < f.algebra.dim(h); ++c)
                            lhs[a] += t[a * f.algebra.dim(h) + c] *
                                      f.eta(h, unit_vec(f.algebra.dim(h), c), v4.inv(h), wv);
                    CHECK(lhs == f.algebra.mul(v4.mul(g, h), unit_vec(f.algebra.dim(v4.mul(g, h)), k), v4.inv(h), wv));
                }
        }
    CHECK_THROWS_AS(coproduct(f, 1, 1, Vec{Scalar(1)}), Error);
}
