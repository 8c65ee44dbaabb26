#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "hft/error.hpp"
#include "hft/gcenter.hpp"

using namespace hft;

namespace {

std::vector<FrobeniusPackage> all_fixtures() {
    auto v4 = fx::v4();
    return {fx::group_package(fx::z2()), fx::group_package(GroupTable::symmetric3()),
            fx::model_package(fx::z2(), fx::small_model_spec()), fx::model_package(v4, fx::klein_twisted_spec(v4)),
            fx::model_package(fx::z2(), fx::swap_model_spec())};
}

}  // namespace

TEST_CASE("Psi is the identity on group algebras") {
    auto f = fx::group_package(GroupTable::symmetric3());
    for (int g = 0; g < 6; ++g) CHECK(psi(f, g, Vec{Scalar(7, 3)}) == Vec{Scalar(7, 3)});
}

TEST_CASE("Psi on the matrix model is the scaled blockwise trace") {
    auto z2 = fx::z2();
    auto spec = fx::small_model_spec();
    auto f = fx::model_package(z2, spec);
    for (int g = 0; g < 2; ++g) {
        Vec a(5);
        for (auto& s : a) s = gen::rational(5);
        Vec got = psi(f, g, a);
        // Oracle: block b becomes Tr(a_b) I / (r_b k_b).
        Vec expect(5, Scalar(0));
        for (std::size_t b = 0; b < 2; ++b) {
            const std::size_t k = spec.blocks[b];
            Scalar tr(0);
            for (std::size_t i = 0; i < k; ++i) tr += a[matrix_model_index(z2, spec, g, b, i, i)];
            Scalar v = tr * (spec.r[b] * Scalar(static_cast<long>(k))).inverse();
            for (std::size_t i = 0; i < k; ++i) expect[matrix_model_index(z2, spec, g, b, i, i)] = v;
        }
        CHECK(got == expect);
        // Psi squares to Psi z^-1, so the idempotent is x -> Psi(z x).
        CHECK(psi(f, g, f.algebra.mul(0, *f.z, g, got)) == got);
    }
}

TEST_CASE("Psi(z^2) = z and Psi(a) Psi(b) = Psi(a Psi(b) z^-1)") {
    for (const auto& f : all_fixtures()) {
        const auto& G = f.group();
        const int e = G.identity();
        const auto& A = f.algebra;
        CHECK(psi(f, e, A.mul(e, *f.z, e, *f.z)) == *f.z);
        Vec zinv = z_inverse(f);
        for (int g = 0; g < G.order(); ++g)
            for (int h = 0; h < G.order(); ++h) {
                Vec a(A.dim(g)), b(A.dim(h));
                for (auto& s : a) s = gen::rational(3);
                for (auto& s : b) s = gen::rational(3);
                const int gh = G.mul(g, h);
                Vec lhs = A.mul(gh, A.mul(g, psi(f, g, a), h, psi(f, h, b)), e, zinv);
                Vec rhs = psi(f, gh, A.mul(gh, A.mul(g, a, h, psi(f, h, b)), e, zinv));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("G-center dimensions") {
    auto c = g_center(fx::group_package(GroupTable::symmetric3()));
    for (int g = 0; g < 6; ++g) CHECK(c.dim(g) == 1);
    auto m = g_center(fx::model_package(fx::z2(), fx::small_model_spec()));
    CHECK(m.dim(0) == 2);
    CHECK(m.dim(1) == 2);
    auto sw = g_center(fx::model_package(fx::z2(), fx::swap_model_spec()));
    CHECK(sw.dim(0) == 2);
    // No element of the odd sector commutes with both block idempotents.
    CHECK(sw.dim(1) == 0);
}

TEST_CASE("abelian group algebras have trivial twists") {
    auto c = g_center(fx::group_package(fx::v4()));
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h) CHECK(c.phi[g][h] == Matrix::identity(1));
}

TEST_CASE("S3 twists permute conjugacy classes") {
    auto s3 = GroupTable::symmetric3();
    auto c = g_center(fx::group_package(s3));
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) CHECK(c.phi[g][h] == Matrix::identity(1));
    // Twisted traces on commuting pairs: all ones since every block is 1-dimensional.
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if (s3.commutator(a, b) == s3.identity()) CHECK(twisted_trace(c, a, b) == Scalar(1));
}

TEST_CASE("crossed axioms hold on every fixture") {
    for (const auto& f : all_fixtures()) {
        auto c = g_center(f);
        auto rep = verify_crossed(c);
        CHECK_MESSAGE(rep.pass(), rep.to_json().dump());
        auto l = center_frobenius(c);
        CHECK(is_quasi_biangular(l).find("frobenius")->pass);
    }
}

TEST_CASE("single block Z/2 model: Tr(phi_s on Z_e) = 1") {
    MatrixModelSpec s;
    s.blocks = {2};
    auto c = g_center(fx::model_package(fx::z2(), s));
    CHECK(verify_crossed(c).pass());
    CHECK(twisted_trace(c, 0, 1) == Scalar(1));
}

TEST_CASE("the swap model twist exchanges the block idempotents") {
    auto c = g_center(fx::model_package(fx::z2(), fx::swap_model_spec()));
    // phi_s exchanges the two central idempotents of Z_e.
    CHECK(twisted_trace(c, 0, 1) == Scalar(0));
    CHECK(twisted_trace(c, 0, 0) == Scalar(2));
}

TEST_CASE("doubling a twist breaks hom and invariance") {
    auto c = g_center(fx::group_package(fx::z2()));
    for (int h = 0; h < 2; ++h) c.phi[1][h] = c.phi[1][h].scaled(Scalar(2));
    auto rep = verify_crossed(c);
    CHECK(!rep.find("hom")->pass);
    CHECK(!rep.find("(iv)")->pass);
}

TEST_CASE("g_center refuses non quasi-biangular input") {
    auto f = make_frobenius(fx::dual_numbers(), Vec{Scalar(0), Scalar(1)});
    CHECK_THROWS_AS(g_center(f), Error);
}
