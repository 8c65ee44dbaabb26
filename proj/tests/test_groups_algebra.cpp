#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "hft/error.hpp"

using namespace hft;

namespace {

std::string kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

}  // namespace

TEST_CASE("cyclic and product groups satisfy the axioms by construction") {
    for (int n = 1; n <= 6; ++n) {
        auto g = GroupTable::cyclic(n);
        CHECK(g.order() == n);
        CHECK(g.is_abelian());
        for (int a = 0; a < n; ++a) CHECK(g.mul(a, g.inv(a)) == g.identity());
    }
    auto v4 = fx::v4();
    CHECK(v4.order() == 4);
    CHECK(v4.is_involutory());
    CHECK(!GroupTable::cyclic(4).is_involutory());
}

TEST_CASE("S3 is nonabelian with nontrivial commutators") {
    auto s3 = GroupTable::symmetric3();
    CHECK(!s3.is_abelian());
    int nontrivial = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) nontrivial += s3.commutator(a, b) != s3.identity();
    CHECK(nontrivial > 0);
    // Transpositions square to e; 3-cycles have order 3.
    CHECK(s3.mul(s3.lookup("(01)"), s3.lookup("(01)")) == s3.identity());
    CHECK(s3.inv(s3.lookup("(012)")) == s3.lookup("(021)"));
}

TEST_CASE("bad tables are rejected") {
    CHECK(kind_of([] { GroupTable::from_table({{0, 1}, {1, 1}}, {}); }) == "NotAGroup");
    // Latin square without associativity (the loop of order 5 used in folklore).
    std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK(kind_of([&] { GroupTable::from_table(loop, {}); }) == "NotAGroup");
    CHECK(kind_of([] { GroupTable::cyclic(3).lookup("nope"); }) == "UnknownElement");
}

TEST_CASE("group JSON round trip") {
    auto s3 = GroupTable::symmetric3();
    auto back = GroupTable::from_json(s3.to_json());
    CHECK(back == s3);
    CHECK(back.names() == s3.names());
}

TEST_CASE("group algebras and matrix models are strongly graded") {
    auto s3 = GroupTable::symmetric3();
    CHECK(is_strongly_graded(group_algebra(s3)).strongly_graded);
    auto z2 = fx::z2();
    CHECK(is_strongly_graded(matrix_model(z2, fx::small_model_spec())).strongly_graded);
    auto v4 = fx::v4();
    CHECK(is_strongly_graded(matrix_model(v4, fx::klein_twisted_spec(v4))).strongly_graded);
    CHECK(is_strongly_graded(matrix_model(z2, fx::swap_model_spec())).strongly_graded);
}

TEST_CASE("a zero odd component is not strongly graded") {
    auto z2 = fx::z2();
    Matrix ee(1, 1);
    ee(0, 0) = Scalar(1);
    std::vector<std::vector<Matrix>> mult = {{ee, Matrix(0, 0)}, {Matrix(0, 0), Matrix(1, 0)}};
    auto a = GradedAlgebra::build(z2, {1, 0}, mult, {Scalar(1)});
    auto sg = is_strongly_graded(a);
    CHECK(!sg.strongly_graded);
    REQUIRE(sg.failing_pair.has_value());
}

TEST_CASE("twisted cocycle failures and Stab violations are reported") {
    auto v4 = fx::v4();
    auto spec = fx::klein_twisted_spec(v4);
    spec.tau[1][2][0] = Scalar(5);
    CHECK(kind_of([&] { check_model_data(v4, spec); }) == "CocycleInvalid");
    auto z2 = fx::z2();
    auto sw = fx::swap_model_spec();
    sw.r = {Scalar(1), Scalar(2)};
    CHECK(kind_of([&] { check_model_data(z2, sw); }) == "StabViolated");
    sw = fx::swap_model_spec();
    sw.sigma = {{1, 0}, {0, 1}};  // identity goes to a transposition
    CHECK(!kind_of([&] { check_model_data(z2, sw); }).empty());
}

TEST_CASE("corrupting a structure constant breaks associativity") {
    auto a = matrix_model(fx::z2(), fx::small_model_spec());
    auto j = a.to_json();
    auto back = GradedAlgebra::from_json(fx::z2(), j);
    CHECK(back == a);
    // Scaling all odd-odd products is a cocycle twist and stays associative;
    // killing a single odd-odd structure constant does not.
    std::vector<std::vector<Matrix>> mult(2, std::vector<Matrix>(2));
    for (int g = 0; g < 2; ++g)
        for (int h = 0; h < 2; ++h) mult[g][h] = a.mult(g, h);
    mult[1][1] = mult[1][1].scaled(Scalar(2));
    CHECK(kind_of([&] { GradedAlgebra::build(fx::z2(), a.dims(), mult, a.unit()); }).empty());
    bool killed = false;
    // The last nonzero entry sits in the 2x2 block, where a single product can fail alone.
    for (std::size_t i = mult[1][1].rows(); i-- > 0 && !killed;)
        for (std::size_t j = mult[1][1].cols(); j-- > 0 && !killed;)
            if (!mult[1][1](i, j).is_zero()) {
                mult[1][1](i, j) = Scalar(0);
                killed = true;
            }
    CHECK(kind_of([&] { GradedAlgebra::build(fx::z2(), a.dims(), mult, a.unit()); }) == "NotAssociative");
}

TEST_CASE("unit failures are detected") {
    auto a = group_algebra(fx::z2());
    std::vector<std::vector<Matrix>> mult = {{a.mult(0, 0), a.mult(0, 1)}, {a.mult(1, 0), a.mult(1, 1)}};
    CHECK(kind_of([&] { GradedAlgebra::build(fx::z2(), a.dims(), mult, {Scalar(2)}); }) == "UnitFails");
}

TEST_CASE("opposite is an involution") {
    auto s3 = GroupTable::symmetric3();
    auto a = group_algebra(s3);
    CHECK(opposite(opposite(a)) == a);
    auto v4 = fx::v4();
    auto m = matrix_model(v4, fx::klein_twisted_spec(v4));
    CHECK(opposite(opposite(m)) == m);
    // For the twisted model the opposite differs from the original.
    CHECK(!(opposite(m) == m));
}

TEST_CASE("matrix model multiplication follows the block rule") {
    auto z2 = fx::z2();
    auto spec = fx::small_model_spec();
    auto a = matrix_model(z2, spec);
    CHECK(a.dim(0) == 5);
    CHECK(a.dim(1) == 5);
    // l_s E_{01} in block 1 times l_s E_{10} in block 1 = l_e E_{00} in block 1.
    Vec x = unit_vec(5, matrix_model_index(z2, spec, 1, 1, 0, 1));
    Vec y = unit_vec(5, matrix_model_index(z2, spec, 1, 1, 1, 0));
    CHECK(a.mul(1, x, 1, y) == unit_vec(5, matrix_model_index(z2, spec, 0, 1, 0, 0)));
}

TEST_CASE("random elements multiply associatively in the twisted model") {
    auto v4 = fx::v4();
    auto a = matrix_model(v4, fx::klein_twisted_spec(v4));
    for (int it = 0; it < 20; ++it) {
        Elem x = a.zero_elem(), y = a.zero_elem(), z = a.zero_elem();
        for (int g = 0; g < 4; ++g)
            for (std::size_t i = 0; i < a.dim(g); ++i) {
                x[g][i] = gen::rational(3);
                y[g][i] = gen::rational(3);
                z[g][i] = gen::rational(3);
            }
        CHECK(a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z)));
        CHECK(a.mul(a.unit_elem(), x) == x);
    }
}
