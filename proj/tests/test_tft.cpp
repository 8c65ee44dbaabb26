#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "hft/error.hpp"
#include "hft/tft.hpp"

using namespace hft;

namespace {

std::string first_failures(const Report& r, std::size_t limit = 5) {
    std::string out;
    for (const auto& c : r.checks)
        if (!c.pass && limit > 0 && limit--) out += c.name + " " + c.detail.dump() + " " + c.witness + "\n";
    return out;
}

// One random slice over A strands; returns its text and the output signature.
std::pair<std::string, Signature> random_slice(const GroupTable& G, const Signature& in) {
    std::vector<std::string> parts;
    Signature out;
    std::size_t i = 0;
    bool used = false;
    while (i < in.size()) {
        const int g = in[i].degree;
        const long pick = gen::small_int(0, used ? 0 : 4);
        if (pick == 1 && i + 1 < in.size()) {
            const int h = in[i + 1].degree;
            parts.push_back("m[" + G.name(g) + "," + G.name(h) + "]");
            out.push_back({StrandKind::A, G.mul(g, h)});
            i += 2;
        } else if (pick == 2) {
            const int a = static_cast<int>(gen::small_int(0, G.order() - 1));
            const int b = G.mul(G.inv(a), g);
            parts.push_back("cm[" + G.name(a) + "," + G.name(b) + "]");
            out.insert(out.end(), {{StrandKind::A, a}, {StrandKind::A, b}});
            i += 1;
        } else if (pick == 3) {
            const int h = static_cast<int>(gen::small_int(0, G.order() - 1));
            parts.push_back("tw[" + G.name(h) + "," + G.name(g) + "]");
            out.push_back({StrandKind::A, G.conj(h, g)});
            i += 1;
        } else if (pick == 4 && i + 1 < in.size()) {
            parts.push_back("b");
            out.insert(out.end(), {in[i + 1], in[i]});
            i += 2;
        } else {
            parts.push_back("id");
            out.push_back(in[i]);
            i += 1;
            continue;
        }
        used = true;
    }
    std::string text;
    for (std::size_t k = 0; k < parts.size(); ++k) text += (k ? " x " : "") + parts[k];
    return {text, out};
}

Signature random_source(const GroupTable& G, std::size_t n) {
    Signature s;
    for (std::size_t i = 0; i < n; ++i) s.push_back({StrandKind::A, static_cast<int>(gen::small_int(0, G.order() - 1))});
    return s;
}

}  // namespace

TEST_CASE("parse and print round trip") {
    auto G = GroupTable::symmetric3();
    const std::vector<std::pair<std::string, std::string>> corpus = {
        {"cup[e] . cap[e]", "cup[e] . cap[e]"},
        {"m[(01),(02)]  \xE2\x8A\x97 id", "m[(01),(02)] x id"},
        {"{A:e, M:(01)} m[e,(01)]", "{A:e, M:(01)} m[e,(01)]"},
        {"B:sx[1] . B:cm[2,3]^-1", ""},
        {"id x m[e,e^-1]\n  . id x id x one  # unit", "id x m[e,e] . id x id x one"},
        {"{A:e, A:e, A:e} b(2 3) . b(1 2)", "{A:e, A:e, A:e} b(2 3) . b(1 2)"},
        {"tw[4,1] x id[2]", "tw[(012),(01)] x id[(02)]"},
    };
    for (const auto& [in, want] : corpus) {
        if (want.empty()) continue;
        auto w = parse_word(in, G);
        CHECK(print_word(w, G) == want);
        CHECK(print_word(parse_word(print_word(w, G), G), G) == want);
    }
}

TEST_CASE("parse errors carry positions") {
    auto G = fx::z2();
    auto kind_of = [&](const std::string& text) {
        try {
            parse_word(text, G);
        } catch (const Error& e) {
            return e.kind() + " | " + e.what();
        }
        return std::string("ok");
    };
    CHECK(kind_of("m[e,e] x id . m[e,e]").starts_with("SignatureMismatch"));
    CHECK(kind_of("m[e,e] . m[e,e]").starts_with("SignatureMismatch"));
    CHECK(kind_of("cup[e] .\n  frob[e]").find("line 2, column 3") != std::string::npos);
    CHECK(kind_of("m[e,q]").starts_with("Syntax"));
    CHECK(kind_of("m[e]").starts_with("Syntax"));
    CHECK(kind_of("B:f1[e,e]").starts_with("Syntax"));
    CHECK(kind_of("b(1 3)").starts_with("Syntax"));
    CHECK(kind_of("b(1 2)").starts_with("Syntax"));
    CHECK(kind_of("{A:e} b(1 2)").starts_with("SignatureMismatch"));
    CHECK(kind_of("id x b(1 2)").starts_with("Syntax"));
    CHECK(kind_of("").starts_with("Syntax"));
    CHECK(kind_of("cup[e] cap[e]").starts_with("Syntax"));
    CHECK(kind_of("{A:e, M:s} id x id") == "ok");
}

TEST_CASE("single generators on k[Z/2]") {
    auto t = standard_theory(fx::group_package(fx::z2()));
    Evaluator ev(t);
    auto m = ev.evaluate("m[e,e]");
    CHECK(m.matrix == Matrix{{Scalar(1)}});
    CHECK(m.target == Signature{{StrandKind::A, 0}});
    // The e-saddle sends 1 (x) 1 to the copairing sum p (x) q.
    auto sx = ev.evaluate("sx[e]", Signature{{StrandKind::A, 0}, {StrandKind::A, 0}});
    CHECK(sx.matrix.col(0) == t.a.copairing(0));
    auto zorro = ev.evaluate("id x cup[s] . cm[s,s] x id . one x id", Signature{{StrandKind::A, 1}});
    CHECK(zorro.matrix == Matrix::identity(1));
    CHECK_THROWS_WITH_AS(ev.evaluate("m[e,s]", Signature{{StrandKind::A, 0}, {StrandKind::A, 0}}),
                         doctest::Contains("wrong kind or degree"), Error);
    CHECK_THROWS_AS(ev.evaluate("sx[e]"), Error);
}

TEST_CASE("saddle image is the copairing on the matrix model") {
    auto f = fx::model_package(fx::z2(), fx::small_model_spec());
    auto t = standard_theory(f);
    Evaluator ev(t);
    for (int g = 0; g < 2; ++g) {
        auto sx = ev.evaluate("sx[" + std::to_string(g) + "]", Signature{{StrandKind::A, 0}, {StrandKind::A, 0}});
        // Column of 1 (x) 1 with 1 at the unit's basis positions.
        Vec one = t.a.algebra.unit();
        Vec col = sx.matrix * tensor(one, one);
        CHECK(col == t.a.copairing(g));
    }
}

TEST_CASE("functoriality on random words") {
    for (const auto& G : {fx::z2(), GroupTable::symmetric3()}) {
        auto f = G.order() == 2 ? fx::model_package(G, fx::swap_model_spec()) : fx::group_package(G);
        auto t = standard_theory(f);
        Evaluator ev(t);
        for (int it = 0; it < 25; ++it) {
            INFO("iteration " << it);
            Signature s0 = random_source(G, static_cast<std::size_t>(gen::small_int(1, 2)));
            auto [t1, s1] = random_slice(G, s0);
            auto [t2, s2] = random_slice(G, s1);
            auto w1 = parse_word(t1, G), w2 = parse_word(t2, G);
            auto e1 = ev.evaluate(w1, s0), e2 = ev.evaluate(w2, s1);
            CHECK(e2.source == e1.target);
            CHECK(ev.evaluate(compose(w2, w1), s0).matrix == e2.matrix * e1.matrix);

            Signature r0 = random_source(G, 1);
            auto [u1, r1] = random_slice(G, r0);
            auto [u2, r2] = random_slice(G, r1);
            auto v = compose(parse_word(u2, G), parse_word(u1, G));
            Signature joint = s0;
            joint.insert(joint.end(), r0.begin(), r0.end());
            auto ej = ev.evaluate(tensor_words(w1, v), joint);
            CHECK(ej.matrix == kron(e1.matrix, ev.evaluate(v, r0).matrix));
        }
    }
}

TEST_CASE("relation suite on group algebras and matrix models") {
    auto v4 = fx::v4();
    std::vector<FrobeniusPackage> pkgs{fx::group_package(fx::z2()), fx::group_package(v4),
                                       fx::model_package(fx::z2(), fx::small_model_spec()),
                                       fx::model_package(fx::z2(), fx::swap_model_spec()),
                                       fx::model_package(v4, fx::klein_twisted_spec(v4))};
    for (const auto& f : pkgs) {
        auto t = standard_theory(f);
        Report r = relation_suite(t);
        INFO(first_failures(r));
        CHECK(r.pass());
    }
}


TEST_CASE("relation suite covers every family and both sides") {
    auto t = standard_theory(fx::group_package(GroupTable::symmetric3()));
    Report r = relation_suite(t);
    INFO(first_failures(r));
    CHECK(r.pass());
    for (std::string fam : {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "beta-naturality", "beta-involution",
                            "yang-baxter", "X-coherence", "cup-cap"})
        CHECK(r.find(fam) != nullptr);
    std::size_t bside = 0;
    for (const auto& c : r.checks) bside += c.detail.is_object() && c.detail.value("side", "") == "B";
    CHECK(bside > 0);
}

TEST_CASE("single 2x2 block: separability reduces to the averaged matrix units") {
    MatrixModelSpec spec;
    spec.blocks = {2};
    spec.r = {Scalar(1)};
    auto t = standard_theory(fx::model_package(GroupTable::cyclic(1), spec));
    Report r = relation_suite(t);
    INFO(first_failures(r));
    CHECK(r.pass());
    // sum E_ab I E_ba / 2 = I, and z = 1/2 I times the weight-scaled trace.
    CHECK(t.a.algebra.mul(0, z_inverse(t.a), 0, t.a.z_or_throw()) == t.a.algebra.unit());
}

TEST_CASE("doubling the trace without adjusting z breaks separability") {
    auto f = fx::model_package(fx::z2(), fx::small_model_spec());
    Vec doubled = f.trace;
    for (auto& x : doubled) x = x * Scalar(2);
    auto bad = make_frobenius(f.algebra, doubled);
    bad.z = f.z;
    auto bad_b = make_frobenius(opposite(f.algebra), doubled);
    bad_b.z = f.z;
    auto t = make_theory(bad, bad_b, identity_context(f.algebra));
    CHECK_FALSE(t.center.has_value());
    Report r = relation_suite(t);
    const Check* r7 = nullptr;
    for (const auto& c : r.checks)
        if (c.name == "R7" && !c.pass) r7 = &c;
    REQUIRE(r7 != nullptr);
    CHECK_FALSE(r7->witness.empty());
    // Associativity does not see the trace.
    for (const auto& c : r.checks)
        if (c.name == "R1") CHECK(c.pass);
}

TEST_CASE("make_theory rejects a context on the wrong algebras") {
    auto fa = fx::group_package(fx::z2());
    auto fm = fx::model_package(fx::z2(), fx::small_model_spec());
    auto fb = make_frobenius(opposite(fm.algebra), fm.trace);
    CHECK_THROWS_WITH_AS(make_theory(fa, fb, identity_context(fa.algebra)), doctest::Contains("context"), Error);
    auto dual = make_frobenius(fx::dual_numbers(), Vec{Scalar(0), Scalar(1)});
    CHECK_THROWS_WITH_AS(make_theory(dual, dual, identity_context(dual.algebra)), doctest::Contains("no central z"), Error);
}

TEST_CASE("sphere and torus values") {
    auto small = standard_theory(fx::model_package(fx::z2(), fx::small_model_spec()));
    CHECK(surface_invariant(small, {}) == Scalar(37));
    CHECK(surface_invariant(small, {{0, 0}}) == Scalar(2));
    auto swap = standard_theory(fx::model_package(fx::z2(), fx::swap_model_spec()));
    CHECK(surface_invariant(swap, {}) == Scalar(8));
    CHECK(surface_invariant(swap, {{1, 0}}) == Scalar(0));
    CHECK(surface_invariant(swap, {{0, 1}}) == Scalar(0));
    CHECK(surface_invariant(swap, {{0, 0}}) == Scalar(2));
    // Two idempotent sectors of weight 4 each: genus two gives 1/4 + 1/4.
    CHECK(surface_invariant(swap, {{0, 0}, {0, 0}}) == Scalar(1, 2));
    CHECK(surface_invariant(small, {{0, 0}, {0, 0}}) == Scalar(37, 36));
    CHECK_THROWS_WITH_AS(surface_invariant(small, {{0, 7}}), doctest::Contains("range"), Error);
}

TEST_CASE("torus invariant is the twisted trace, symmetrically") {
    auto v4 = fx::v4();
    std::vector<TheoryPackage> theories;
    theories.push_back(standard_theory(fx::group_package(GroupTable::symmetric3())));
    theories.push_back(standard_theory(fx::model_package(v4, fx::klein_twisted_spec(v4))));
    theories.push_back(standard_theory(fx::model_package(fx::z2(), fx::swap_model_spec())));
    for (const auto& t : theories) {
        const auto& G = t.a.group();
        for (int a = 0; a < G.order(); ++a)
            for (int b = 0; b < G.order(); ++b) {
                if (G.commutator(a, b) != G.identity()) {
                    CHECK_THROWS_WITH_AS(surface_invariant(t, {{a, b}}), doctest::Contains("commutators"), Error);
                    continue;
                }
                const Scalar v = surface_invariant(t, {{a, b}});
                CHECK(v == twisted_trace(*t.center, a, b));
                CHECK(twisted_trace(*t.center, a, b) == twisted_trace(*t.center, b, G.inv(a)));
            }
    }
}

TEST_CASE("higher genus agrees with the center computation") {
    auto s3 = GroupTable::symmetric3();
    auto t = standard_theory(fx::group_package(s3));
    const int N = s3.order();
    int tried = 0;
    // Pairs of handles with inverse commutators, including nonabelian ones.
    for (int a1 = 0; a1 < N; ++a1)
        for (int b1 = 0; b1 < N; ++b1)
            for (int a2 = 0; a2 < N; a2 += 2)
                for (int b2 = 1; b2 < N; b2 += 2) {
                    if (s3.mul(s3.commutator(a1, b1), s3.commutator(a2, b2)) != s3.identity()) continue;
                    Monodromy m{{a1, b1}, {a2, b2}};
                    CHECK(surface_invariant(t, m) == center_surface_value(*t.center, m));
                    ++tried;
                }
    CHECK(tried > 20);
    auto small = standard_theory(fx::model_package(fx::z2(), fx::small_model_spec()));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Monodromy m{{a, b}, {b, a}, {a, a}};
            CHECK(surface_invariant(small, m) == center_surface_value(*small.center, m));
        }
}

TEST_CASE("conjugating every monodromy leaves the invariant alone") {
    auto s3 = GroupTable::symmetric3();
    auto t = standard_theory(fx::group_package(s3));
    Monodromy m{{1, 4}, {4, 1}};
    REQUIRE(s3.mul(s3.commutator(1, 4), s3.commutator(4, 1)) == s3.identity());
    const Scalar base = surface_invariant(t, m);
    for (int c = 0; c < 6; ++c) {
        Monodromy mc;
        for (auto [a, b] : m) mc.push_back({s3.conj(c, a), s3.conj(c, b)});
        CHECK(surface_invariant(t, mc) == base);
    }
}

TEST_CASE("decomposition audit") {
    auto s3 = GroupTable::symmetric3();
    auto t = standard_theory(fx::group_package(s3));
    for (Monodromy m : {Monodromy{}, Monodromy{{3, 0}}, Monodromy{{1, 4}, {4, 1}}, Monodromy{{4, 5}, {0, 0}}}) {
        auto res = decomposition_audit(t, m, 4);
        CHECK(res.alternatives.size() == 4);
        CHECK(res.base == surface_invariant(t, m));
        CHECK(res.pass());
    }
    auto small = standard_theory(fx::model_package(fx::z2(), fx::small_model_spec()));
    auto res = decomposition_audit(small, {{1, 1}, {0, 1}}, 9);
    CHECK(res.alternatives.size() == 9);
    CHECK(res.pass());
    CHECK_THROWS_AS(decomposition_audit(small, {{1, 9}}, 2), Error);
}

TEST_CASE("surface words are closed and print back") {
    auto t = standard_theory(fx::group_package(fx::z2()));
    auto w = surface_word(t, {{1, 1}});
    CHECK(input_count(w) == 0);
    CHECK(output_count(w) == 0);
    const auto& G = t.a.group();
    CHECK(print_word(parse_word(print_word(w, G), G), G) == print_word(w, G));
}
