#include "hft/error.hpp"
#include "tft_internal.hpp"

namespace hft {

namespace {

std::size_t sz(int g) { return static_cast<std::size_t>(g); }

using detail::lbl;

struct Suite {
    const TheoryPackage& t;
    Evaluator ev;
    Report report;

    explicit Suite(const TheoryPackage& th) : t(th), ev(th) {}

    const GroupTable& G() const { return t.a.group(); }
    std::string n(int g) const { return G().name(g); }

    nlohmann::json names(std::initializer_list<int> labels) const {
        nlohmann::json j = nlohmann::json::array();
        for (int l : labels) j.push_back(n(l));
        return j;
    }

    // Records lhs == rhs as words over the given source; restrict (if given)
    // compares the two maps only on the columns of that matrix.
    void equal(const std::string& family, const std::string& lhs, const std::string& rhs, const Signature& src,
               nlohmann::json labels, const std::string& side = {}, const Matrix* restrict = nullptr) {
        nlohmann::json detail{{"labels", std::move(labels)}};
        if (!side.empty()) detail["side"] = side;
        try {
            const std::string head = print_signature(src, G()) + " ";
            Matrix l = ev.evaluate(head + lhs).matrix, r = ev.evaluate(head + rhs).matrix;
            if (restrict) {
                l = l * *restrict;
                r = r * *restrict;
            }
            const bool ok = l == r;
            report.add(family, ok, ok ? "" : lhs + "  !=  " + rhs, std::move(detail));
        } catch (const Error& err) {
            report.add(family, false, lhs + ": " + err.what(), std::move(detail));
        }
    }
};

Matrix center_basis_tensor(const CrossedPackage& c, std::initializer_list<int> degrees) {
    Matrix out = Matrix::identity(1);
    for (int g : degrees) out = kron(out, c.center_basis[sz(g)]);
    return out;
}

// Columns of (R - I) lie in the span of the balancing relations.
bool identity_modulo(const Matrix& r, const Matrix& balancing) {
    Matrix diff = r - Matrix::identity(r.rows());
    if (balancing.cols() == 0) return diff.is_zero();
    return rank(hstack(balancing, diff)) == rank(balancing);
}

}  // namespace

Report relation_suite(const TheoryPackage& t) {
    Suite s(t);
    const GroupTable& G = t.a.group();
    const int N = G.order(), e = G.identity();
    using K = StrandKind;
    auto inv = [&](int g) { return G.inv(g); };
    auto mul = [&](int g, int h) { return G.mul(g, h); };
    struct Side {
        std::string tag, p;
        K kind;
    };
    const std::vector<Side> sides = {{"A", "", K::A}, {"B", "B:", K::C}};

    // R1: associativity of every product and action, as kind triples.
    const std::vector<std::array<K, 3>> triples = {{K::A, K::A, K::A}, {K::A, K::A, K::M}, {K::A, K::M, K::C},
                                                   {K::M, K::C, K::C}, {K::C, K::C, K::C}, {K::C, K::C, K::N},
                                                   {K::C, K::N, K::A}, {K::N, K::A, K::A}};
    for (const auto& tr : triples)
        for (int g = 0; g < N; ++g)
            for (int h = 0; h < N; ++h)
                for (int l = 0; l < N; ++l)
                    s.equal("R1", "m" + lbl(G, {mul(g, h), l}) + " . m" + lbl(G, {g, h}) + " x id",
                            "m" + lbl(G, {g, mul(h, l)}) + " . id x m" + lbl(G, {h, l}),
                            {{tr[0], g}, {tr[1], h}, {tr[2], l}}, s.names({g, h, l}));

    // R2: A_g (x)_{A_e} A_h -> A_gh is an isomorphism.
    for (int g = 0; g < N; ++g)
        for (int h = 0; h < N; ++h) {
            const auto& A = t.a.algebra;
            TensorProduct tp = tensor_over(component_bimodule(A, g), component_bimodule(A, h));
            const std::size_t d = tp.result.dim(0);
            Matrix induced = A.mult(g, h) * tp.section[0];
            const bool ok = d == A.dim(mul(g, h)) && rank(induced) == d;
            s.report.add("R2", ok, ok ? "" : "rank " + std::to_string(rank(induced)) + " vs " + std::to_string(A.dim(mul(g, h))),
                         {{"labels", s.names({g, h})}});
        }

    // R3: the cusp maps are mutually inverse (up to balancing on the raw side).
    for (int g = 0; g < N; ++g)
        for (int h = 0; h < N; ++h) {
            const std::string l = lbl(G, {g, h});
            s.equal("R3", "f4" + l + " . f1" + l, "id", {{K::A, mul(g, h)}}, s.names({g, h}), "f4.f1");
            s.equal("R3", "f2" + l + " . f3" + l, "id", {{K::C, mul(g, h)}}, s.names({g, h}), "f2.f3");
            for (bool first : {true, false}) {
                const auto& x = first ? t.zeta.u : t.zeta.v;
                const auto& y = first ? t.zeta.v : t.zeta.u;
                const std::string word = first ? "f1" + l + " . f4" + l : "f3" + l + " . f2" + l;
                Signature src = first ? Signature{{K::M, g}, {K::N, h}} : Signature{{K::N, g}, {K::M, h}};
                nlohmann::json detail{{"labels", s.names({g, h})}, {"side", first ? "f1.f4" : "f3.f2"}};
                try {
                    const bool ok = identity_modulo(s.ev.evaluate(word, src).matrix, detail::balancing_over_identity(x, g, y, h));
                    s.report.add("R3", ok, ok ? "" : word + " is not the identity modulo balancing", detail);
                } catch (const Error& err) {
                    s.report.add("R3", false, word + ": " + err.what(), detail);
                }
            }
        }

    // R4: swallowtails on M and N.
    for (int g = 0; g < N; ++g) {
        s.equal("R4", "m" + lbl(G, {e, g}) + " . id x f2" + lbl(G, {e, g}) + " . f1" + lbl(G, {e, e}) + " x id . one x id",
                "id", {{K::M, g}}, s.names({g}), "M");
        s.equal("R4", "m" + lbl(G, {g, e}) + " . f2" + lbl(G, {g, e}) + " x id . id x f1" + lbl(G, {e, e}) + " . id x one",
                "id", {{K::N, g}}, s.names({g}), "N");
    }

    for (const Side& sd : sides) {
        const std::string& p = sd.p;
        const K k = sd.kind;
        // R5: the two saddles agree.
        for (int g = 0; g < N; ++g)
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b)
                    s.equal("R5", p + "sx" + lbl(G, {g}), p + "sy" + lbl(G, {g}), {{k, a}, {k, b}}, s.names({g, a, b}), sd.tag);
        // R6: Zorro moves.
        for (int g = 0; g < N; ++g) {
            s.equal("R6", "id x " + p + "cup" + lbl(G, {inv(g)}) + " . " + p + "cm" + lbl(G, {g, inv(g)}) + " x id . " + p + "one x id",
                    "id", {{k, g}}, s.names({g}), sd.tag);
            s.equal("R6", p + "cup" + lbl(G, {g}) + " x id . id x " + p + "cm" + lbl(G, {inv(g), g}) + " . id x " + p + "one",
                    "id", {{k, g}}, s.names({g}), sd.tag);
        }
        // R7: separability.
        for (int g = 0; g < N; ++g)
            for (int h = 0; h < N; ++h)
                s.equal("R7",
                        p + "m" + lbl(G, {mul(g, h), inv(h)}) + " . " + p + "sx" + lbl(G, {h}) + " . " + p + "m" + lbl(G, {g, e}) +
                            " x id . id x " + p + "cap" + lbl(G, {e}),
                        "id" + lbl(G, {g}), {{k, g}}, s.names({g, h}), sd.tag);
        // R8: saddle centrality.
        for (int h = 0; h < N; ++h)
            s.equal("R8",
                    p + "m" + lbl(G, {h, e}) + " x id . id x " + p + "cm" + lbl(G, {e, e}) + " . id x " + p + "one",
                    "id x " + p + "m" + lbl(G, {inv(h), h}) + " . " + p + "cm" + lbl(G, {h, inv(h)}) + " x id . " + p + "one x id",
                    {{k, h}}, s.names({h}), sd.tag);
        // R9: every saddle reduces to the e-labelled one.
        for (int g = 0; g < N; ++g)
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    const std::string rhs = "id x " + p + "m" + lbl(G, {e, inv(g)}) + " . " + p + "sx" + lbl(G, {e}) +
                                            " x id . id x b . " + p + "m" + lbl(G, {a, g}) + " x id x id . id x id x " + p + "m" +
                                            lbl(G, {inv(g), e}) + " x id . id x " + p + "cm" + lbl(G, {g, inv(g)}) +
                                            " x id x id . id x " + p + "cap" + lbl(G, {e}) + " x id";
                    s.equal("R9", p + "sx" + lbl(G, {g}), rhs, {{k, a}, {k, b}}, s.names({g, a, b}), sd.tag);
                }
        // R10: the crossed twist is the composite through a saddle.
        for (int h = 0; h < N; ++h)
            for (int g = 0; g < N; ++g) {
                const int hg = mul(h, g);
                const std::string rhs = p + "m" + lbl(G, {hg, inv(h)}) + " . " + p + "m" + lbl(G, {hg, e}) + " x " + p + "m" +
                                        lbl(G, {e, inv(h)}) + " . id x " + p + "cap" + lbl(G, {e}) + " x id . " + p + "m" +
                                        lbl(G, {h, g}) + " x id . b(2 3) . " + p + "cm" + lbl(G, {h, inv(h)}) + " x id . " + p +
                                        "one x id";
                s.equal("R10", p + "tw" + lbl(G, {h, g}), rhs, {{k, g}}, s.names({h, g}), sd.tag);
            }
    }

    // R10 on the center: the evaluated twist agrees with the G-center's phi and
    // is multiplicative for the center product x y z^-1.
    if (!t.center) {
        s.report.add("R10", false, "z fails centrality or normalization; no G-center", {{"side", "center"}});
    } else {
        const CrossedPackage& c = *t.center;
        const auto& A = t.a.algebra;
        const Vec zinv = z_inverse(t.a);
        for (int h = 0; h < N; ++h)
            for (int g = 0; g < N; ++g) {
                const int hg = G.conj(h, g);
                Matrix tw = s.ev.evaluate("tw" + lbl(G, {h, g}), Signature{{K::A, g}}).matrix;
                const bool agree = tw * c.center_basis[sz(g)] == c.center_basis[sz(hg)] * c.phi[sz(h)][sz(g)];
                s.report.add("R10", agree, agree ? "" : "twist disagrees with the G-center", {{"labels", s.names({h, g})}, {"side", "center"}});
                for (int g2 = 0; g2 < N; ++g2) {
                    Matrix tw2 = s.ev.evaluate("tw" + lbl(G, {h, g2}), Signature{{K::A, g2}}).matrix;
                    const int gg = mul(g, g2);
                    Matrix tw12 = s.ev.evaluate("tw" + lbl(G, {h, gg}), Signature{{K::A, gg}}).matrix;
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < c.dim(g); ++i)
                        for (std::size_t j = 0; ok && j < c.dim(g2); ++j) {
                            Vec x = c.embed(g, unit_vec(c.dim(g), i)), y = c.embed(g2, unit_vec(c.dim(g2), j));
                            Vec lhs = tw12 * A.mul(gg, A.mul(g, x, g2, y), e, zinv);
                            Vec rhs = A.mul(mul(hg, G.conj(h, g2)), A.mul(hg, tw * x, G.conj(h, g2), tw2 * y), e, zinv);
                            ok = lhs == rhs;
                        }
                    s.report.add("R10", ok, ok ? "" : "twist is not multiplicative on the center",
                                 {{"labels", s.names({h, g, g2})}, {"side", "hom"}});
                }
            }
    }

    // Braiding: naturality, involution, Yang-Baxter; crossings on the center.
    for (int g = 0; g < N; ++g)
        for (int h = 0; h < N; ++h) {
            s.equal("beta-involution", "b . b", "id x id", {{K::A, g}, {K::A, h}}, s.names({g, h}));
            s.equal("beta-involution", "b . b", "id x id", {{K::M, g}, {K::N, h}}, s.names({g, h}), "MN");
            for (int l = 0; l < N; ++l) {
                const Signature ghl{{K::A, g}, {K::A, h}, {K::A, l}};
                s.equal("beta-naturality", "b . m" + lbl(G, {g, h}) + " x id", "id x m" + lbl(G, {g, h}) + " . b(1 2) . b(2 3)",
                        ghl, s.names({g, h, l}), "left");
                s.equal("beta-naturality", "b . id x m" + lbl(G, {h, l}), "m" + lbl(G, {h, l}) + " x id . b(2 3) . b(1 2)", ghl,
                        s.names({g, h, l}), "right");
                s.equal("yang-baxter", "b(1 2) . b(2 3) . b(1 2)", "b(2 3) . b(1 2) . b(2 3)", ghl, s.names({g, h, l}));
                s.equal("beta-naturality", "b . tw" + lbl(G, {l, g}) + " x id", "id x tw" + lbl(G, {l, g}) + " . b",
                        {{K::A, g}, {K::A, h}}, s.names({l, g, h}), "twist");
                // Crossing X_{g,h}: (x, y) -> (phi_g(y), x) on center strands.
                if (!t.center) continue;
                const Matrix zs = center_basis_tensor(*t.center, {g, h, l});
                const int gh = mul(g, h);
                s.equal("X-coherence", "tw" + lbl(G, {gh, l}) + " x id . b . m" + lbl(G, {g, h}) + " x id",
                        "id x m" + lbl(G, {g, h}) + " . tw" + lbl(G, {g, G.conj(h, l)}) + " x id x id . b(1 2) . id x tw" +
                            lbl(G, {h, l}) + " x id . b(2 3)",
                        ghl, s.names({g, h, l}), "", &zs);
            }
        }

    // Sphere closure.
    try {
        Matrix v = s.ev.evaluate("cup" + lbl(G, {e}) + " . cap" + lbl(G, {e}), Signature{}).matrix;
        const Scalar lz = t.a.eta(e, t.a.algebra.unit(), e, t.a.z_or_throw());
        s.report.add("cup-cap", v(0, 0) == lz, v(0, 0) == lz ? "" : v(0, 0).str() + " != " + lz.str(), {{"labels", s.names({e})}});
    } catch (const Error& err) {
        s.report.add("cup-cap", false, err.what(), {{"labels", s.names({e})}});
    }
    return s.report;
}

namespace {

void require_monodromy(const GroupTable& G, const Monodromy& m) {
    int prod = G.identity();
    for (const auto& [a, b] : m) {
        if (a < 0 || b < 0 || a >= G.order() || b >= G.order()) throw Error("MonodromyInvalid", "monodromy label out of range");
        prod = G.mul(prod, G.commutator(a, b));
    }
    if (prod != G.identity())
        throw Error("MonodromyInvalid", "product of commutators is " + G.name(prod) + ", not the identity");
}

// Slices (leftmost first) of the handle block x -> x h_{a,b} z^-1 on the
// first of `width` strands, entered at degree d.
std::vector<std::string> handle_slices(const GroupTable& G, int a, int b, int d, std::size_t width) {
    const int e = G.identity(), ai = G.inv(a), bab = G.conj(b, a), c = G.mul(bab, ai), d2 = G.mul(d, c);
    std::string pad;
    for (std::size_t i = 1; i < width; ++i) pad += " x id";
    return {
        "m" + lbl(G, {d2, e}) + pad,
        "id x m" + lbl(G, {e, e}) + pad,
        "id x cm" + lbl(G, {e, e}) + pad,
        "id x one" + pad,
        "m" + lbl(G, {d, c}) + pad,
        "id x m" + lbl(G, {bab, ai}) + pad,
        "id x tw" + lbl(G, {b, a}) + " x id" + pad,
        "id x cm" + lbl(G, {a, ai}) + pad,
        "id x one" + pad,
    };
}

std::string join(const std::vector<std::string>& slices) {
    std::string out;
    for (std::size_t i = 0; i < slices.size(); ++i) out += (i ? " . " : "") + slices[i];
    return out;
}

// Handle slices for all of m, leftmost (last applied) first; handle g is applied first.
std::vector<std::string> all_handles(const GroupTable& G, const Monodromy& m) {
    std::vector<std::vector<std::string>> blocks(m.size());
    int d = G.identity();
    for (std::size_t i = m.size(); i-- > 0;) {
        blocks[i] = handle_slices(G, m[i].first, m[i].second, d, 2);
        d = G.mul(d, G.mul(G.conj(m[i].second, m[i].first), G.inv(m[i].first)));
    }
    std::vector<std::string> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string surface_text(const GroupTable& G, const Monodromy& m) {
    const int e = G.identity();
    std::vector<std::string> slices{"cup" + lbl(G, {e})};
    auto h = all_handles(G, m);
    slices.insert(slices.end(), h.begin(), h.end());
    slices.push_back("cap" + lbl(G, {e}));
    return join(slices);
}

Scalar closed_value(Evaluator& ev, const std::string& text) {
    return ev.evaluate(text, Signature{}).matrix(0, 0);
}

}  // namespace

GeneratorWord surface_word(const TheoryPackage& t, const Monodromy& m) {
    require_monodromy(t.a.group(), m);
    GeneratorWord w = parse_word(surface_text(t.a.group(), m), t.a.group());
    w.source = Signature{};
    return w;
}

Scalar surface_invariant(const TheoryPackage& t, const Monodromy& m) {
    Evaluator ev(t);
    return ev.evaluate(surface_word(t, m)).matrix(0, 0);
}

Scalar center_surface_value(const CrossedPackage& c, const Monodromy& m) {
    const GroupTable& G = c.group();
    require_monodromy(G, m);
    const int e = G.identity();
    FrobeniusPackage fz = center_frobenius(c);
    // omega_{a,b} = sum_i phi_b(p_i) . q_i over dual bases of the center at degree a.
    Vec acc = c.unit;
    int deg = e;
    for (std::size_t k = m.size(); k-- > 0;) {
        const auto [a, b] = m[k];
        const int bab = G.conj(b, a), w = G.mul(bab, G.inv(a));
        Vec omega = zero_vec(c.dim(w));
        for (std::size_t i = 0; i < c.dim(a); ++i)
            omega = vadd(omega, c.mul(bab, c.phi[sz(b)][sz(a)] * unit_vec(c.dim(a), i), G.inv(a), fz.q(a, i)));
        acc = c.mul(w, omega, deg, acc);
        deg = G.mul(w, deg);
    }
    Scalar s(0);
    for (std::size_t i = 0; i < acc.size(); ++i) s += c.trace[i] * acc[i];
    return s;
}

AuditResult decomposition_audit(const TheoryPackage& t, const Monodromy& m, std::size_t k) {
    const GroupTable& G = t.a.group();
    require_monodromy(G, m);
    const int e = G.identity(), N = G.order();
    Evaluator ev(t);
    AuditResult res{closed_value(ev, surface_text(G, m)), {}};
    std::vector<std::pair<std::string, std::string>> words;

    bool all_trivial = true;
    for (const auto& [a, b] : m) all_trivial = all_trivial && G.commutator(a, b) == e;
    if (m.size() >= 2) {
        Monodromy rot(m.begin() + 1, m.end());
        rot.push_back(m.front());
        if (all_trivial) words.push_back({"rotated handles", surface_text(G, rot)});
    }
    if (m.size() >= 2 && all_trivial) words.push_back({"reversed handles", surface_text(G, Monodromy(m.rbegin(), m.rend()))});
    for (int c = 0; c < N; ++c) {
        if (c == e) continue;
        Monodromy conj;
        for (const auto& [a, b] : m) conj.push_back({G.conj(c, a), G.conj(c, b)});
        words.push_back({"conjugated by " + G.name(c), surface_text(G, conj)});
    }
    if (!m.empty()) {
        Monodromy dehn = m;
        dehn.front().second = G.mul(dehn.front().second, dehn.front().first);
        words.push_back({"Dehn twist on the first handle", surface_text(G, dehn)});
    }
    // Cancelling cusp pair inserted on the running strand of a handle boundary.
    {
        std::vector<std::string> slices{"cup" + lbl(G, {e})};
        auto h = all_handles(G, m);
        slices.insert(slices.end(), h.begin(), h.end());
        slices.push_back("f4" + lbl(G, {e, e}) + " x id");
        slices.push_back("f1" + lbl(G, {e, e}) + " x id");
        slices.push_back("cap" + lbl(G, {e}));
        words.push_back({"inserted f4.f1 pair", join(slices)});
    }
    if (!m.empty()) {
        // The running degree is back to e after the last handle.
        std::vector<std::string> slices{"cup" + lbl(G, {e}), "f4" + lbl(G, {e, e}) + " x id", "f1" + lbl(G, {e, e}) + " x id"};
        auto h = all_handles(G, m);
        slices.insert(slices.end(), h.begin(), h.end());
        slices.push_back("cap" + lbl(G, {e}));
        words.push_back({"cusp pair after the last handle", join(slices)});
    }
    if (m.empty()) {
        words.push_back({"braided closure", "cup" + lbl(G, {e}) + " . b . cap" + lbl(G, {e})});
        for (int c = 0; c < N; ++c)
            words.push_back({"twist by " + G.name(c), "cup" + lbl(G, {e}) + " . tw" + lbl(G, {c, e}) + " x id . cap" + lbl(G, {e})});
        for (int c = 0; c < N; ++c)
            words.push_back({"cusp pair " + G.name(c),
                             "cup" + lbl(G, {e}) + " . f4" + lbl(G, {c, G.inv(c)}) + " x id . f1" + lbl(G, {c, G.inv(c)}) +
                                 " x id . cap" + lbl(G, {e})});
    }
    for (std::size_t i = 0; i < words.size() && res.alternatives.size() < k; ++i)
        res.alternatives.push_back({words[i].first, closed_value(ev, words[i].second)});
    // Fewer structurally distinct words than requested: repeat with a cusp pair
    // on every handle boundary so the count is still honoured.
    for (std::size_t extra = 0; res.alternatives.size() < k; ++extra) {
        std::vector<std::string> slices{"cup" + lbl(G, {e})};
        for (std::size_t r = 0; r <= extra; ++r) {
            slices.push_back("f4" + lbl(G, {e, e}) + " x id");
            slices.push_back("f1" + lbl(G, {e, e}) + " x id");
        }
        auto h = all_handles(G, m);
        slices.insert(slices.end(), h.begin(), h.end());
        slices.push_back("cap" + lbl(G, {e}));
        res.alternatives.push_back({std::to_string(extra + 1) + " stacked cusp pairs", closed_value(ev, join(slices))});
    }
    return res;
}

}  // namespace hft
