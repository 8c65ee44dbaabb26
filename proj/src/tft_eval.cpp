#include <functional>

#include "hft/error.hpp"
#include "tft_internal.hpp"

namespace hft {

namespace detail {

Matrix balancing_over_identity(const GradedBimodule& x, int g, const GradedBimodule& y, int h) {
    const GradedAlgebra& r = x.right();
    const int e = r.group().identity();
    const std::size_t dx = x.dim(g), dy = y.dim(h);
    Matrix out(dx * dy, 0);
    for (std::size_t k = 0; k < r.dim(e); ++k) {
        Vec c = unit_vec(r.dim(e), k);
        Matrix rel = kron(x.right_matrix(g, e, c), Matrix::identity(dy)) - kron(Matrix::identity(dx), y.left_matrix(e, c, h));
        out = out.cols() == 0 ? rel : hstack(out, rel);
    }
    return out;
}

std::string lbl(const GroupTable& G, std::initializer_list<int> labels) {
    std::string s = "[";
    bool first = true;
    for (int l : labels) {
        if (!first) s += ",";
        s += G.name(l);
        first = false;
    }
    return s + "]";
}

}  // namespace detail

namespace {

std::size_t sz(int g) { return static_cast<std::size_t>(g); }

FrobeniusPackage opposite_package(const FrobeniusPackage& b) {
    FrobeniusPackage c = make_frobenius(opposite(b.algebra), b.trace);
    if (!attach_z(c)) throw Error("PackageIncomplete", "B^op admits no central z");
    return c;
}

[[noreturn]] void mismatch(const Symbol& s, const std::string& msg) {
    throw Error("SignatureMismatch",
                "line " + std::to_string(s.line) + ", column " + std::to_string(s.col) + ": " + s.name + ": " + msg);
}

// Columns are sparse: (row, value) pairs.
using SparseCol = std::vector<std::pair<std::size_t, Scalar>>;

}  // namespace

TheoryPackage make_theory(FrobeniusPackage a, FrobeniusPackage b, MoritaContext zeta) {
    if (!a.z && !attach_z(a)) throw Error("PackageIncomplete", "A admits no central z");
    if (!b.z && !attach_z(b)) throw Error("PackageIncomplete", "B admits no central z");
    FrobeniusPackage c = opposite_package(b);
    if (!(zeta.big() == a.algebra) || !(zeta.small() == c.algebra))
        throw Error("ContextInvalid", "context does not join A and B^op");
    std::optional<CrossedPackage> center;
    if (verify_z(a, *a.z)) center = g_center(a);
    return TheoryPackage{std::move(a), std::move(b), std::move(c), std::move(zeta), std::move(center)};
}

TheoryPackage standard_theory(const FrobeniusPackage& a) {
    FrobeniusPackage b = make_frobenius(opposite(a.algebra), a.trace);
    return make_theory(a, b, identity_context(a.algebra));
}

std::size_t Evaluator::dim(const Strand& s) const {
    switch (s.kind) {
        case StrandKind::A: return t_.a.algebra.dim(s.degree);
        case StrandKind::C: return t_.c.algebra.dim(s.degree);
        case StrandKind::M: return t_.zeta.u.dim(s.degree);
        case StrandKind::N: return t_.zeta.v.dim(s.degree);
    }
    return 0;
}

std::size_t Evaluator::dim(const Signature& s) const {
    std::size_t d = 1;
    for (const auto& x : s) d *= dim(x);
    return d;
}

const Matrix& Evaluator::cached(const std::string& key, const std::function<Matrix()>& make) {
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, std::make_unique<Matrix>(make())).first;
    return *it->second;
}

Evaluator::Typed Evaluator::type_symbol(const Symbol& s, const Signature& in) {
    const GroupTable& G = t_.a.group();
    const int e = G.identity();
    const bool bs = s.bside;
    const FrobeniusPackage& f = bs ? t_.c : t_.a;
    const StrandKind side = bs ? StrandKind::C : StrandKind::A;
    const std::string key = s.name + (bs ? "/B" : "/A");
    auto need = [&](std::size_t i, StrandKind k, int deg) {
        if (in[i].kind != k || in[i].degree != deg) mismatch(s, "strand " + std::to_string(i + 1) + " has the wrong kind or degree");
    };
    auto lab = [&](std::size_t i) { return s.labels.at(i); };
    auto kd = [&](std::size_t i) { return std::to_string(static_cast<int>(in[i].kind)) + ":" + std::to_string(in[i].degree); };

    if (s.name == "id") {
        if (!s.labels.empty() && in[0].degree != lab(0)) mismatch(s, "degree label disagrees with the strand");
        return {{in[0]}, nullptr};
    }
    if (s.name == "b") return {{in[1], in[0]}, nullptr};
    if (s.name == "one") {
        const Matrix& m = cached(key, [&] { return Matrix::column(f.algebra.unit()); });
        return {{{side, e}}, &m};
    }
    if (s.name == "m") {
        const int g = lab(0), h = lab(1);
        need(0, in[0].kind, g);
        need(1, in[1].kind, h);
        const StrandKind x = in[0].kind, y = in[1].kind;
        using K = StrandKind;
        const int gh = G.mul(g, h);
        const std::string k2 = "m/" + kd(0) + "/" + kd(1);
        if (bs && !(x == K::C && y == K::C)) mismatch(s, "B-side multiplication needs two C strands");
        if (x == K::A && y == K::A) return {{{K::A, gh}}, &t_.a.algebra.mult(g, h)};
        if (x == K::C && y == K::C) return {{{K::C, gh}}, &t_.c.algebra.mult(g, h)};
        if (x == K::A && y == K::M) return {{{K::M, gh}}, &t_.zeta.u.left_act(g, h)};
        if (x == K::M && y == K::C) return {{{K::M, gh}}, &t_.zeta.u.right_act(g, h)};
        if (x == K::C && y == K::N) return {{{K::N, gh}}, &t_.zeta.v.left_act(g, h)};
        if (x == K::N && y == K::A) return {{{K::N, gh}}, &t_.zeta.v.right_act(g, h)};
        mismatch(s, "no action of this kind pair");
    }
    if (s.name == "cm") {
        const int g = lab(0), h = lab(1);
        need(0, side, G.mul(g, h));
        const Matrix& m = cached(key + detail::lbl(G, {g, h}), [&] { return coproduct_matrix(f, g, h); });
        return {{{side, g}, {side, h}}, &m};
    }
    if (s.name == "f4" || s.name == "f2") {
        const int g = lab(0), h = lab(1);
        const bool four = s.name == "f4";
        need(0, four ? StrandKind::M : StrandKind::N, g);
        need(1, four ? StrandKind::N : StrandKind::M, h);
        const auto& pairing = four ? t_.zeta.mu : t_.zeta.nu;
        return {{{four ? StrandKind::A : StrandKind::C, G.mul(g, h)}}, &pairing[sz(g)][sz(h)]};
    }
    if (s.name == "f1" || s.name == "f3") {
        const int g = lab(0), h = lab(1);
        const bool one_ = s.name == "f1";
        need(0, one_ ? StrandKind::A : StrandKind::C, G.mul(g, h));
        const GradedBimodule& x = one_ ? t_.zeta.u : t_.zeta.v;
        const GradedBimodule& y = one_ ? t_.zeta.v : t_.zeta.u;
        const auto& pairing = one_ ? t_.zeta.mu : t_.zeta.nu;
        const Matrix& m = cached(key + detail::lbl(G, {g, h}), [&] {
            Cokernel q = cokernel(detail::balancing_over_identity(x, g, y, h));
            auto inv = inverse(pairing[sz(g)][sz(h)] * q.section);
            if (!inv) mismatch(s, "pairing is not invertible on this component");
            return q.section * *inv;
        });
        if (one_) return {{{StrandKind::M, g}, {StrandKind::N, h}}, &m};
        return {{{StrandKind::N, g}, {StrandKind::M, h}}, &m};
    }
    if (s.name == "sx" || s.name == "sy") {
        const int g = lab(0), a = in[0].degree, b = in[1].degree;
        need(0, side, a);
        need(1, side, b);
        const int agb = G.mul(G.mul(a, g), b), gi = G.inv(g);
        const bool x_ = s.name == "sx";
        const Matrix& m = cached(key + detail::lbl(G, {g, a, b}), [&] {
            const auto& A = f.algebra;
            Matrix out(A.dim(agb) * A.dim(gi), A.dim(a) * A.dim(b));
            for (std::size_t i = 0; i < A.dim(a); ++i)
                for (std::size_t j = 0; j < A.dim(b); ++j) {
                    Vec xv = unit_vec(A.dim(a), i), yv = unit_vec(A.dim(b), j);
                    Vec col = zero_vec(out.rows());
                    if (x_) {
                        for (std::size_t k = 0; k < A.dim(g); ++k) {
                            Vec left = A.mul(G.mul(a, g), A.mul(a, xv, g, unit_vec(A.dim(g), k)), b, yv);
                            col = vadd(col, tensor(left, f.q(g, k)));
                        }
                    } else {
                        const int ag = G.mul(a, g);
                        for (std::size_t k = 0; k < A.dim(ag); ++k) {
                            Vec left = A.mul(ag, unit_vec(A.dim(ag), k), b, yv);
                            Vec right = A.mul(G.inv(ag), f.q(ag, k), a, xv);
                            col = vadd(col, tensor(left, right));
                        }
                    }
                    out.set_col(i * A.dim(b) + j, col);
                }
            return out;
        });
        return {{{side, agb}, {side, gi}}, &m};
    }
    if (s.name == "cup") {
        const int g = lab(0);
        need(0, side, g);
        need(1, side, G.inv(g));
        const Matrix& m = cached(key + detail::lbl(G, {g}), [&] {
            const Matrix& gram = f.gram[sz(g)];
            Matrix out(1, gram.rows() * gram.cols());
            for (std::size_t i = 0; i < gram.rows(); ++i)
                for (std::size_t j = 0; j < gram.cols(); ++j) out(0, i * gram.cols() + j) = gram(i, j);
            return out;
        });
        return {{}, &m};
    }
    if (s.name == "cap") {
        const int g = lab(0), gi = G.inv(g);
        const Matrix& m = cached(key + detail::lbl(G, {g}), [&] {
            const auto& A = f.algebra;
            const Vec& z = f.z_or_throw();
            if (g == e) return Matrix::column(tensor(A.unit(), z));
            StrongGrading sg = is_strongly_graded(A);
            if (!sg.strongly_graded) throw Error("PackageIncomplete", "cap needs a strongly graded algebra");
            return Matrix::column(kron(Matrix::identity(A.dim(g)), A.left_mul(e, z, gi)) * sg.splitting[sz(g)]);
        });
        return {{{side, g}, {side, gi}}, &m};
    }
    if (s.name == "tw") {
        const int h = lab(0), g = lab(1);
        need(0, side, g);
        const int hg = G.conj(h, g);
        const Matrix& m = cached(key + detail::lbl(G, {h, g}), [&] {
            Matrix out(f.algebra.dim(hg), f.algebra.dim(g));
            for (std::size_t i = 0; i < f.algebra.dim(g); ++i) out.set_col(i, phi(f, h, g, unit_vec(f.algebra.dim(g), i)));
            return out;
        });
        return {{{side, hg}}, &m};
    }
    mismatch(s, "unknown generator");
}

namespace {

int arity_in(const Symbol& s) {
    static const std::map<std::string, int> in = {{"m", 2},  {"cm", 1},  {"f1", 1},  {"f2", 2}, {"f3", 1},
                                                  {"f4", 2}, {"sx", 2},  {"sy", 2},  {"cup", 2}, {"cap", 0},
                                                  {"tw", 1}, {"b", 2},   {"id", 1},  {"one", 0}};
    return in.at(s.name);
}

// Source inferred from the bottom slice's labels where they pin every strand down.
Signature infer_source(const GeneratorWord& w, const GroupTable& G) {
    Signature sig;
    if (w.slices.empty()) return sig;
    for (const Symbol& s : w.slices.back().symbols) {
        const StrandKind side = s.bside ? StrandKind::C : StrandKind::A;
        auto l = [&](std::size_t i) { return s.labels.at(i); };
        if (s.name == "one" || s.name == "cap") continue;
        if (s.name == "id" && s.labels.size() == 1) sig.push_back({side, l(0)});
        else if (s.name == "m") sig.insert(sig.end(), {{side, l(0)}, {side, l(1)}});
        else if (s.name == "cm") sig.push_back({side, G.mul(l(0), l(1))});
        else if (s.name == "f1") sig.push_back({StrandKind::A, G.mul(l(0), l(1))});
        else if (s.name == "f3") sig.push_back({StrandKind::C, G.mul(l(0), l(1))});
        else if (s.name == "f4") sig.insert(sig.end(), {{StrandKind::M, l(0)}, {StrandKind::N, l(1)}});
        else if (s.name == "f2") sig.insert(sig.end(), {{StrandKind::N, l(0)}, {StrandKind::M, l(1)}});
        else if (s.name == "cup") sig.insert(sig.end(), {{side, l(0)}, {side, G.inv(l(0))}});
        else if (s.name == "tw") sig.push_back({side, l(1)});
        else
            throw Error("SignatureMismatch", "line " + std::to_string(s.line) + ", column " + std::to_string(s.col) +
                                                 ": cannot infer the source signature; give one in braces");
    }
    return sig;
}

}  // namespace

Evaluation Evaluator::evaluate(const GeneratorWord& w, std::optional<Signature> source) {
    const GroupTable& G = t_.a.group();
    Signature src = source ? *source : (w.source ? *w.source : infer_source(w, G));
    if (src.size() != input_count(w))
        throw Error("SignatureMismatch", "source signature has " + std::to_string(src.size()) + " strands but the word takes " +
                                             std::to_string(input_count(w)));
    using Term = std::map<std::vector<std::size_t>, Scalar>;
    const std::size_t nsrc = dim(src);
    // One sparse vector per source basis vector.
    std::vector<Term> state(nsrc);
    for (std::size_t c = 0; c < nsrc; ++c) {
        std::vector<std::size_t> idx(src.size());
        std::size_t rest = c;
        for (std::size_t k = src.size(); k-- > 0;) {
            idx[k] = rest % dim(src[k]);
            rest /= dim(src[k]);
        }
        state[c][idx] = Scalar(1);
    }
    Signature cur = src;
    for (std::size_t level = w.slices.size(); level-- > 0;) {
        const Slice& sl = w.slices[level];
        // Resolve whole-slice transpositions to a permutation of positions.
        if (sl.symbols.size() == 1 && sl.symbols[0].swap_at >= 0) {
            const std::size_t at = static_cast<std::size_t>(sl.symbols[0].swap_at);
            if (at + 1 >= cur.size()) mismatch(sl.symbols[0], "transposition outside the strands");
            std::swap(cur[at], cur[at + 1]);
            for (auto& term : state) {
                Term next;
                for (auto& [idx, v] : term) {
                    auto j = idx;
                    std::swap(j[at], j[at + 1]);
                    next.emplace(std::move(j), v);
                }
                term = std::move(next);
            }
            continue;
        }
        struct Part {
            std::size_t start, nin;
            Signature in, out;
            const Matrix* m;
            std::vector<SparseCol> cols;
        };
        std::vector<Part> parts;
        std::size_t pos = 0;
        Signature next_sig;
        for (const Symbol& s : sl.symbols) {
            const std::size_t nin = static_cast<std::size_t>(arity_in(s));
            if (pos + nin > cur.size()) mismatch(s, "not enough strands");
            Signature in(cur.begin() + static_cast<std::ptrdiff_t>(pos), cur.begin() + static_cast<std::ptrdiff_t>(pos + nin));
            Typed ty = type_symbol(s, in);
            Part p{pos, nin, in, ty.out, ty.matrix, {}};
            if (p.m) {
                if (p.m->cols() != dim(in) || p.m->rows() != dim(ty.out)) mismatch(s, "generator matrix has the wrong shape");
                p.cols.resize(p.m->cols());
                for (std::size_t c = 0; c < p.m->cols(); ++c)
                    for (std::size_t r = 0; r < p.m->rows(); ++r)
                        if (!(*p.m)(r, c).is_zero()) p.cols[c].push_back({r, (*p.m)(r, c)});
            }
            next_sig.insert(next_sig.end(), ty.out.begin(), ty.out.end());
            parts.push_back(std::move(p));
            pos += nin;
        }
        if (pos != cur.size()) mismatch(sl.symbols.back(), "slice leaves strands unused");
        for (auto& term : state) {
            Term next;
            for (const auto& [idx, v] : term) {
                // Partial products over the parts processed so far.
                std::vector<std::pair<std::vector<std::size_t>, Scalar>> acc{{{}, v}};
                for (const Part& p : parts) {
                    std::vector<std::pair<std::vector<std::size_t>, Scalar>> grown;
                    if (!p.m) {  // id or b: permute the consumed indices
                        for (auto& [o, c] : acc) {
                            auto o2 = o;
                            for (std::size_t k = p.nin; k-- > 0;) o2.push_back(idx[p.start + (p.nin == 2 ? k : 0)]);
                            grown.push_back({std::move(o2), c});
                        }
                        acc = std::move(grown);
                        continue;
                    }
                    std::size_t col = 0;
                    for (std::size_t k = 0; k < p.nin; ++k) col = col * dim(p.in[k]) + idx[p.start + k];
                    for (const auto& [o, c] : acc)
                        for (const auto& [row, val] : p.cols[col]) {
                            auto o2 = o;
                            std::vector<std::size_t> digits(p.out.size());
                            std::size_t rest = row;
                            for (std::size_t k = p.out.size(); k-- > 0;) {
                                digits[k] = rest % dim(p.out[k]);
                                rest /= dim(p.out[k]);
                            }
                            o2.insert(o2.end(), digits.begin(), digits.end());
                            grown.push_back({std::move(o2), c * val});
                        }
                    acc = std::move(grown);
                }
                for (auto& [o, c] : acc) {
                    auto [it, fresh] = next.emplace(o, c);
                    if (!fresh) {
                        it->second += c;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
            term = std::move(next);
        }
        cur = std::move(next_sig);
    }
    Evaluation ev{src, cur, Matrix(dim(cur), nsrc)};
    for (std::size_t c = 0; c < nsrc; ++c)
        for (const auto& [idx, v] : state[c]) {
            std::size_t row = 0;
            for (std::size_t k = 0; k < cur.size(); ++k) row = row * dim(cur[k]) + idx[k];
            ev.matrix(row, c) = v;
        }
    return ev;
}

Evaluation evaluate(const GeneratorWord& w, const TheoryPackage& t, std::optional<Signature> source) {
    Evaluator ev(t);
    return ev.evaluate(w, std::move(source));
}

}  // namespace hft
