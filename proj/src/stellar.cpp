#include "hft/stellar.hpp"

#include <map>
#include <tuple>

#include "hft/error.hpp"
#include "tft_internal.hpp"

namespace hft {

namespace {

std::size_t sz(int g) { return static_cast<std::size_t>(g); }

bool square_inverse_pair(const Matrix& a, const Matrix& b) {
    // a: X -> Y and b: Y -> X compose to the identity on X.
    return a.cols() == b.rows() && b * a == Matrix::identity(a.cols());
}

bool shapes_ok(const GradedMap& f, const GradedBimodule& src, const GradedBimodule& dst) {
    const int n = src.group().order();
    if (f.blocks.size() != sz(n)) return false;
    for (int g = 0; g < n; ++g)
        if (f.blocks[sz(g)].rows() != dst.dim(g) || f.blocks[sz(g)].cols() != src.dim(g)) return false;
    return true;
}

// Pure tensors x (x) y (x) w inside a nested relative tensor product, either
// (X (x) Y) (x) W or X (x) (Y (x) W). Terms are keyed by (degree, basis index)
// of each factor.
using Term = std::tuple<int, std::size_t, int, std::size_t, int, std::size_t>;

struct Triple {
    const GradedBimodule &x, &y, &w;
    bool left_nested;
    TensorProduct inner, outer;

    Triple(const GradedBimodule& x_, const GradedBimodule& y_, const GradedBimodule& w_, bool left)
        : x(x_), y(y_), w(w_), left_nested(left),
          inner(left ? tensor_over(x_, y_) : tensor_over(y_, w_)),
          outer(left ? tensor_over(inner.result, w_) : tensor_over(x_, inner.result)) {}

    const GroupTable& G() const { return x.group(); }

    std::map<Term, Scalar> lift(int g, const Vec& v) const {
        std::map<Term, Scalar> out;
        Vec raw = outer.section[sz(g)] * v;
        const auto& first = left_nested ? inner.result : x;
        const auto& second = left_nested ? w : inner.result;
        for (int h = 0; h < G().order(); ++h) {
            const int rest = G().mul(G().inv(h), g);
            for (std::size_t i = 0; i < first.dim(h); ++i)
                for (std::size_t j = 0; j < second.dim(rest); ++j) {
                    const Scalar& c = raw[outer.offset[sz(g)][sz(h)] + i * second.dim(rest) + j];
                    if (c.is_zero()) continue;
                    const int in_deg = left_nested ? h : rest;
                    const std::size_t in_idx = left_nested ? i : j;
                    Vec r = inner.section[sz(in_deg)].col(in_idx);
                    const auto& a = left_nested ? x : y;
                    const auto& b = left_nested ? y : w;
                    for (int d = 0; d < G().order(); ++d) {
                        const int dr = G().mul(G().inv(d), in_deg);
                        for (std::size_t p = 0; p < a.dim(d); ++p)
                            for (std::size_t q = 0; q < b.dim(dr); ++q) {
                                const Scalar& c2 = r[inner.offset[sz(in_deg)][sz(d)] + p * b.dim(dr) + q];
                                if (c2.is_zero()) continue;
                                Term t = left_nested ? Term{d, p, dr, q, rest, j} : Term{h, i, d, p, dr, q};
                                out[t] += c * c2;
                            }
                    }
                }
        }
        return out;
    }

    Vec project(int g, const std::map<Term, Scalar>& terms) const {
        Vec raw = zero_vec(outer.raw_dim[sz(g)]);
        for (const auto& [t, c] : terms) {
            if (c.is_zero()) continue;
            const auto [dx, ix, dy, iy, dw, iw] = t;
            if (left_nested) {
                const int h = G().mul(dx, dy);
                Vec in = inner.projection[sz(h)].col(inner.offset[sz(h)][sz(dx)] + ix * y.dim(dy) + iy);
                for (std::size_t k = 0; k < in.size(); ++k)
                    if (!in[k].is_zero()) raw[outer.offset[sz(g)][sz(h)] + k * w.dim(dw) + iw] += c * in[k];
            } else {
                const int h = G().mul(dy, dw);
                Vec in = inner.projection[sz(h)].col(inner.offset[sz(h)][sz(dy)] + iy * w.dim(dw) + iw);
                for (std::size_t k = 0; k < in.size(); ++k)
                    if (!in[k].is_zero())
                        raw[outer.offset[sz(g)][sz(dx)] + ix * inner.result.dim(h) + k] += c * in[k];
            }
        }
        return outer.projection[sz(g)] * raw;
    }

    const GradedBimodule& result() const { return outer.result; }
};

// x (x) y (x) w -> w (x) f(y) (x) x with the outer factors read in the conjugate
// degree (same basis), which is how conj(X (x) Y (x) W) = conj(W) (x) conj(Y) (x) conj(X)
// appears once the outer factors are themselves conjugates of each other.
GradedMap reverse_through(const Triple& t, const GradedMap& f) {
    const auto& G = t.G();
    const int n = G.order();
    GradedMap out;
    for (int g = 0; g < n; ++g) {
        const int gi = G.inv(g);
        Matrix m(t.result().dim(gi), t.result().dim(g));
        for (std::size_t b = 0; b < t.result().dim(g); ++b) {
            std::map<Term, Scalar> img;
            for (const auto& [term, c] : t.lift(g, unit_vec(t.result().dim(g), b))) {
                const auto [dx, ix, dy, iy, dw, iw] = term;
                Vec fy = f.blocks[sz(dy)].col(iy);
                for (std::size_t k = 0; k < fy.size(); ++k)
                    if (!fy[k].is_zero()) img[Term{G.inv(dw), iw, G.inv(dy), k, G.inv(dx), ix}] += c * fy[k];
            }
            m.set_col(b, t.project(gi, img));
        }
        out.blocks.push_back(std::move(m));
    }
    return out;
}

void require_involutory(const GroupTable& G) {
    if (!G.is_involutory()) throw Error("NotInvolutory", "unoriented structures need every element of order at most 2");
}

}  // namespace

std::vector<Matrix> transpose_map(const GroupTable& group, const MatrixModelSpec& spec) {
    check_model_data(group, spec);
    auto a = matrix_model(group, spec);
    std::vector<Matrix> out;
    for (int g = 0; g < group.order(); ++g) {
        Matrix t(a.dim(g), a.dim(g));
        for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
            const int src = spec.sigma.empty() ? static_cast<int>(b) : spec.sigma[sz(group.inv(g))][b];
            if (spec.blocks[sz(src)] != spec.blocks[b])
                throw Error("DegreeMismatch", "transpose needs square blocks in degree " + group.name(g));
            const std::size_t k = spec.blocks[b];
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c)
                    t(matrix_model_index(group, spec, g, b, c, r), matrix_model_index(group, spec, g, b, r, c)) =
                        Scalar(1);
        }
        out.push_back(std::move(t));
    }
    return out;
}

StellarData trivial_stellar(const GradedAlgebra& k) {
    require_involutory(k.group());
    if (!(opposite(k) == k)) throw Error("AlgebraMismatch", "the trivial stellar structure needs K^op = K");
    auto zeta = identity_context(k);
    GradedMap id;
    for (int g = 0; g < k.group().order(); ++g) id.blocks.push_back(Matrix::identity(k.dim(g)));
    return {k, std::move(zeta), id, id};
}

StellarData anti_involution_stellar(const GradedAlgebra& k, const std::vector<Matrix>& f) {
    require_involutory(k.group());
    auto zeta = context_from_isomorphism(opposite(k), k, f);
    GradedMap m{f};
    return {k, std::move(zeta), m, m};
}

Report validate_stellar(const StellarData& s) {
    Report rep;
    const auto& G = s.group();
    const int n = G.order();
    rep.add("involutory", G.is_involutory(), G.is_involutory() ? "" : "group has an element of order > 2");
    const bool sides = s.zeta.small() == s.base && s.zeta.big() == opposite(s.base);
    rep.add("opposite-base", sides, sides ? "" : "context must join K^op (big) and K (small)");
    if (!sides) return rep;
    rep.merge(validate_context(s.zeta), "context/");

    const auto ubar = conjugate(s.zeta.u);
    const auto vbar = conjugate(s.zeta.v);
    const bool shapes = shapes_ok(s.sigma_u, s.zeta.u, ubar) && shapes_ok(s.sigma_v, s.zeta.v, vbar);
    rep.add("sigma-shapes", shapes, shapes ? "" : "sigma blocks must map degree g to degree g^-1");
    if (!shapes) return rep;

    const bool bim = is_bimodule_map(s.zeta.u, ubar, s.sigma_u) && is_bimodule_map(s.zeta.v, vbar, s.sigma_v);
    rep.add("sigma-bimodule", bim, bim ? "" : "sigma does not commute with the actions");
    const bool eq = bim && equivalent_contexts(s.sigma_u, s.sigma_v, s.zeta, conjugate_context(s.zeta));
    rep.add("sigma-equivalence", eq, eq ? "" : "sigma does not intertwine the pairings with those of the conjugate");

    std::string w;
    for (int g = 0; g < n && w.empty(); ++g) {
        const int gi = G.inv(g);
        if (!square_inverse_pair(s.sigma_u.blocks[sz(g)], s.sigma_u.blocks[sz(gi)]))
            w = "sigma on U is not involutive in degree " + G.name(g);
        else if (!square_inverse_pair(s.sigma_v.blocks[sz(g)], s.sigma_v.blocks[sz(gi)]))
            w = "sigma on V is not involutive in degree " + G.name(g);
    }
    rep.add("involution", w.empty(), w);
    return rep;
}

MoritaContext compose_contexts(const MoritaContext& p, const MoritaContext& q) {
    if (!(p.small() == q.big())) throw Error("AlgebraMismatch", "contexts do not share the middle algebra");
    const auto& G = p.group();
    const int n = G.order();
    auto tu = tensor_over(p.u, q.u);
    auto tv = tensor_over(q.v, p.v);
    const auto& X = p.big();
    const auto& Z = q.small();
    std::vector<std::vector<Matrix>> mu(sz(n)), nu(sz(n));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const std::size_t ru = tu.raw_dim[sz(g)], rv = tv.raw_dim[sz(h)];
            // mu: (up (x) uq) (x) (vq (x) vp) -> mu_p(up (x) mu_q(uq (x) vq) vp)
            Matrix rmu(X.dim(G.mul(g, h)), ru * rv);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const int a2 = G.mul(G.inv(a), g), b2 = G.mul(G.inv(b), h);
                    const int y = G.mul(a2, b), c = G.mul(y, b2);
                    const std::size_t dup = p.u.dim(a), duq = q.u.dim(a2), dvq = q.v.dim(b), dvp = p.v.dim(b2);
                    Matrix blk = p.mu[sz(a)][sz(c)] *
                                 kron(Matrix::identity(dup),
                                      p.v.left_act(y, b2) * kron(q.mu[sz(a2)][sz(b)], Matrix::identity(dvp)));
                    for (std::size_t i = 0; i < dup * duq; ++i)
                        for (std::size_t j = 0; j < dvq * dvp; ++j)
                            for (std::size_t r = 0; r < blk.rows(); ++r)
                                rmu(r, (tu.offset[sz(g)][sz(a)] + i) * rv + tv.offset[sz(h)][sz(b)] + j) =
                                    blk(r, i * dvq * dvp + j);
                }
            mu[sz(g)].push_back(rmu * kron(tu.section[sz(g)], tv.section[sz(h)]));

            // nu: (vq (x) vp) (x) (up (x) uq) -> nu_q(vq nu_p(vp (x) up) (x) uq)
            const std::size_t rv2 = tv.raw_dim[sz(g)], ru2 = tu.raw_dim[sz(h)];
            Matrix rnu(Z.dim(G.mul(g, h)), rv2 * ru2);
            for (int b = 0; b < n; ++b)
                for (int a = 0; a < n; ++a) {
                    const int b2 = G.mul(G.inv(b), g), a2 = G.mul(G.inv(a), h);
                    const int y = G.mul(b2, a), c = G.mul(b, y);
                    const std::size_t dvq = q.v.dim(b), dvp = p.v.dim(b2), dup = p.u.dim(a), duq = q.u.dim(a2);
                    Matrix blk = q.nu[sz(c)][sz(a2)] *
                                 kron(q.v.right_act(b, y) * kron(Matrix::identity(dvq), p.nu[sz(b2)][sz(a)]),
                                      Matrix::identity(duq));
                    for (std::size_t i = 0; i < dvq * dvp; ++i)
                        for (std::size_t j = 0; j < dup * duq; ++j)
                            for (std::size_t r = 0; r < blk.rows(); ++r)
                                rnu(r, (tv.offset[sz(g)][sz(b)] + i) * ru2 + tu.offset[sz(h)][sz(a)] + j) =
                                    blk(r, i * dup * duq + j);
                }
            nu[sz(g)].push_back(rnu * kron(tv.section[sz(g)], tu.section[sz(h)]));
        }
    return make_context(tu.result, tv.result, std::move(mu), std::move(nu));
}

StellarData transfer_stellar(const MoritaContext& rho, const StellarData& s) {
    if (!validate_context(rho).pass()) throw Error("ContextInvalid", "transfer context fails validation");
    if (!(rho.big() == s.base)) throw Error("ContextInvalid", "transfer context must start at the stellar base");
    auto cc = conjugate_context(rho);
    if (!(cc.small() == s.zeta.big())) throw Error("ContextInvalid", "conjugate context does not meet K^op");
    auto half = compose_contexts(cc, s.zeta);
    auto zeta = compose_contexts(half, rho);

    Triple tu(cc.u, s.zeta.u, rho.u, true);
    Triple tv(rho.v, s.zeta.v, cc.v, false);
    if (!(tu.result() == zeta.u) || !(tv.result() == zeta.v))
        throw Error("ContextInvalid", "transported modules do not match the composite context");
    StellarData out{rho.small(), std::move(zeta), reverse_through(tu, s.sigma_u), reverse_through(tv, s.sigma_v)};
    auto rep = validate_stellar(out);
    if (!rep.pass()) throw Error("ContextInvalid", "transported stellar data fails validation: " + rep.to_json().dump());
    return out;
}

Matrix separability_idempotent(const GradedAlgebra& a) {
    const int e = a.group().identity();
    const std::size_t d = a.dim(e);
    // Unknown x in A_e (x) A_e: (l (x) 1) x = x (1 (x) l) for every basis l, swap(x) = x and m(x) = 1.
    Matrix sys(0, d * d);
    for (std::size_t k = 0; k < d; ++k) {
        Vec l = unit_vec(d, k);
        Matrix rel = kron(a.left_mul(e, l, e), Matrix::identity(d)) - kron(Matrix::identity(d), a.right_mul(e, l, e));
        sys = sys.rows() == 0 ? rel : vstack(sys, rel);
    }
    // The symmetric one is unique for a separable algebra.
    sys = vstack(sys, swap_matrix(d, d) - Matrix::identity(d * d));
    Matrix m = a.mult(e, e);
    Vec rhs = zero_vec(sys.rows());
    for (const auto& x : a.unit()) rhs.push_back(x);
    auto sol = solve(vstack(sys, m), rhs);
    if (!sol) throw Error("ContextInvalid", "identity component is not separable");
    return Matrix::column(*sol);
}

// x (x) y -> sum_i x p_i (x) q_i y over the symmetric separability idempotent of the
// middle algebra: the canonical representative of a class in M_g (x)_{R_e} N_h.
static Matrix average_over_identity(const GradedBimodule& m, int g, const GradedBimodule& n, int h) {
    const auto& r = m.right();
    const int e = r.group().identity();
    const std::size_t d = r.dim(e);
    const Matrix sep = separability_idempotent(r);
    Matrix avg(m.dim(g) * n.dim(h), m.dim(g) * n.dim(h));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Scalar& c = sep(i * d + j, 0);
            if (!c.is_zero())
                avg = avg + kron(m.right_matrix(g, e, unit_vec(d, i)), n.left_matrix(e, unit_vec(d, j), h)).scaled(c);
        }
    return avg;
}

// Canonical preimage under a pairing X_g (x) Y_h -> target, as a matrix on target vectors.
static Matrix canonical_lift(const std::vector<std::vector<Matrix>>& pairing, const GradedBimodule& x, int g,
                      const GradedBimodule& y, int h) {
    Cokernel q = cokernel(detail::balancing_over_identity(x, g, y, h));
    auto inv = inverse(pairing[sz(g)][sz(h)] * q.section);
    if (!inv) throw Error("ContextInvalid", "pairing is not invertible on a single component");
    return average_over_identity(x, g, y, h) * q.section * *inv;
}

Matrix reversal(const StellarData& s, int g) {
    const auto& G = s.group();
    const auto& u = s.zeta.u;
    const auto& v = s.zeta.v;
    const int e = G.identity(), gi = G.inv(g);
    // K_g is L_{g^-1} as a vector space: lift through mu over U_e (x) V_{g^-1}, apply
    // sigma on both legs and multiply back in L, which is the conjugate's nu after the swap.
    Matrix lift = canonical_lift(s.zeta.mu, u, e, v, gi);
    return s.zeta.mu[sz(e)][sz(g)] * kron(s.sigma_u.blocks[sz(e)], s.sigma_v.blocks[sz(gi)]) * lift;
}

Vec crosscap(const StellarData& s, int g) {
    const auto& G = s.group();
    const auto& u = s.zeta.u;
    const auto& v = s.zeta.v;
    const int gi = G.inv(g);
    // tau(1) supported on V_g (x) U_{g^-1}; sigma on the V leg, then mu: U (x) V -> L.
    Vec t = canonical_lift(s.zeta.nu, v, g, u, gi) * s.base.unit();
    Vec flipped = kron(s.sigma_v.blocks[sz(g)], Matrix::identity(u.dim(gi))) * t;
    return s.zeta.mu[sz(gi)][sz(gi)] * (swap_matrix(v.dim(gi), u.dim(gi)) * flipped);
}

Report check_quasi_biangular_compatibility(const StellarData& s, const FrobeniusPackage& f) {
    Report rep;
    const auto& G = s.group();
    const int n = G.order(), e = G.identity();
    const bool same = f.algebra == s.base;
    rep.add("same-algebra", same, same ? "" : "Frobenius package lives on a different algebra");
    if (!same) return rep;
    const bool zok = f.z && verify_z(f, *f.z);
    rep.add("z", zok, zok ? "" : "the cap element 1 (x) z does not multiply to a valid z");
    if (!zok) return rep;
    const Vec& z = *f.z;

    std::vector<Matrix> t;
    for (int g = 0; g < n; ++g) t.push_back(reversal(s, g));

    std::string w;
    for (int g = 0; g < n && w.empty(); ++g) {
        const int gi = G.inv(g);
        if (!(t[sz(g)].transpose() * f.gram[sz(gi)] == f.gram[sz(g)] * t[sz(g)]))
            w = "eta(T x, y) != eta(x, T y) in degree " + G.name(g);
    }
    rep.add("eta", w.empty(), w);

    const Matrix& te = t[sz(e)];
    const Vec one = f.algebra.unit();
    const bool cap = tensor(te * one, z) == tensor(one, te * z);
    rep.add("cap", cap, cap ? "" : "(T (x) 1)(1 (x) z) != (1 (x) T)(1 (x) z)");

    w.clear();
    for (int g = 0; g < n && w.empty(); ++g) {
        const int gi = G.inv(g);
        const Vec cop = f.copairing(g);
        if (!(kron(t[sz(g)], Matrix::identity(f.algebra.dim(gi))) * cop ==
              kron(Matrix::identity(f.algebra.dim(g)), t[sz(gi)]) * cop))
            w = "(T (x) 1) and (1 (x) T) differ on the saddle element in degree " + G.name(g);
    }
    rep.add("saddle", w.empty(), w);
    return rep;
}

ExtendedCrossedPackage extract_phi_theta(const StellarData& s, const FrobeniusPackage& f) {
    auto v = validate_stellar(s);
    if (!v.pass()) throw Error("IncompatibleStellar", "stellar data fails validation: " + v.to_json().dump());
    auto comp = check_quasi_biangular_compatibility(s, f);
    if (!comp.pass()) throw Error("IncompatibleStellar", "not compatible: " + comp.to_json().dump());
    auto c = g_center(f);
    const auto& G = s.group();
    const auto& A = f.algebra;
    const int n = G.order(), e = G.identity();
    const Vec& z = *f.z;
    auto to_center = [&](int g, const Vec& x) { return c.coords(g, psi(f, g, A.mul(e, z, g, x))); };

    ExtendedCrossedPackage out{c, {}, {}};
    for (int g = 0; g < n; ++g) {
        const int gi = G.inv(g);
        Matrix t = reversal(s, g);
        Matrix phi(c.dim(gi), c.dim(g));
        for (std::size_t j = 0; j < c.dim(g); ++j) phi.set_col(j, to_center(gi, t * c.embed(g, unit_vec(c.dim(g), j))));
        out.phi.push_back(std::move(phi));

        out.theta.push_back(to_center(e, crosscap(s, g)));
    }
    return out;
}

Report verify_extended_crossed(const ExtendedCrossedPackage& p) {
    const auto& c = p.crossed;
    const auto& G = p.group();
    const int n = G.order(), e = G.identity();
    Report rep;
    auto basis = [&](int g, std::size_t i) { return unit_vec(c.dim(g), i); };
    auto Phi = [&](int g, const Vec& x) { return p.phi[sz(g)] * x; };
    auto th = [&](int g) -> const Vec& { return p.theta[sz(g)]; };
    auto fail = [](std::string& w, std::string msg) {
        if (w.empty()) w = std::move(msg);
    };

    std::string w;
    for (int g = 0; g < n; ++g) {
        if (p.phi[sz(g)].rows() != c.dim(g) || p.phi[sz(g)].cols() != c.dim(g)) fail(w, "Phi leaves degree " + G.name(g));
        else if (Phi(e, th(g)) != th(g)) fail(w, "Phi(theta_" + G.name(g) + ") != theta");
    }
    rep.add("(1)", w.empty(), w);
    if (!w.empty()) return rep;

    w.clear();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (!(p.phi[sz(G.conj(g, h))] * c.phi[sz(g)][sz(h)] == c.phi[sz(g)][sz(h)] * p.phi[sz(h)]))
                fail(w, "Phi does not commute with phi_" + G.name(g) + " on degree " + G.name(h));
    rep.add("(2)", w.empty(), w);

    w.clear();
    if (Phi(e, c.unit) != c.unit) fail(w, "Phi(1) != 1");
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (std::size_t i = 0; i < c.dim(g); ++i)
                for (std::size_t j = 0; j < c.dim(h); ++j) {
                    Vec vw = c.mul(g, basis(g, i), h, basis(h, j));
                    if (Phi(G.mul(g, h), vw) != c.mul(h, Phi(h, basis(h, j)), g, Phi(g, basis(g, i))))
                        fail(w, "Phi(vw) != Phi(w)Phi(v) for degrees " + G.name(g) + ", " + G.name(h));
                }
    rep.add("(3)", w.empty(), w);

    w.clear();
    for (int g = 0; g < n; ++g)
        if (!(p.phi[sz(g)] * p.phi[sz(g)] == Matrix::identity(c.dim(g)))) fail(w, "Phi^2 != id in degree " + G.name(g));
    rep.add("(4)", w.empty(), w);

    w.clear();
    for (int g = 0; g < n; ++g) {
        const int gi = G.inv(g);
        for (std::size_t i = 0; i < c.dim(g); ++i)
            for (std::size_t j = 0; j < c.dim(gi); ++j)
                if (c.eta(g, Phi(g, basis(g, i)), gi, Phi(gi, basis(gi, j))) != c.eta(g, basis(g, i), gi, basis(gi, j)))
                    fail(w, "eta(Phi v, Phi w) != eta(v, w) in degree " + G.name(g));
    }
    rep.add("(5)", w.empty(), w);

    auto zf = center_frobenius(c);
    w.clear();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const int gh = G.mul(g, h);
            for (std::size_t k = 0; k < c.dim(gh); ++k) {
                Vec v = basis(gh, k);
                Vec d = coproduct(zf, g, h, v);
                for (int l = 0; l < n; ++l) {
                    const Matrix& pg = c.phi[sz(l)][sz(g)];
                    Vec lhs1 = zero_vec(c.dim(gh)), lhs2 = lhs1;
                    for (std::size_t a = 0; a < c.dim(g); ++a)
                        for (std::size_t b = 0; b < c.dim(h); ++b) {
                            const Scalar& coef = d[a * c.dim(h) + b];
                            if (coef.is_zero()) continue;
                            Vec x = basis(g, a), y = basis(h, b);
                            lhs1 = vadd(lhs1, vscale(c.mul(g, Phi(g, pg * x), h, y), coef));
                            lhs2 = vadd(lhs2, vscale(c.mul(g, pg * x, h, Phi(h, y)), coef));
                        }
                    auto rhs = [&](int first) {
                        Vec t = c.mul(e, c.mul(e, th(first), e, th(l)), gh, v);
                        return c.phi[sz(l)][sz(gh)] * t;
                    };
                    if (lhs1 != rhs(G.mul(g, l)))
                        fail(w, "first coproduct equation fails at g=" + G.name(g) + " h=" + G.name(h) + " l=" + G.name(l));
                    if (lhs2 != rhs(G.mul(h, l)))
                        fail(w, "second coproduct equation fails at g=" + G.name(g) + " h=" + G.name(h) + " l=" + G.name(l));
                }
            }
        }
    rep.add("(6)", w.empty(), w);

    w.clear();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const int hg = G.mul(h, g);
            for (std::size_t i = 0; i < c.dim(g); ++i) {
                Vec v = basis(g, i);
                Vec lhs = Phi(g, c.mul(e, th(h), g, v));
                Vec rhs = c.phi[sz(hg)][sz(g)] * c.mul(e, th(hg), g, v);
                if (lhs != rhs) fail(w, "Phi(theta_h v) != phi_hg(theta_hg v) at g=" + G.name(g) + " h=" + G.name(h));
            }
        }
    rep.add("(7)", w.empty(), w);

    w.clear();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (c.phi[sz(h)][sz(e)] * th(g) != th(g)) fail(w, "phi_" + G.name(h) + "(theta_" + G.name(g) + ") != theta");
    rep.add("(8)", w.empty(), w);

    w.clear();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int l = 0; l < n; ++l) {
                const int gh = G.mul(g, h), hl = G.mul(h, l);
                const std::size_t d = c.dim(gh);
                // b_i = basis of K_gh; solve sum_i eta(b_i, v) a_i = phi_hl(v) for the a_i.
                Vec q1 = zero_vec(c.dim(e));
                if (d > 0) {
                    Matrix gram(d, d);
                    for (std::size_t i = 0; i < d; ++i)
                        for (std::size_t j = 0; j < d; ++j) gram(i, j) = c.eta(gh, basis(gh, i), gh, basis(gh, j));
                    auto gi = inverse(gram);
                    if (!gi) {
                        fail(w, "pairing on degree " + G.name(gh) + " is degenerate");
                        continue;
                    }
                    Matrix as = c.phi[sz(hl)][sz(gh)] * *gi;
                    for (std::size_t i = 0; i < d; ++i) q1 = vadd(q1, c.mul(gh, as.col(i), gh, basis(gh, i)));
                }
                Vec lhs = c.mul(e, c.mul(e, th(g), e, th(h)), e, th(l));
                Vec rhs = c.mul(e, q1, e, th(G.mul(gh, l)));
                if (lhs != rhs)
                    fail(w, "theta_g theta_h theta_l != q(1) theta_ghl at " + G.name(g) + "," + G.name(h) + "," + G.name(l));
            }
    rep.add("(9)", w.empty(), w);
    return rep;
}

std::pair<Scalar, Scalar> klein_bottle_values(const ExtendedCrossedPackage& p, int g, int h) {
    const auto& c = p.crossed;
    const int e = p.group().identity();
    auto counit = [&](const Vec& x) {
        Scalar s(0);
        for (std::size_t i = 0; i < x.size(); ++i) s += c.trace[i] * x[i];
        return s;
    };
    return {counit(c.mul(e, p.theta[sz(g)], e, p.theta[sz(h)])), counit(c.mul(e, p.theta[sz(h)], e, p.theta[sz(g)]))};
}

UnorientedGenerators unoriented_generators(const StellarData& s) {
    const auto& G = s.group();
    UnorientedGenerators out{s.sigma_v, s.sigma_u, {}, {}};
    for (int g = 0; g < G.order(); ++g) {
        out.sigma1_inv.blocks.push_back(s.sigma_v.blocks[sz(G.inv(g))]);
        out.sigma2_inv.blocks.push_back(s.sigma_u.blocks[sz(G.inv(g))]);
    }
    return out;
}

TheoryPackage stellar_theory(const FrobeniusPackage& f, const StellarData& s) {
    return make_theory(f, f, reverse_context(s.zeta));
}

Report unoriented_relation_suite(const TheoryPackage& t, const StellarData& s) {
    return unoriented_relation_suite(t, s, unoriented_generators(s));
}

Report unoriented_relation_suite(const TheoryPackage& t, const StellarData& s, const UnorientedGenerators& gens) {
    Report rep;
    const auto& G = s.group();
    const int n = G.order();
    const bool base = t.a.algebra == s.base && t.zeta.u == s.zeta.v && t.zeta.v == s.zeta.u;
    rep.add("theory-matches", base, base ? "" : "theory package is not built on the stellar context");
    auto pre = validate_stellar(s);
    rep.add("stellar-valid", pre.pass(), pre.pass() ? "" : pre.to_json().dump());
    if (!base || !pre.pass()) return rep;

    const auto& u = s.zeta.u;
    const auto& v = s.zeta.v;
    const auto ubar = conjugate(u), vbar = conjugate(v);

    auto involutive = [&](const GradedMap& f, const GradedMap& finv, const GradedBimodule& m, const char* name) {
        std::string w;
        const bool shapes = shapes_ok(f, m, conjugate(m)) && shapes_ok(finv, conjugate(m), m);
        if (!shapes) w = std::string(name) + " has the wrong block shapes";
        for (int g = 0; g < n && w.empty(); ++g) {
            if (!square_inverse_pair(f.blocks[sz(g)], finv.blocks[sz(g)]))
                w = std::string(name) + "' o " + name + " != id in degree " + G.name(g);
            else if (!square_inverse_pair(finv.blocks[sz(g)], f.blocks[sz(g)]))
                w = std::string(name) + " o " + name + "' != id in degree " + G.name(g);
        }
        rep.add(std::string(name) + "-involution", w.empty(), w);
        return shapes;
    };
    const bool ok1 = involutive(gens.sigma1, gens.sigma1_inv, v, "sigma1");
    const bool ok2 = involutive(gens.sigma2, gens.sigma2_inv, u, "sigma2");
    if (!ok1 || !ok2) return rep;

    const bool bim = is_bimodule_map(v, vbar, gens.sigma1) && is_bimodule_map(u, ubar, gens.sigma2) &&
                     is_bimodule_map(vbar, v, gens.sigma1_inv) && is_bimodule_map(ubar, u, gens.sigma2_inv);
    rep.add("sigma-bimodule", bim, bim ? "" : "an unoriented generator is not a bimodule map");

    // conj(conj(M)) = M, and M'' -> M' -> M given by conj(sigma') then sigma' is the identity.
    std::string w;
    if (!(conjugate(ubar) == u) || !(conjugate(vbar) == v)) w = "double conjugate differs from the module";
    for (int g = 0; g < n && w.empty(); ++g) {
        const int gi = G.inv(g);
        if (!(gens.sigma1_inv.blocks[sz(g)] * gens.sigma1_inv.blocks[sz(gi)] == Matrix::identity(v.dim(g))))
            w = "V'' -> V' -> V is not the identity in degree " + G.name(g);
        else if (!(gens.sigma2_inv.blocks[sz(g)] * gens.sigma2_inv.blocks[sz(gi)] == Matrix::identity(u.dim(g))))
            w = "U'' -> U' -> U is not the identity in degree " + G.name(g);
    }
    rep.add("double-conjugate", w.empty(), w);

    const bool eq = equivalent_contexts(gens.sigma2, gens.sigma1, s.zeta, conjugate_context(s.zeta));
    rep.add("equivalence", eq, eq ? "" : "generators do not form an equivalence with the conjugate context");

    auto comp = check_quasi_biangular_compatibility(s, t.a);
    rep.merge(comp, "compatibility/");
    if (!comp.pass() || !rep.pass()) return rep;

    auto ext = extract_phi_theta(s, t.a);
    rep.merge(verify_extended_crossed(ext), "extended/");
    w.clear();
    for (int g = 0; g < n && w.empty(); ++g)
        for (int h = 0; h < n && w.empty(); ++h) {
            auto [a, b] = klein_bottle_values(ext, g, h);
            if (a != b) w = "Klein bottle orderings differ at " + detail::lbl(G, {g, h});
        }
    rep.add("klein-bottle", w.empty(), w);
    return rep;
}

}  // namespace hft
