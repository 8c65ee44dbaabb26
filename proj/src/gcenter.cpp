#include "hft/gcenter.hpp"
#include <functional>

#include "hft/error.hpp"

namespace hft {

namespace {

std::size_t sz(int g) { return static_cast<std::size_t>(g); }

Matrix linear_map(std::size_t dom, const std::function<Vec(const Vec&)>& fn, std::size_t cod) {
    Matrix m = Matrix::zero(cod, dom);
    for (std::size_t k = 0; k < dom; ++k) m.set_col(k, fn(unit_vec(dom, k)));
    return m;
}

}  // namespace

Vec psi(const FrobeniusPackage& f, int g, const Vec& a) { return f.sandwich(f.group().identity(), g, a); }

Elem psi(const FrobeniusPackage& f, const Elem& a) {
    Elem out(a.size());
    for (std::size_t g = 0; g < a.size(); ++g) out[g] = psi(f, static_cast<int>(g), a[g]);
    return out;
}

Vec phi(const FrobeniusPackage& f, int g, int h, const Vec& a) {
    const int e = f.group().identity();
    return f.sandwich(g, h, f.algebra.mul(h, a, e, f.z_or_throw()));
}

Vec CrossedPackage::coords(int g, const Vec& v) const {
    const auto& piv = pivots[sz(g)];
    Vec c(piv.size());
    for (std::size_t j = 0; j < piv.size(); ++j) c[j] = v[piv[j]];
    if (embed(g, c) != v) throw Error("NotCentral", "vector is not in the G-center at degree " + group().name(g));
    return c;
}

Vec CrossedPackage::mul(int g, const Vec& x, int h, const Vec& y) const {
    return mult[sz(g)][sz(h)] * tensor(x, y);
}

Scalar CrossedPackage::eta(int g, const Vec& x, int h, const Vec& y) const {
    if (group().mul(g, h) != group().identity()) return Scalar(0);
    Vec p = mul(g, x, h, y);
    Scalar s(0);
    for (std::size_t i = 0; i < p.size(); ++i) s += trace[i] * p[i];
    return s;
}

CrossedPackage g_center(const FrobeniusPackage& f_in) {
    FrobeniusPackage f = f_in;
    if (!f.z && !attach_z(f)) throw Error("NotQuasiBiangular", "no central z solves the quasi-biangular equations");
    if (!verify_z(f, *f.z)) throw Error("NotQuasiBiangular", "supplied z fails centrality or normalization");
    if (!is_strongly_graded(f.algebra).strongly_graded)
        throw Error("NotQuasiBiangular", "algebra is not strongly graded");

    const auto& G = f.group();
    const auto& A = f.algebra;
    const int n = G.order();
    const int e = G.identity();
    CrossedPackage c{f, {}, {}, {}, {}, {}, {}};
    c.center_basis.resize(sz(n));
    c.pivots.resize(sz(n));
    for (int g = 0; g < n; ++g) {
        Matrix img = linear_map(A.dim(g), [&](const Vec& v) { return psi(f, g, v); }, A.dim(g));
        auto r = rref(img.transpose());
        c.center_basis[sz(g)] = r.reduced.block(0, 0, r.rank, A.dim(g)).transpose();
        c.pivots[sz(g)] = std::vector<std::size_t>(r.pivots.begin(), r.pivots.begin() + static_cast<long>(r.rank));
    }

    const Vec zinv = z_inverse(f);
    c.mult.assign(sz(n), std::vector<Matrix>(sz(n)));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const int gh = G.mul(g, h);
            Matrix m = Matrix::zero(c.dim(gh), c.dim(g) * c.dim(h));
            for (std::size_t i = 0; i < c.dim(g); ++i)
                for (std::size_t j = 0; j < c.dim(h); ++j) {
                    Vec xy = A.mul(g, c.center_basis[sz(g)].col(i), h, c.center_basis[sz(h)].col(j));
                    m.set_col(i * c.dim(h) + j, c.coords(gh, A.mul(gh, xy, e, zinv)));
                }
            c.mult[sz(g)][sz(h)] = std::move(m);
        }

    c.phi.assign(sz(n), std::vector<Matrix>(sz(n)));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const int target = G.conj(g, h);
            Matrix m = Matrix::zero(c.dim(target), c.dim(h));
            for (std::size_t j = 0; j < c.dim(h); ++j)
                m.set_col(j, c.coords(target, phi(f, g, h, c.center_basis[sz(h)].col(j))));
            c.phi[sz(g)][sz(h)] = std::move(m);
        }

    c.unit = c.coords(e, *f.z);
    c.trace = c.center_basis[sz(e)].transpose() * f.trace;
    return c;
}

GradedAlgebra center_algebra(const CrossedPackage& c) {
    std::vector<std::size_t> dims;
    for (int g = 0; g < c.group().order(); ++g) dims.push_back(c.dim(g));
    return GradedAlgebra::build(c.group(), dims, c.mult, c.unit);
}

FrobeniusPackage center_frobenius(const CrossedPackage& c) {
    auto f = make_frobenius(center_algebra(c), c.trace);
    attach_z(f);
    return f;
}

Scalar twisted_trace(const CrossedPackage& c, int a, int b) {
    if (c.group().mul(a, b) != c.group().mul(b, a))
        throw Error("DegreeMismatch", "twisted trace needs commuting degrees");
    return c.phi[sz(b)][sz(a)].trace();
}

Report verify_crossed(const CrossedPackage& c) {
    const auto& G = c.group();
    const int n = G.order();
    const int e = G.identity();
    Report rep;

    // hom: phi_e = id and phi_g phi_h = phi_gh on every Z_k.
    {
        std::string w;
        for (int k = 0; k < n && w.empty(); ++k)
            if (!(c.phi[sz(e)][sz(k)] == Matrix::identity(c.dim(k)))) w = "phi_e != id on Z_" + G.name(k);
        for (int g = 0; g < n && w.empty(); ++g)
            for (int h = 0; h < n && w.empty(); ++h)
                for (int k = 0; k < n && w.empty(); ++k) {
                    Matrix lhs = c.phi[sz(g)][sz(G.conj(h, k))] * c.phi[sz(h)][sz(k)];
                    if (!(lhs == c.phi[sz(G.mul(g, h))][sz(k)]))
                        w = "phi_" + G.name(g) + " phi_" + G.name(h) + " != phi_" + G.name(G.mul(g, h)) + " on Z_" +
                            G.name(k);
                }
        rep.add("hom", w.empty(), w);
    }

    // (i): each phi_h is a unital algebra map Z_g -> Z_{hgh^-1} and fixes Z_h.
    {
        std::string w;
        for (int h = 0; h < n && w.empty(); ++h) {
            if (c.phi[sz(h)][sz(e)] * c.unit != c.unit) w = "phi_" + G.name(h) + " does not fix the unit";
            if (w.empty() && !(c.phi[sz(h)][sz(h)] == Matrix::identity(c.dim(h))))
                w = "phi_" + G.name(h) + " is not the identity on Z_" + G.name(h);
            for (int a = 0; a < n && w.empty(); ++a)
                for (int b = 0; b < n && w.empty(); ++b)
                    for (std::size_t i = 0; i < c.dim(a) && w.empty(); ++i)
                        for (std::size_t j = 0; j < c.dim(b) && w.empty(); ++j) {
                            Vec x = unit_vec(c.dim(a), i), y = unit_vec(c.dim(b), j);
                            Vec lhs = c.phi[sz(h)][sz(G.mul(a, b))] * c.mul(a, x, b, y);
                            Vec rhs = c.mul(G.conj(h, a), c.phi[sz(h)][sz(a)] * x, G.conj(h, b),
                                            c.phi[sz(h)][sz(b)] * y);
                            if (lhs != rhs)
                                w = "phi_" + G.name(h) + " not multiplicative on Z_" + G.name(a) + " x Z_" + G.name(b);
                        }
        }
        rep.add("(i)", w.empty(), w);
    }

    // (ii): b a = phi_h(a) b for a in Z_g, b in Z_h.
    {
        std::string w;
        for (int g = 0; g < n && w.empty(); ++g)
            for (int h = 0; h < n && w.empty(); ++h)
                for (std::size_t i = 0; i < c.dim(g) && w.empty(); ++i)
                    for (std::size_t j = 0; j < c.dim(h) && w.empty(); ++j) {
                        Vec a = unit_vec(c.dim(g), i), b = unit_vec(c.dim(h), j);
                        Vec lhs = c.mul(h, b, g, a);
                        Vec rhs = c.mul(G.conj(h, g), c.phi[sz(h)][sz(g)] * a, h, b);
                        if (lhs != rhs) w = "b a != phi_h(a) b for degrees " + G.name(g) + ", " + G.name(h);
                    }
        rep.add("(ii)", w.empty(), w);
    }

    // (iii): Tr(mu_c phi_h on Z_g) = Tr(phi_{g^-1} mu_c on Z_h) for c in Z_{[g,h]}.
    {
        std::string w;
        for (int g = 0; g < n && w.empty(); ++g)
            for (int h = 0; h < n && w.empty(); ++h) {
                const int k = G.commutator(g, h);
                for (std::size_t t = 0; t < c.dim(k) && w.empty(); ++t) {
                    Vec cv = unit_vec(c.dim(k), t);
                    const int hgh = G.conj(h, g);
                    Matrix left_c_g = Matrix::zero(c.dim(g), c.dim(hgh));
                    for (std::size_t j = 0; j < c.dim(hgh); ++j)
                        left_c_g.set_col(j, c.mul(k, cv, hgh, unit_vec(c.dim(hgh), j)));
                    Scalar lhs = (left_c_g * c.phi[sz(h)][sz(g)]).trace();
                    Matrix left_c_h = Matrix::zero(c.dim(G.mul(k, h)), c.dim(h));
                    for (std::size_t j = 0; j < c.dim(h); ++j)
                        left_c_h.set_col(j, c.mul(k, cv, h, unit_vec(c.dim(h), j)));
                    Scalar rhs = (c.phi[sz(G.inv(g))][sz(G.mul(k, h))] * left_c_h).trace();
                    if (lhs != rhs)
                        w = "trace mismatch at g=" + G.name(g) + ", h=" + G.name(h) + ": " + lhs.str() + " vs " +
                            rhs.str();
                }
            }
        rep.add("(iii)", w.empty(), w);
    }

    // trace-condition: the c = 1 case for commuting pairs, Tr(phi_h|Z_g) = Tr(phi_{g^-1}|Z_h).
    {
        std::string w;
        for (int g = 0; g < n && w.empty(); ++g)
            for (int h = 0; h < n && w.empty(); ++h) {
                if (G.commutator(g, h) != e) continue;
                Scalar lhs = c.phi[sz(h)][sz(g)].trace();
                Scalar rhs = c.phi[sz(G.inv(g))][sz(h)].trace();
                if (lhs != rhs) w = "Tr(phi_" + G.name(h) + "|Z_" + G.name(g) + ") = " + lhs.str() + " but " + rhs.str();
            }
        rep.add("trace-condition", w.empty(), w);
    }

    // (iv): eta(phi_g a, phi_g b) = eta(a, b).
    {
        std::string w;
        for (int g = 0; g < n && w.empty(); ++g)
            for (int a = 0; a < n && w.empty(); ++a) {
                const int b = G.inv(a);
                for (std::size_t i = 0; i < c.dim(a) && w.empty(); ++i)
                    for (std::size_t j = 0; j < c.dim(b) && w.empty(); ++j) {
                        Vec x = unit_vec(c.dim(a), i), y = unit_vec(c.dim(b), j);
                        Scalar lhs = c.eta(G.conj(g, a), c.phi[sz(g)][sz(a)] * x, G.conj(g, b), c.phi[sz(g)][sz(b)] * y);
                        if (lhs != c.eta(a, x, b, y)) w = "eta not invariant under phi_" + G.name(g) + " on Z_" + G.name(a);
                    }
            }
        rep.add("(iv)", w.empty(), w);
    }

    // Centralizer comparison: Psi(A_g) = {b in A_g : ab = ba for a in A_e}.
    {
        const auto& A = c.source.algebra;
        std::string w;
        for (int g = 0; g < n && w.empty(); ++g) {
            Matrix rows = Matrix::zero(0, A.dim(g));
            for (std::size_t i = 0; i < A.dim(e); ++i) {
                Vec a = unit_vec(A.dim(e), i);
                rows = vstack(rows, A.left_mul(e, a, g) - A.right_mul(e, a, g));
            }
            Matrix cent = column_space_basis(kernel(rows));
            if (!(cent == c.center_basis[sz(g)])) w = "centralizer of A_e differs from Psi(A_" + G.name(g) + ")";
        }
        rep.add("centralizer", w.empty(), w);
    }

    // Psi(z^2) = z.
    {
        const auto& z = *c.source.z;
        Vec z2 = c.source.algebra.mul(e, z, e, z);
        bool ok = psi(c.source, e, z2) == z;
        rep.add("unit", ok, ok ? "" : "Psi(z^2) != z");
    }
    return rep;
}

}  // namespace hft
