#include "hft/bimodule.hpp"

#include <functional>
#include <numeric>

#include "hft/error.hpp"

namespace hft {

namespace {

std::size_t sz(int g) { return static_cast<std::size_t>(g); }

Matrix unit_column(const Vec& u) { return Matrix::column(u); }

std::string deg3(const GroupTable& G, int a, int b, int c) {
    return "(" + G.name(a) + "," + G.name(b) + "," + G.name(c) + ")";
}

nlohmann::json action_triples(const GroupTable& G, const std::vector<std::vector<Matrix>>& act,
                              const std::function<std::size_t(int)>& second_dim) {
    nlohmann::json out = nlohmann::json::array();
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h) {
            const Matrix& m = act[sz(g)][sz(h)];
            const std::size_t dh = second_dim(h);
            for (std::size_t c = 0; c < m.cols(); ++c)
                for (std::size_t k = 0; k < m.rows(); ++k)
                    if (!m(k, c).is_zero())
                        out.push_back({{G.name(g), c / dh}, {G.name(h), c % dh}, {G.name(G.mul(g, h)), k}, m(k, c).str()});
        }
    return out;
}

int matrices_conductor(const std::vector<std::vector<Matrix>>& act) {
    int c = 1;
    for (const auto& row : act)
        for (const auto& m : row)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) c = std::lcm(c, m(i, j).conductor());
    return c;
}

}  // namespace

GradedBimodule GradedBimodule::build(GradedAlgebra left, GradedAlgebra right, std::vector<std::size_t> dims,
                                     std::vector<std::vector<Matrix>> left_act,
                                     std::vector<std::vector<Matrix>> right_act) {
    if (!(left.group() == right.group())) throw Error("AlgebraMismatch", "left and right algebras use different groups");
    const auto& G = left.group();
    const int n = G.order();
    const int e = G.identity();
    if (dims.size() != sz(n) || left_act.size() != sz(n) || right_act.size() != sz(n))
        throw Error("ShapeMismatch", "bimodule data must have one entry per group element");
    for (int g = 0; g < n; ++g) {
        if (left_act[sz(g)].size() != sz(n) || right_act[sz(g)].size() != sz(n))
            throw Error("ShapeMismatch", "action tables must be square in the group");
        for (int h = 0; h < n; ++h) {
            const Matrix& l = left_act[sz(g)][sz(h)];
            if (l.rows() != dims[sz(G.mul(g, h))] || l.cols() != left.dim(g) * dims[sz(h)])
                throw Error("ShapeMismatch", "left action L_" + G.name(g) + " x U_" + G.name(h) + " has wrong shape");
            const Matrix& r = right_act[sz(g)][sz(h)];
            if (r.rows() != dims[sz(G.mul(g, h))] || r.cols() != dims[sz(g)] * right.dim(h))
                throw Error("ShapeMismatch", "right action U_" + G.name(g) + " x K_" + G.name(h) + " has wrong shape");
        }
    }
    for (int h = 0; h < n; ++h) {
        const Matrix id = Matrix::identity(dims[sz(h)]);
        if (!(left_act[sz(e)][sz(h)] * kron(unit_column(left.unit()), id) == id))
            throw Error("NotAModule", "left unit does not act trivially on U_" + G.name(h));
        if (!(right_act[sz(h)][sz(e)] * kron(id, unit_column(right.unit())) == id))
            throw Error("NotAModule", "right unit does not act trivially on U_" + G.name(h));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int h = 0; h < n; ++h) {
                const Matrix idu = Matrix::identity(dims[sz(h)]);
                Matrix lhs = left_act[sz(G.mul(a, b))][sz(h)] * kron(left.mult(a, b), idu);
                Matrix rhs = left_act[sz(a)][sz(G.mul(b, h))] * kron(Matrix::identity(left.dim(a)), left_act[sz(b)][sz(h)]);
                if (!(lhs == rhs)) throw Error("NotAModule", "left action not associative at " + deg3(G, a, b, h));
                lhs = right_act[sz(G.mul(h, a))][sz(b)] * kron(right_act[sz(h)][sz(a)], Matrix::identity(right.dim(b)));
                rhs = right_act[sz(h)][sz(G.mul(a, b))] * kron(idu, right.mult(a, b));
                if (!(lhs == rhs)) throw Error("NotAModule", "right action not associative at " + deg3(G, h, a, b));
                lhs = right_act[sz(G.mul(a, h))][sz(b)] * kron(left_act[sz(a)][sz(h)], Matrix::identity(right.dim(b)));
                rhs = left_act[sz(a)][sz(G.mul(h, b))] * kron(Matrix::identity(left.dim(a)), right_act[sz(h)][sz(b)]);
                if (!(lhs == rhs)) throw Error("NotAModule", "actions do not commute at " + deg3(G, a, h, b));
            }
    GradedBimodule m;
    m.left_ = std::move(left);
    m.right_ = std::move(right);
    m.dims_ = std::move(dims);
    m.left_act_ = std::move(left_act);
    m.right_act_ = std::move(right_act);
    return m;
}

Vec GradedBimodule::act_left(int g, const Vec& l, int h, const Vec& u) const { return left_act(g, h) * tensor(l, u); }
Vec GradedBimodule::act_right(int h, const Vec& u, int g, const Vec& k) const { return right_act(h, g) * tensor(u, k); }

Matrix GradedBimodule::left_matrix(int g, const Vec& l, int h) const {
    return left_act(g, h) * kron(unit_column(l), Matrix::identity(dim(h)));
}

Matrix GradedBimodule::right_matrix(int h, int g, const Vec& k) const {
    return right_act(h, g) * kron(Matrix::identity(dim(h)), unit_column(k));
}

nlohmann::json GradedBimodule::to_json() const {
    const auto& G = group();
    nlohmann::json out = {{"dims", dims_},
                          {"left", action_triples(G, left_act_, [&](int h) { return dim(h); })},
                          {"right", action_triples(G, right_act_, [&](int h) { return right_.dim(h); })}};
    const int c = std::lcm(matrices_conductor(left_act_), matrices_conductor(right_act_));
    if (c > 1) out["conductor"] = c;
    return out;
}

GradedBimodule GradedBimodule::from_json(const GradedAlgebra& left, const GradedAlgebra& right, const nlohmann::json& j) {
    const auto& G = left.group();
    const int n = G.order();
    const int conductor = j.value("conductor", 1);
    auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (dims.size() != sz(n)) throw Error("ShapeMismatch", "one dimension per group element required");
    std::vector<std::vector<Matrix>> la(sz(n)), ra(sz(n));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            la[sz(g)].emplace_back(dims[sz(G.mul(g, h))], left.dim(g) * dims[sz(h)]);
            ra[sz(g)].emplace_back(dims[sz(G.mul(g, h))], dims[sz(g)] * right.dim(h));
        }
    auto fill = [&](const nlohmann::json& triples, std::vector<std::vector<Matrix>>& act, bool is_left) {
        for (const auto& t : triples) {
            int g = element_of_json(G, t.at(0).at(0)), h = element_of_json(G, t.at(1).at(0)),
                l = element_of_json(G, t.at(2).at(0));
            if (l != G.mul(g, h)) throw Error("GradingViolated", "action triple lands in the wrong degree");
            auto i = t.at(0).at(1).get<std::size_t>(), jj = t.at(1).at(1).get<std::size_t>(),
                 k = t.at(2).at(1).get<std::size_t>();
            const std::size_t d1 = is_left ? left.dim(g) : dims[sz(g)];
            const std::size_t d2 = is_left ? dims[sz(h)] : right.dim(h);
            if (i >= d1 || jj >= d2 || k >= dims[sz(l)]) throw Error("Schema", "basis index out of range");
            act[sz(g)][sz(h)](k, i * d2 + jj) += scalar_of_json(t.at(3), conductor);
        }
    };
    fill(j.at("left"), la, true);
    fill(j.at("right"), ra, false);
    return build(left, right, dims, la, ra);
}

GradedBimodule twisted_regular(const GradedAlgebra& l, const GradedAlgebra& k, const std::vector<Matrix>& f) {
    const auto& G = k.group();
    const int n = G.order();
    std::vector<std::vector<Matrix>> la(sz(n)), ra(sz(n));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            la[sz(g)].push_back(k.mult(g, h) * kron(f[sz(g)], Matrix::identity(k.dim(h))));
            ra[sz(g)].push_back(k.mult(g, h));
        }
    return GradedBimodule::build(l, k, k.dims(), la, ra);
}

GradedBimodule regular(const GradedAlgebra& a) {
    std::vector<Matrix> id;
    for (int g = 0; g < a.group().order(); ++g) id.push_back(Matrix::identity(a.dim(g)));
    return twisted_regular(a, a, id);
}

GradedAlgebra principal_algebra(const GradedAlgebra& a) {
    const int e = a.group().identity();
    return GradedAlgebra::build(GroupTable::cyclic(1), {a.dim(e)}, {{a.mult(e, e)}}, a.unit());
}

GradedBimodule component_bimodule(const GradedAlgebra& a, int g) {
    const int e = a.group().identity();
    auto p = principal_algebra(a);
    return GradedBimodule::build(p, p, {a.dim(g)}, {{a.mult(e, g)}}, {{a.mult(g, e)}});
}

GradedMap identity_map(const GradedBimodule& m) {
    GradedMap f;
    for (int g = 0; g < m.group().order(); ++g) f.blocks.push_back(Matrix::identity(m.dim(g)));
    return f;
}

std::size_t TensorProduct::raw_index(const GradedBimodule& n, int g, int h, std::size_t i, std::size_t j) const {
    const int rest = n.group().mul(n.group().inv(h), g);
    return offset[sz(g)][sz(h)] + i * n.dim(rest) + j;
}

TensorProduct tensor_over(const GradedBimodule& m, const GradedBimodule& n) {
    if (!(m.right() == n.left())) throw Error("AlgebraMismatch", "right algebra of M differs from left algebra of N");
    const auto& G = m.group();
    const auto& A = m.right();
    const int ord = G.order();
    TensorProduct t{GradedBimodule{}, {}, {}, {}, {}, {}};
    t.raw_dim.resize(sz(ord));
    t.offset.assign(sz(ord), std::vector<std::size_t>(sz(ord)));
    for (int g = 0; g < ord; ++g) {
        std::size_t off = 0;
        for (int h = 0; h < ord; ++h) {
            t.offset[sz(g)][sz(h)] = off;
            off += m.dim(h) * n.dim(G.mul(G.inv(h), g));
        }
        t.raw_dim[sz(g)] = off;
    }
    for (int g = 0; g < ord; ++g) {
        std::vector<Vec> cols;
        for (int h = 0; h < ord; ++h)
            for (int d = 0; d < ord; ++d) {
                const int hd = G.mul(h, d);
                const int rest = G.mul(G.inv(hd), g);  // degree of n
                const int dn = G.mul(d, rest);         // degree of a.n
                for (std::size_t i = 0; i < m.dim(h); ++i)
                    for (std::size_t a = 0; a < A.dim(d); ++a) {
                        Vec ma = m.right_act(h, d).col(i * A.dim(d) + a);
                        for (std::size_t j = 0; j < n.dim(rest); ++j) {
                            Vec an = n.left_act(d, rest).col(a * n.dim(rest) + j);
                            Vec col = zero_vec(t.raw_dim[sz(g)]);
                            bool nonzero = false;
                            for (std::size_t p = 0; p < ma.size(); ++p)
                                if (!ma[p].is_zero()) {
                                    col[t.offset[sz(g)][sz(hd)] + p * n.dim(rest) + j] += ma[p];
                                    nonzero = true;
                                }
                            for (std::size_t q = 0; q < an.size(); ++q)
                                if (!an[q].is_zero()) {
                                    col[t.offset[sz(g)][sz(h)] + i * n.dim(dn) + q] -= an[q];
                                    nonzero = true;
                                }
                            if (nonzero && !vzero(col)) cols.push_back(std::move(col));
                        }
                    }
            }
        Matrix bal = cols.empty() ? Matrix::zero(t.raw_dim[sz(g)], 0) : Matrix::from_columns(t.raw_dim[sz(g)], cols);
        // Span-reduce before the cokernel; the relation list is heavily redundant.
        if (bal.cols() > bal.rows()) bal = column_space_basis(bal);
        auto ck = cokernel(bal);
        t.balancing.push_back(std::move(bal));
        t.projection.push_back(std::move(ck.projection));
        t.section.push_back(std::move(ck.section));
    }

    const auto& X = m.left();
    const auto& Y = n.right();
    std::vector<std::size_t> dims;
    for (int g = 0; g < ord; ++g) dims.push_back(t.projection[sz(g)].rows());
    std::vector<std::vector<Matrix>> la(sz(ord)), ra(sz(ord));
    for (int a = 0; a < ord; ++a)
        for (int g = 0; g < ord; ++g) {
            const int ag = G.mul(a, g);
            Matrix lraw = Matrix::zero(t.raw_dim[sz(ag)], X.dim(a) * t.raw_dim[sz(g)]);
            for (std::size_t x = 0; x < X.dim(a); ++x)
                for (int h = 0; h < ord; ++h) {
                    const int rest = G.mul(G.inv(h), g);
                    const Matrix& act = m.left_act(a, h);
                    for (std::size_t i = 0; i < m.dim(h); ++i) {
                        Vec mx = act.col(x * m.dim(h) + i);
                        for (std::size_t p = 0; p < mx.size(); ++p) {
                            if (mx[p].is_zero()) continue;
                            for (std::size_t j = 0; j < n.dim(rest); ++j)
                                lraw(t.offset[sz(ag)][sz(G.mul(a, h))] + p * n.dim(rest) + j,
                                     x * t.raw_dim[sz(g)] + t.offset[sz(g)][sz(h)] + i * n.dim(rest) + j) += mx[p];
                        }
                    }
                }
            la[sz(a)].push_back(t.projection[sz(ag)] * lraw *
                                kron(Matrix::identity(X.dim(a)), t.section[sz(g)]));
        }
    for (int g = 0; g < ord; ++g)
        for (int b = 0; b < ord; ++b) {
            const int gb = G.mul(g, b);
            Matrix rraw = Matrix::zero(t.raw_dim[sz(gb)], t.raw_dim[sz(g)] * Y.dim(b));
            for (int h = 0; h < ord; ++h) {
                const int rest = G.mul(G.inv(h), g);
                const Matrix& act = n.right_act(rest, b);
                for (std::size_t i = 0; i < m.dim(h); ++i)
                    for (std::size_t j = 0; j < n.dim(rest); ++j)
                        for (std::size_t y = 0; y < Y.dim(b); ++y) {
                            Vec ny = act.col(j * Y.dim(b) + y);
                            for (std::size_t q = 0; q < ny.size(); ++q)
                                if (!ny[q].is_zero())
                                    rraw(t.offset[sz(gb)][sz(h)] + i * n.dim(G.mul(rest, b)) + q,
                                         (t.offset[sz(g)][sz(h)] + i * n.dim(rest) + j) * Y.dim(b) + y) += ny[q];
                        }
            }
            ra[sz(g)].push_back(t.projection[sz(gb)] * rraw * kron(t.section[sz(g)], Matrix::identity(Y.dim(b))));
        }
    t.result = GradedBimodule::build(X, Y, dims, la, ra);
    return t;
}

namespace {

// Block-diagonal f_h (x) g_{h^-1 d} on raw degree d.
Matrix raw_tensor_map(const GroupTable& G, const TensorProduct& src, const TensorProduct& dst, const GradedMap& f,
                      const GradedMap& g, int d) {
    Matrix out = Matrix::zero(dst.raw_dim[sz(d)], src.raw_dim[sz(d)]);
    for (int h = 0; h < G.order(); ++h) {
        const int rest = G.mul(G.inv(h), d);
        Matrix k = kron(f.blocks[sz(h)], g.blocks[sz(rest)]);
        out.put(dst.offset[sz(d)][sz(h)], src.offset[sz(d)][sz(h)], k);
    }
    return out;
}

}  // namespace

GradedMap induced_map(const TensorProduct& src, const TensorProduct& dst, const GradedMap& f, const GradedMap& g) {
    const auto& G = src.result.group();
    GradedMap out;
    for (int d = 0; d < G.order(); ++d) {
        Matrix raw = raw_tensor_map(G, src, dst, f, g, d);
        if (!(dst.projection[sz(d)] * raw * src.balancing[sz(d)]).is_zero())
            throw Error("NotBalanced", "map does not preserve balancing relations in degree " + G.name(d));
        out.blocks.push_back(dst.projection[sz(d)] * raw * src.section[sz(d)]);
    }
    return out;
}

bool is_bimodule_map(const GradedBimodule& src, const GradedBimodule& dst, const GradedMap& f) {
    const auto& G = src.group();
    for (int a = 0; a < G.order(); ++a)
        for (int h = 0; h < G.order(); ++h) {
            const int ah = G.mul(a, h), ha = G.mul(h, a);
            if (!(f.blocks[sz(ah)] * src.left_act(a, h) ==
                  dst.left_act(a, h) * kron(Matrix::identity(src.left().dim(a)), f.blocks[sz(h)])))
                return false;
            if (!(f.blocks[sz(ha)] * src.right_act(h, a) ==
                  dst.right_act(h, a) * kron(f.blocks[sz(h)], Matrix::identity(src.right().dim(a)))))
                return false;
        }
    return true;
}

namespace {

Vec apply_pairing(const GroupTable& G, const std::vector<std::vector<Matrix>>& pair, const TensorProduct& t,
                  std::size_t out_dim, int g, const Vec& raw) {
    Vec out = zero_vec(out_dim);
    for (int h = 0; h < G.order(); ++h) {
        const int rest = G.mul(G.inv(h), g);
        const Matrix& p = pair[sz(h)][sz(rest)];
        const std::size_t off = t.offset[sz(g)][sz(h)];
        Vec part(raw.begin() + static_cast<long>(off), raw.begin() + static_cast<long>(off + p.cols()));
        out = vadd(out, p * part);
    }
    return out;
}

Matrix pairing_raw(const GroupTable& G, const std::vector<std::vector<Matrix>>& pair, const TensorProduct& t,
                   std::size_t out_dim, int g) {
    Matrix out = Matrix::zero(out_dim, t.raw_dim[sz(g)]);
    for (int h = 0; h < G.order(); ++h) {
        const int rest = G.mul(G.inv(h), g);
        out.put(0, t.offset[sz(g)][sz(h)], pair[sz(h)][sz(rest)]);
    }
    return out;
}

void check_pairing_shapes(const GroupTable& G, const std::vector<std::vector<Matrix>>& pair, const GradedBimodule& a,
                          const GradedBimodule& b, const GradedAlgebra& target, const char* name) {
    if (pair.size() != sz(G.order())) throw Error("ShapeMismatch", std::string(name) + " needs one row per element");
    for (int h = 0; h < G.order(); ++h) {
        if (pair[sz(h)].size() != sz(G.order())) throw Error("ShapeMismatch", std::string(name) + " must be square");
        for (int k = 0; k < G.order(); ++k) {
            const Matrix& m = pair[sz(h)][sz(k)];
            if (m.rows() != target.dim(G.mul(h, k)) || m.cols() != a.dim(h) * b.dim(k))
                throw Error("ShapeMismatch", std::string(name) + " block (" + G.name(h) + "," + G.name(k) + ") has wrong shape");
        }
    }
}

}  // namespace

Vec MoritaContext::apply_mu(int g, const Vec& raw) const {
    return apply_pairing(group(), mu, uv, big().dim(g), g, raw);
}

Vec MoritaContext::apply_nu(int g, const Vec& raw) const {
    return apply_pairing(group(), nu, vu, small().dim(g), g, raw);
}

MoritaContext make_context(GradedBimodule u, GradedBimodule v, std::vector<std::vector<Matrix>> mu,
                           std::vector<std::vector<Matrix>> nu) {
    if (!(u.left() == v.right()) || !(u.right() == v.left()))
        throw Error("AlgebraMismatch", "U must be (L,K) and V must be (K,L)");
    const auto& G = u.group();
    const int e = G.identity();
    check_pairing_shapes(G, mu, u, v, u.left(), "mu");
    check_pairing_shapes(G, nu, v, u, u.right(), "nu");
    auto uv = tensor_over(u, v);
    auto vu = tensor_over(v, u);
    Matrix nu_bar = pairing_raw(G, nu, vu, u.right().dim(e), e) * vu.section[sz(e)];
    if (nu_bar.rows() != nu_bar.cols()) throw Error("ContextInvalid", "V (x)_L U and K differ in dimension at e");
    auto inv = inverse(nu_bar);
    if (!inv) throw Error("ContextInvalid", "pairing V (x)_L U -> K is not invertible at e");
    Vec tau_one = vu.section[sz(e)] * (*inv * u.right().unit());
    return MoritaContext{std::move(u), std::move(v), std::move(mu), std::move(nu), std::move(uv), std::move(vu),
                         std::move(tau_one)};
}

MoritaContext identity_context(const GradedAlgebra& a) {
    std::vector<std::vector<Matrix>> m(sz(a.group().order()));
    for (int g = 0; g < a.group().order(); ++g)
        for (int h = 0; h < a.group().order(); ++h) m[sz(g)].push_back(a.mult(g, h));
    return make_context(regular(a), regular(a), m, m);
}

MoritaContext context_from_isomorphism(const GradedAlgebra& l, const GradedAlgebra& k, const std::vector<Matrix>& f) {
    const auto& G = l.group();
    const int n = G.order();
    std::vector<std::vector<Matrix>> ula(sz(n)), ura(sz(n)), vla(sz(n)), vra(sz(n)), mu(sz(n)), nu(sz(n));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            ula[sz(g)].push_back(l.mult(g, h));
            ura[sz(g)].push_back(l.mult(g, h) * kron(Matrix::identity(l.dim(g)), f[sz(h)]));
            vla[sz(g)].push_back(l.mult(g, h) * kron(f[sz(g)], Matrix::identity(l.dim(h))));
            vra[sz(g)].push_back(l.mult(g, h));
            mu[sz(g)].push_back(l.mult(g, h));
            auto finv = inverse(f[sz(G.mul(g, h))]);
            if (!finv) throw Error("ContextInvalid", "algebra map is not invertible in degree " + G.name(G.mul(g, h)));
            nu[sz(g)].push_back(*finv * l.mult(g, h));
        }
    auto u = GradedBimodule::build(l, k, l.dims(), ula, ura);
    auto v = GradedBimodule::build(k, l, l.dims(), vla, vra);
    return make_context(std::move(u), std::move(v), std::move(mu), std::move(nu));
}

MoritaContext reverse_context(const MoritaContext& c) { return make_context(c.v, c.u, c.nu, c.mu); }

Report validate_context(const MoritaContext& c) {
    const auto& G = c.group();
    const int n = G.order();
    const int e = G.identity();
    const auto& L = c.big();
    const auto& K = c.small();
    Report rep;

    auto pairing_checks = [&](const std::vector<std::vector<Matrix>>& pair, const GradedBimodule& a,
                              const GradedBimodule& b, const TensorProduct& t, const GradedAlgebra& target,
                              const std::string& name) {
        std::string w;
        for (int g = 0; g < n && w.empty(); ++g)
            if (!(pairing_raw(G, pair, t, target.dim(g), g) * t.balancing[sz(g)]).is_zero())
                w = name + " is not balanced in degree " + G.name(g);
        rep.add(name + "-balanced", w.empty(), w);
        w.clear();
        for (int x = 0; x < n && w.empty(); ++x)
            for (int h = 0; h < n && w.empty(); ++h)
                for (int k = 0; k < n && w.empty(); ++k) {
                    Matrix lhs = pair[sz(G.mul(x, h))][sz(k)] * kron(a.left_act(x, h), Matrix::identity(b.dim(k)));
                    Matrix rhs = target.mult(x, G.mul(h, k)) * kron(Matrix::identity(target.dim(x)), pair[sz(h)][sz(k)]);
                    if (!(lhs == rhs)) w = name + " is not left linear at " + deg3(G, x, h, k);
                    lhs = pair[sz(h)][sz(G.mul(k, x))] * kron(Matrix::identity(a.dim(h)), b.right_act(k, x));
                    rhs = target.mult(G.mul(h, k), x) * kron(pair[sz(h)][sz(k)], Matrix::identity(target.dim(x)));
                    if (w.empty() && !(lhs == rhs)) w = name + " is not right linear at " + deg3(G, h, k, x);
                }
        rep.add(name + "-bimodule", w.empty(), w);
        w.clear();
        for (int g = 0; g < n && w.empty(); ++g) {
            Matrix bar = pairing_raw(G, pair, t, target.dim(g), g) * t.section[sz(g)];
            if (bar.rows() != bar.cols() || rank(bar) != bar.rows()) w = name + " is not invertible in degree " + G.name(g);
        }
        rep.add(name + "-invertible", w.empty(), w);
    };
    pairing_checks(c.mu, c.u, c.v, c.uv, L, "mu");
    pairing_checks(c.nu, c.v, c.u, c.vu, K, "tau");

    // tau(1) is K-central in V (x)_L U: k tau(1) = tau(1) k after projection.
    {
        std::string w;
        for (int d = 0; d < n && w.empty(); ++d)
            for (std::size_t i = 0; i < K.dim(d) && w.empty(); ++i) {
                Vec k = unit_vec(K.dim(d), i);
                Vec t1 = c.vu.projection[sz(e)] * c.tau_one;
                Vec lhs = c.vu.result.act_left(d, k, e, t1);
                Vec rhs = c.vu.result.act_right(e, t1, d, k);
                if (lhs != rhs) w = "k tau(1) != tau(1) k for a basis element of K_" + G.name(d);
            }
        rep.add("tau-central", w.empty(), w);
    }

    // Zig-zags: u -> sum mu(u (x) v_i) u_i and v -> sum v_i mu(u_i (x) v), with tau(1) = sum v_i (x) u_i.
    std::string wu, wv;
    for (int h = 0; h < n; ++h) {
        for (std::size_t a = 0; a < c.u.dim(h) && wu.empty(); ++a) {
            Vec uu = unit_vec(c.u.dim(h), a);
            Vec acc = zero_vec(c.u.dim(h));
            for (int k = 0; k < n; ++k) {
                const int ki = G.inv(k);
                for (std::size_t i = 0; i < c.v.dim(k); ++i)
                    for (std::size_t j = 0; j < c.u.dim(ki); ++j) {
                        const Scalar& coef = c.tau_one[c.vu.offset[sz(e)][sz(k)] + i * c.u.dim(ki) + j];
                        if (coef.is_zero()) continue;
                        Vec l = c.mu[sz(h)][sz(k)] * tensor(uu, unit_vec(c.v.dim(k), i));
                        acc = vadd(acc, vscale(c.u.act_left(G.mul(h, k), l, ki, unit_vec(c.u.dim(ki), j)), coef));
                    }
            }
            if (acc != uu) wu = "zig-zag on U fails at a basis element of U_" + G.name(h);
        }
        for (std::size_t a = 0; a < c.v.dim(h) && wv.empty(); ++a) {
            Vec vv = unit_vec(c.v.dim(h), a);
            Vec acc = zero_vec(c.v.dim(h));
            for (int k = 0; k < n; ++k) {
                const int ki = G.inv(k);
                for (std::size_t i = 0; i < c.v.dim(k); ++i)
                    for (std::size_t j = 0; j < c.u.dim(ki); ++j) {
                        const Scalar& coef = c.tau_one[c.vu.offset[sz(e)][sz(k)] + i * c.u.dim(ki) + j];
                        if (coef.is_zero()) continue;
                        Vec l = c.mu[sz(ki)][sz(h)] * tensor(unit_vec(c.u.dim(ki), j), vv);
                        acc = vadd(acc, vscale(c.v.act_right(k, unit_vec(c.v.dim(k), i), G.mul(ki, h), l), coef));
                    }
            }
            if (acc != vv) wv = "zig-zag on V fails at a basis element of V_" + G.name(h);
        }
    }
    rep.add("zigzag-U", wu.empty(), wu);
    rep.add("zigzag-V", wv.empty(), wv);
    return rep;
}

Vec transfer_trace(const MoritaContext& c, const Vec& trace_small) {
    const auto& G = c.group();
    const int e = G.identity();
    const auto& L = c.big();
    Matrix mu_bar = pairing_raw(G, c.mu, c.uv, L.dim(e), e) * c.uv.section[sz(e)];
    auto inv = mu_bar.rows() == mu_bar.cols() ? inverse(mu_bar) : std::nullopt;
    if (!inv) throw Error("ContextInvalid", "mu is not invertible at e");
    Vec out(L.dim(e));
    for (std::size_t b = 0; b < L.dim(e); ++b) {
        Vec raw = c.uv.section[sz(e)] * (*inv * unit_vec(L.dim(e), b));
        Scalar s(0);
        for (int h = 0; h < G.order(); ++h) {
            const int hi = G.inv(h);
            for (std::size_t i = 0; i < c.u.dim(h); ++i)
                for (std::size_t j = 0; j < c.v.dim(hi); ++j) {
                    const Scalar& coef = raw[c.uv.offset[sz(e)][sz(h)] + i * c.v.dim(hi) + j];
                    if (coef.is_zero()) continue;
                    Vec k = c.nu[sz(hi)][sz(h)] * tensor(unit_vec(c.v.dim(hi), j), unit_vec(c.u.dim(h), i));
                    for (std::size_t t = 0; t < k.size(); ++t) s += coef * k[t] * trace_small[t];
                }
        }
        out[b] = s;
    }
    for (std::size_t a = 0; a < L.dim(e); ++a)
        for (std::size_t b = 0; b < L.dim(e); ++b) {
            Vec comm = vsub(L.mul(e, unit_vec(L.dim(e), a), e, unit_vec(L.dim(e), b)),
                            L.mul(e, unit_vec(L.dim(e), b), e, unit_vec(L.dim(e), a)));
            Scalar s(0);
            for (std::size_t t = 0; t < comm.size(); ++t) s += comm[t] * out[t];
            if (!s.is_zero()) throw Error("ContextInvalid", "transferred trace does not vanish on commutators");
        }
    return out;
}

Report is_compatible(const MoritaContext& c, const FrobeniusPackage& fk, const FrobeniusPackage& fl) {
    const auto& G = c.group();
    Report rep;
    if (!(fk.algebra == c.small()) || !(fl.algebra == c.big()))
        throw Error("ContextInvalid", "Frobenius packages do not match the context's algebras");
    Vec pushed = transfer_trace(c, fk.trace);
    rep.add("trace", pushed == fl.trace, pushed == fl.trace ? "" : "Lambda_L differs from the transferred trace");
    // Degreewise form of the same condition: Lambda_L(mu(u (x) v)) = Lambda_K(nu(v (x) u)).
    std::string w;
    for (int a = 0; a < G.order() && w.empty(); ++a) {
        const int ai = G.inv(a);
        for (std::size_t i = 0; i < c.u.dim(a) && w.empty(); ++i)
            for (std::size_t j = 0; j < c.v.dim(ai) && w.empty(); ++j) {
                Vec uu = unit_vec(c.u.dim(a), i), vv = unit_vec(c.v.dim(ai), j);
                Vec l = c.mu[sz(a)][sz(ai)] * tensor(uu, vv);
                Vec k = c.nu[sz(ai)][sz(a)] * tensor(vv, uu);
                Scalar sl(0), sk(0);
                for (std::size_t t = 0; t < l.size(); ++t) sl += l[t] * fl.trace[t];
                for (std::size_t t = 0; t < k.size(); ++t) sk += k[t] * fk.trace[t];
                if (sl != sk) w = "eta transfer fails on U_" + G.name(a) + " x V_" + G.name(ai);
            }
    }
    rep.add("eta", w.empty(), w);
    return rep;
}

bool equivalent_contexts(const GradedMap& xi, const GradedMap& rho, const MoritaContext& c1, const MoritaContext& c2) {
    const auto& G = c1.group();
    const int e = G.identity();
    if (!is_bimodule_map(c1.u, c2.u, xi) || !is_bimodule_map(c1.v, c2.v, rho)) return false;
    for (int h = 0; h < G.order(); ++h)
        for (int k = 0; k < G.order(); ++k)
            if (!(c1.mu[sz(h)][sz(k)] == c2.mu[sz(h)][sz(k)] * kron(xi.blocks[sz(h)], rho.blocks[sz(k)]))) return false;
    Matrix raw = Matrix::zero(c2.vu.raw_dim[sz(e)], c1.vu.raw_dim[sz(e)]);
    for (int h = 0; h < G.order(); ++h)
        raw.put(c2.vu.offset[sz(e)][sz(h)], c1.vu.offset[sz(e)][sz(h)],
                kron(rho.blocks[sz(h)], xi.blocks[sz(G.inv(h))]));
    return c2.vu.projection[sz(e)] * (raw * c1.tau_one) == c2.vu.projection[sz(e)] * c2.tau_one;
}

GradedBimodule conjugate(const GradedBimodule& m) {
    const auto& G = m.group();
    const int n = G.order();
    const auto& X = m.left();
    const auto& Y = m.right();
    std::vector<std::size_t> dims;
    for (int g = 0; g < n; ++g) dims.push_back(m.dim(G.inv(g)));
    // Y^op acts on the left through the old right action, X^op on the right through the old left action.
    std::vector<std::vector<Matrix>> la(sz(n), std::vector<Matrix>(sz(n))), ra = la;
    for (int d = 0; d < n; ++d)
        for (int g = 0; g < n; ++g) {
            const int di = G.inv(d), gi = G.inv(g);
            la[sz(d)][sz(g)] = m.right_act(gi, di) * swap_matrix(Y.dim(di), m.dim(gi));
            ra[sz(g)][sz(d)] = m.left_act(di, gi) * swap_matrix(m.dim(gi), X.dim(di));
        }
    return GradedBimodule::build(opposite(Y), opposite(X), dims, la, ra);
}

MoritaContext conjugate_context(const MoritaContext& c) {
    const auto& G = c.group();
    const int n = G.order();
    std::vector<std::vector<Matrix>> mu(sz(n)), nu(sz(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int ai = G.inv(a), bi = G.inv(b);
            mu[sz(a)].push_back(c.nu[sz(bi)][sz(ai)] * swap_matrix(c.u.dim(ai), c.v.dim(bi)));
            nu[sz(a)].push_back(c.mu[sz(bi)][sz(ai)] * swap_matrix(c.v.dim(ai), c.u.dim(bi)));
        }
    return make_context(conjugate(c.u), conjugate(c.v), mu, nu);
}

}  // namespace hft
