#include "hft/algebra.hpp"

#include <numeric>
#include <sstream>

#include "hft/error.hpp"

namespace hft {

namespace {

std::string witness(const GroupTable& G, int g, std::size_t i, int h, std::size_t j, int l, std::size_t k) {
    std::ostringstream os;
    os << "((" << G.name(g) << "," << i << "),(" << G.name(h) << "," << j << "),(" << G.name(l) << "," << k << "))";
    return os.str();
}

}  // namespace

Matrix swap_matrix(std::size_t m, std::size_t n) {
    Matrix s(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) s(j * m + i, i * n + j) = 1;
    return s;
}

std::size_t GradedAlgebra::total_dim() const {
    std::size_t t = 0;
    for (auto d : dims_) t += d;
    return t;
}

GradedAlgebra GradedAlgebra::build(GroupTable group, std::vector<std::size_t> dims,
                                   std::vector<std::vector<Matrix>> mult, Vec unit) {
    const int n = group.order();
    if (static_cast<int>(dims.size()) != n) throw Error("GradingViolated", "one dimension per group element required");
    if (static_cast<int>(mult.size()) != n) throw Error("GradingViolated", "structure constants need one row per degree");
    for (int g = 0; g < n; ++g) {
        if (static_cast<int>(mult[g].size()) != n) throw Error("GradingViolated", "structure constants need a full degree grid");
        for (int h = 0; h < n; ++h) {
            const Matrix& m = mult[g][h];
            if (m.rows() != dims[group.mul(g, h)] || m.cols() != dims[g] * dims[h])
                throw Error("GradingViolated", "product of degrees " + group.name(g) + "," + group.name(h) +
                                                   " does not land in degree " + group.name(group.mul(g, h)));
        }
    }
    const int e = group.identity();
    if (unit.size() != dims[e]) throw Error("UnitFails", "unit has the wrong length");

    GradedAlgebra a;
    a.group_ = std::move(group);
    a.dims_ = std::move(dims);
    a.mult_ = std::move(mult);
    a.unit_ = std::move(unit);
    const GroupTable& G = a.group_;

    for (int g = 0; g < n; ++g) {
        Matrix lu = a.left_mul(e, a.unit_, g), ru = a.right_mul(e, a.unit_, g);
        Matrix id = Matrix::identity(a.dim(g));
        if (lu != id || ru != id) throw Error("UnitFails", "unit is not two-sided on degree " + G.name(g));
    }
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int l = 0; l < n; ++l) {
                const int gh = G.mul(g, h), hl = G.mul(h, l);
                Matrix left = a.mult(gh, l) * kron(a.mult(g, h), Matrix::identity(a.dim(l)));
                Matrix right = a.mult(g, hl) * kron(Matrix::identity(a.dim(g)), a.mult(h, l));
                if (left == right) continue;
                for (std::size_t c = 0; c < left.cols(); ++c)
                    if (left.col(c) != right.col(c)) {
                        std::size_t dl = a.dim(l), dh = a.dim(h);
                        throw Error("NotAssociative",
                                    "witness " + witness(G, g, c / (dh * dl), h, (c / dl) % dh, l, c % dl));
                    }
            }
    return a;
}

Vec GradedAlgebra::mul(int g, const Vec& x, int h, const Vec& y) const {
    const Matrix& m = mult(g, h);
    const std::size_t dh = dim(h);
    Vec out(m.rows());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dh; ++j) {
            if (y[j].is_zero()) continue;
            Scalar c = x[i] * y[j];
            const std::size_t col = i * dh + j;
            for (std::size_t k = 0; k < m.rows(); ++k)
                if (!m(k, col).is_zero()) out[k] += c * m(k, col);
        }
    }
    return out;
}

Elem GradedAlgebra::mul(const Elem& x, const Elem& y) const {
    Elem out = zero_elem();
    const int n = group_.order();
    for (int g = 0; g < n; ++g) {
        if (vzero(x[g])) continue;
        for (int h = 0; h < n; ++h) {
            if (vzero(y[h])) continue;
            int gh = group_.mul(g, h);
            out[gh] = vadd(out[gh], mul(g, x[g], h, y[h]));
        }
    }
    return out;
}

Matrix GradedAlgebra::left_mul(int g, const Vec& a, int h) const {
    Matrix m(dim(group_.mul(g, h)), dim(h));
    for (std::size_t j = 0; j < dim(h); ++j) m.set_col(j, mul(g, a, h, unit_vec(dim(h), j)));
    return m;
}

Matrix GradedAlgebra::right_mul(int g, const Vec& a, int h) const {
    Matrix m(dim(group_.mul(h, g)), dim(h));
    for (std::size_t j = 0; j < dim(h); ++j) m.set_col(j, mul(h, unit_vec(dim(h), j), g, a));
    return m;
}

Elem GradedAlgebra::zero_elem() const {
    Elem e;
    for (auto d : dims_) e.emplace_back(d);
    return e;
}

Elem GradedAlgebra::homogeneous(int g, const Vec& v) const {
    Elem e = zero_elem();
    e[static_cast<std::size_t>(g)] = v;
    return e;
}

Elem GradedAlgebra::basis_elem(int g, std::size_t i) const { return homogeneous(g, unit_vec(dim(g), i)); }

nlohmann::json GradedAlgebra::to_json() const {
    nlohmann::json triples = nlohmann::json::array();
    const int n = group_.order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const Matrix& m = mult(g, h);
            for (std::size_t c = 0; c < m.cols(); ++c)
                for (std::size_t k = 0; k < m.rows(); ++k)
                    if (!m(k, c).is_zero())
                        triples.push_back({{group_.name(g), c / dim(h)},
                                           {group_.name(h), c % dim(h)},
                                           {group_.name(group_.mul(g, h)), k},
                                           m(k, c).str()});
        }
    nlohmann::json unit = nlohmann::json::array();
    int conductor = 1;
    for (const auto& u : unit_) {
        unit.push_back(u.str());
        conductor = std::lcm(conductor, u.conductor());
    }
    for (const auto& row : mult_)
        for (const auto& m : row)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t c = 0; c < m.cols(); ++c) conductor = std::lcm(conductor, m(i, c).conductor());
    nlohmann::json out = {{"dims", dims_}, {"mult", triples}, {"unit", unit}};
    if (conductor > 1) out["conductor"] = conductor;
    return out;
}

int element_of_json(const GroupTable& G, const nlohmann::json& j) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        if (v < 0 || v >= G.order()) throw Error("Schema", "group index out of range");
        return v;
    }
    return G.lookup(j.get<std::string>());
}

Scalar scalar_of_json(const nlohmann::json& j, int conductor) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), conductor);
    throw Error("Schema", "scalars must be integers or strings");
}


GradedAlgebra GradedAlgebra::from_json(const GroupTable& G, const nlohmann::json& j) {
    const int n = G.order();
    const int conductor = j.value("conductor", 1);
    auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (static_cast<int>(dims.size()) != n) throw Error("GradingViolated", "one dimension per group element required");
    std::vector<std::vector<Matrix>> mult(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) mult[g].emplace_back(dims[G.mul(g, h)], dims[g] * dims[h]);
    for (const auto& t : j.at("mult")) {
        int g = element_of_json(G, t.at(0).at(0)), h = element_of_json(G, t.at(1).at(0)), l = element_of_json(G, t.at(2).at(0));
        auto i = t.at(0).at(1).get<std::size_t>(), jj = t.at(1).at(1).get<std::size_t>(), k = t.at(2).at(1).get<std::size_t>();
        if (l != G.mul(g, h))
            throw Error("GradingViolated", "triple sends degrees " + G.name(g) + "," + G.name(h) + " to " + G.name(l));
        if (i >= dims[g] || jj >= dims[h] || k >= dims[l]) throw Error("Schema", "basis index out of range");
        mult[g][h](k, i * dims[h] + jj) += scalar_of_json(t.at(3), conductor);
    }
    Vec unit;
    for (const auto& u : j.at("unit")) unit.push_back(scalar_of_json(u, conductor));
    return build(G, dims, mult, unit);
}

GradedAlgebra group_algebra(const GroupTable& group) {
    const int n = group.order();
    std::vector<std::vector<Matrix>> mult(static_cast<std::size_t>(n), std::vector<Matrix>(static_cast<std::size_t>(n), Matrix{{1}}));
    return GradedAlgebra::build(group, std::vector<std::size_t>(static_cast<std::size_t>(n), 1), mult, Vec{1});
}

namespace {

MatrixModelSpec filled(const GroupTable& G, MatrixModelSpec s) {
    const std::size_t n = s.blocks.size(), N = static_cast<std::size_t>(G.order());
    if (s.tau.empty()) s.tau.assign(N, std::vector<std::vector<Scalar>>(N, std::vector<Scalar>(n, Scalar(1))));
    if (s.sigma.empty()) {
        std::vector<int> id(n);
        for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
        s.sigma.assign(N, id);
    }
    if (s.r.empty()) s.r.assign(n, Scalar(1));
    return s;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return q;
}

// Row/column offsets of each block inside A_g.
std::vector<std::size_t> block_offsets(const MatrixModelSpec& s, const std::vector<int>& sinv) {
    std::vector<std::size_t> off(s.blocks.size() + 1, 0);
    for (std::size_t i = 0; i < s.blocks.size(); ++i)
        off[i + 1] = off[i] + s.blocks[i] * s.blocks[static_cast<std::size_t>(sinv[i])];
    return off;
}

}  // namespace

void check_model_data(const GroupTable& G, const MatrixModelSpec& raw) {
    MatrixModelSpec s = filled(G, raw);
    const std::size_t n = s.blocks.size(), N = static_cast<std::size_t>(G.order());
    if (n == 0) throw Error("Schema", "at least one block required");
    for (auto k : s.blocks)
        if (k == 0) throw Error("Schema", "block sizes must be positive");
    if (s.tau.size() != N || s.sigma.size() != N || s.r.size() != n)
        throw Error("Schema", "model data has the wrong shape");
    for (const auto& p : s.sigma) {
        if (p.size() != n) throw Error("NotAHomomorphism", "permutation has the wrong length");
        std::vector<bool> seen(n, false);
        for (int x : p) {
            if (x < 0 || static_cast<std::size_t>(x) >= n || seen[static_cast<std::size_t>(x)])
                throw Error("NotAHomomorphism", "sigma value is not a permutation");
            seen[static_cast<std::size_t>(x)] = true;
        }
    }
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h)
            for (std::size_t i = 0; i < n; ++i)
                if (s.sigma[G.mul(g, h)][i] != s.sigma[g][static_cast<std::size_t>(s.sigma[h][i])])
                    throw Error("NotAHomomorphism", "sigma(" + G.name(g) + G.name(h) + ") != sigma(" + G.name(g) +
                                                        ")sigma(" + G.name(h) + ")");
    for (int g = 0; g < G.order(); ++g)
        for (std::size_t i = 0; i < n; ++i) {
            auto j = static_cast<std::size_t>(s.sigma[g][i]);
            if (s.r[j] != s.r[i]) throw Error("StabViolated", "sigma(" + G.name(g) + ") moves r");
            if (s.blocks[j] != s.blocks[i]) throw Error("StabViolated", "sigma(" + G.name(g) + ") moves block sizes");
        }
    for (const auto& x : s.r)
        if (x.is_zero()) throw Error("Schema", "r entries must be invertible");
    const int e = G.identity();
    for (int g = 0; g < G.order(); ++g) {
        if (s.tau[g].size() != N) throw Error("Schema", "tau has the wrong shape");
        for (int h = 0; h < G.order(); ++h) {
            if (s.tau[g][h].size() != n) throw Error("Schema", "tau has the wrong shape");
            for (const auto& x : s.tau[g][h])
                if (x.is_zero()) throw Error("CocycleInvalid", "tau takes the value 0");
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!s.tau[e][g][i].is_one() || !s.tau[g][e][i].is_one())
                throw Error("CocycleInvalid", "tau is not normalized at " + G.name(g));
    }
    for (int g = 0; g < G.order(); ++g) {
        auto sinv = inverse_perm(s.sigma[g]);
        for (int h = 0; h < G.order(); ++h)
            for (int l = 0; l < G.order(); ++l)
                for (std::size_t i = 0; i < n; ++i) {
                    Scalar lhs = s.tau[g][h][i] * s.tau[G.mul(g, h)][l][i];
                    Scalar rhs = s.tau[h][l][static_cast<std::size_t>(sinv[i])] * s.tau[g][G.mul(h, l)][i];
                    if (lhs != rhs)
                        throw Error("CocycleInvalid", "cocycle identity fails at (" + G.name(g) + "," + G.name(h) +
                                                          "," + G.name(l) + ") block " + std::to_string(i));
                }
    }
}

std::size_t matrix_model_index(const GroupTable& G, const MatrixModelSpec& raw, int g, std::size_t block,
                               std::size_t row, std::size_t col) {
    MatrixModelSpec s = filled(G, raw);
    auto sinv = inverse_perm(s.sigma[g]);
    auto off = block_offsets(s, sinv);
    return off[block] + row * s.blocks[static_cast<std::size_t>(sinv[block])] + col;
}

GradedAlgebra matrix_model(const GroupTable& G, const MatrixModelSpec& raw) {
    check_model_data(G, raw);
    MatrixModelSpec s = filled(G, raw);
    const int N = G.order();
    const std::size_t n = s.blocks.size();
    std::vector<std::vector<int>> sinv(static_cast<std::size_t>(N));
    std::vector<std::vector<std::size_t>> off(static_cast<std::size_t>(N));
    std::vector<std::size_t> dims(static_cast<std::size_t>(N));
    for (int g = 0; g < N; ++g) {
        sinv[g] = inverse_perm(s.sigma[g]);
        off[g] = block_offsets(s, sinv[g]);
        dims[g] = off[g][n];
    }
    std::vector<std::vector<Matrix>> mult(static_cast<std::size_t>(N));
    for (int g = 0; g < N; ++g)
        for (int h = 0; h < N; ++h) {
            const int gh = G.mul(g, h);
            Matrix m(dims[gh], dims[g] * dims[h]);
            for (std::size_t i = 0; i < n; ++i) {
                // Block i of X is k_i x k_j, block j of Y is k_j x k_l.
                const auto j = static_cast<std::size_t>(sinv[g][i]);
                const auto l = static_cast<std::size_t>(sinv[h][j]);
                const std::size_t ki = s.blocks[i], kj = s.blocks[j], kl = s.blocks[l];
                for (std::size_t a = 0; a < ki; ++a)
                    for (std::size_t b = 0; b < kj; ++b)
                        for (std::size_t c = 0; c < kl; ++c) {
                            std::size_t x = off[g][i] + a * kj + b;
                            std::size_t y = off[h][j] + b * kl + c;
                            std::size_t out = off[gh][i] + a * kl + c;
                            m(out, x * dims[h] + y) += s.tau[g][h][i];
                        }
            }
            mult[g].push_back(std::move(m));
        }
    const int e = G.identity();
    Vec unit(dims[e]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < s.blocks[i]; ++a) unit[off[e][i] + a * s.blocks[i] + a] = 1;
    return GradedAlgebra::build(G, dims, mult, unit);
}

Vec matrix_model_trace(const GroupTable& G, const MatrixModelSpec& raw) {
    MatrixModelSpec s = filled(G, raw);
    std::size_t total = 0;
    for (auto k : s.blocks) total += k * k;
    Vec lam(total);
    std::size_t off = 0;
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
        const std::size_t k = s.blocks[i];
        for (std::size_t a = 0; a < k; ++a) lam[off + a * k + a] = s.r[i] * Scalar(static_cast<long>(k));
        off += k * k;
    }
    return lam;
}

StrongGrading is_strongly_graded(const GradedAlgebra& a) {
    StrongGrading res;
    const GroupTable& G = a.group();
    const int n = G.order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (rank(a.mult(g, h)) != a.dim(G.mul(g, h))) {
                res.failing_pair = std::make_pair(g, h);
                return res;
            }
    for (int g = 0; g < n; ++g) {
        auto x = solve(a.mult(g, G.inv(g)), Matrix::column(a.unit()));
        if (!x) {
            res.failing_pair = std::make_pair(g, G.inv(g));
            return res;
        }
        res.splitting.push_back(x->col(0));
    }
    res.strongly_graded = true;
    return res;
}

GradedAlgebra opposite(const GradedAlgebra& a) {
    const GroupTable& G = a.group();
    const int n = G.order();
    std::vector<std::size_t> dims(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) dims[g] = a.dim(G.inv(g));
    std::vector<std::vector<Matrix>> mult(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            // x in A^op_g = A_{g^-1}, y in A^op_h: x *op y = y x.
            const int gi = G.inv(g), hi = G.inv(h);
            mult[g].push_back(a.mult(hi, gi) * swap_matrix(a.dim(gi), a.dim(hi)));
        }
    return GradedAlgebra::build(G, dims, mult, a.unit());
}

}  // namespace hft
