#pragma once

#include "hft/frobenius.hpp"
#include "hft/report.hpp"

namespace hft {

// Degree-preserving linear map; blocks[g] is dim_target(g) x dim_source(g).
struct GradedMap {
    std::vector<Matrix> blocks;
    friend bool operator==(const GradedMap&, const GradedMap&) = default;
};

class GradedBimodule {
public:
    // left[g][h]: L_g (x) U_h -> U_gh, right[h][g]: U_h (x) K_g -> U_hg, flat sources
    // as for algebras. Validates shapes, both module axioms and commutation.
    static GradedBimodule build(GradedAlgebra left, GradedAlgebra right, std::vector<std::size_t> dims,
                                std::vector<std::vector<Matrix>> left_act, std::vector<std::vector<Matrix>> right_act);

    const GradedAlgebra& left() const { return left_; }
    const GradedAlgebra& right() const { return right_; }
    const GroupTable& group() const { return left_.group(); }
    std::size_t dim(int g) const { return dims_[static_cast<std::size_t>(g)]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const Matrix& left_act(int g, int h) const { return left_act_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
    const Matrix& right_act(int h, int g) const { return right_act_[static_cast<std::size_t>(h)][static_cast<std::size_t>(g)]; }

    Vec act_left(int g, const Vec& l, int h, const Vec& u) const;
    Vec act_right(int h, const Vec& u, int g, const Vec& k) const;
    // u -> l u on U_h, and u -> u k on U_h.
    Matrix left_matrix(int g, const Vec& l, int h) const;
    Matrix right_matrix(int h, int g, const Vec& k) const;

    nlohmann::json to_json() const;
    static GradedBimodule from_json(const GradedAlgebra& left, const GradedAlgebra& right, const nlohmann::json& j);

    friend bool operator==(const GradedBimodule& a, const GradedBimodule& b) {
        return a.left_ == b.left_ && a.right_ == b.right_ && a.dims_ == b.dims_ && a.left_act_ == b.left_act_ &&
               a.right_act_ == b.right_act_;
    }

private:
    GradedAlgebra left_, right_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> left_act_, right_act_;
};

// K as an (L,K)-bimodule with l.u.k = F(l) u k, where F: L -> K is a graded
// algebra map given degreewise (F[g]: L_g -> K_g).
GradedBimodule twisted_regular(const GradedAlgebra& l, const GradedAlgebra& k, const std::vector<Matrix>& f);
GradedBimodule regular(const GradedAlgebra& a);
// A_e as an algebra over the trivial group, and A_g as an (A_e, A_e)-bimodule over it.
GradedAlgebra principal_algebra(const GradedAlgebra& a);
GradedBimodule component_bimodule(const GradedAlgebra& a, int g);
// Identity maps on every degree of a bimodule.
GradedMap identity_map(const GradedBimodule& m);

// Raw space of total degree g is the direct sum over h of M_h (x) N_{h^-1 g},
// in increasing h; offset[g][h] locates each block.
struct TensorProduct {
    GradedBimodule result;
    std::vector<std::size_t> raw_dim;
    std::vector<std::vector<std::size_t>> offset;
    std::vector<Matrix> balancing;   // raw_g x (#relations), columns are m.a (x) n - m (x) a.n
    std::vector<Matrix> projection;  // dim result_g x raw_g
    std::vector<Matrix> section;     // raw_g x dim result_g
    // Position of (basis i of M_h) (x) (basis j of N_{h^-1 g}) in raw degree g.
    std::size_t raw_index(const GradedBimodule& n, int g, int h, std::size_t i, std::size_t j) const;
};

// Throws Error("AlgebraMismatch") unless M's right and N's left algebra agree.
TensorProduct tensor_over(const GradedBimodule& m, const GradedBimodule& n);

// f: M -> M', g: N -> N' bimodule maps; result maps M (x)_A N -> M' (x)_A N'.
// Throws Error("NotBalanced") when the raw map does not preserve balancing relations.
GradedMap induced_map(const TensorProduct& src, const TensorProduct& dst, const GradedMap& f, const GradedMap& g);

// Checks that a graded map commutes with both actions.
bool is_bimodule_map(const GradedBimodule& src, const GradedBimodule& dst, const GradedMap& f);

// Context between L and K: U is (L,K), V is (K,L); mu: U (x)_K V -> L and
// nu: V (x)_L U -> K are stored as raw pairings mu[h][h'] : U_h (x) V_h' -> L_{hh'}.
// tau = nu^{-1} is kept as the representative tau(1) in the raw degree-e part of V (x) U.
struct MoritaContext {
    GradedBimodule u, v;
    std::vector<std::vector<Matrix>> mu, nu;
    TensorProduct uv, vu;
    Vec tau_one;

    const GradedAlgebra& big() const { return u.left(); }    // L
    const GradedAlgebra& small() const { return u.right(); }  // K
    const GroupTable& group() const { return u.group(); }
    // mu and nu applied to a raw tensor of total degree g.
    Vec apply_mu(int g, const Vec& raw) const;
    Vec apply_nu(int g, const Vec& raw) const;
};

// Throws Error("ContextInvalid") when nu is not invertible in degree e.
MoritaContext make_context(GradedBimodule u, GradedBimodule v, std::vector<std::vector<Matrix>> mu,
                           std::vector<std::vector<Matrix>> nu);
// U = V = A with both pairings the multiplication.
MoritaContext identity_context(const GradedAlgebra& a);
// From a graded algebra isomorphism F: K -> L (degreewise matrices): U = L, V = L
// with K acting through F; mu is multiplication, nu is F^{-1} of multiplication.
MoritaContext context_from_isomorphism(const GradedAlgebra& l, const GradedAlgebra& k, const std::vector<Matrix>& f);
// The same data read from the other side: a context between K and L.
MoritaContext reverse_context(const MoritaContext& c);

Report validate_context(const MoritaContext& c);

// Throws Error("ContextInvalid") if mu is not invertible in degree e.
Vec transfer_trace(const MoritaContext& c, const Vec& trace_small);

Report is_compatible(const MoritaContext& c, const FrobeniusPackage& fk, const FrobeniusPackage& fl);

bool equivalent_contexts(const GradedMap& xi, const GradedMap& rho, const MoritaContext& c1, const MoritaContext& c2);

// M an (X,Y)-bimodule gives the (Y^op, X^op)-bimodule with components M_{g^-1}.
GradedBimodule conjugate(const GradedBimodule& m);
MoritaContext conjugate_context(const MoritaContext& c);

}  // namespace hft
