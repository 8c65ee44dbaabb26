#pragma once

#include <optional>

#include "hft/algebra.hpp"
#include "hft/report.hpp"

namespace hft {

struct FrobeniusPackage {
    GradedAlgebra algebra;
    Vec trace;                  // Lambda on the basis of A_e
    std::vector<Matrix> gram;   // gram[g](i,j) = eta(b_i in A_g, b_j in A_{g^-1})
    // Inner product elements: p_i^g is the i-th basis vector of A_g and
    // q_i^g = dual[g].col(i) in A_{g^-1}, so a = sum_i eta(a, q_i^g) p_i^g.
    std::vector<Matrix> dual;
    std::optional<Vec> z;

    const GroupTable& group() const { return algebra.group(); }
    Scalar eta(int g, const Vec& x, int h, const Vec& y) const;
    Vec q(int g, std::size_t i) const { return dual[static_cast<std::size_t>(g)].col(i); }
    // sum_i p_i^g (x) q_i^g as a flat tensor in A_g (x) A_{g^-1}.
    Vec copairing(int g) const;
    // sum_i p_i^g x q_i^g for x in A_c; lands in A_{g c g^-1}.
    Vec sandwich(int g, int c, const Vec& x) const;
    const Vec& z_or_throw() const;
};

// Throws Error("Degenerate") or Error("NotSymmetric").
FrobeniusPackage make_frobenius(const GradedAlgebra& a, const Vec& trace);

struct CentralZ {
    std::optional<Vec> z;
    std::size_t solution_dim = 0;  // dimension of the affine solution space (when nonempty)
    bool unique() const { return z.has_value() && solution_dim == 0; }
};

CentralZ find_central_z(const FrobeniusPackage& f);
// Checks centrality and the normalization; used when z is supplied externally.
bool verify_z(const FrobeniusPackage& f, const Vec& z);
// Solves for z and stores it in the package; returns false when no z exists.
bool attach_z(FrobeniusPackage& f);

Report is_quasi_biangular(const FrobeniusPackage& f);

// b in A_{g^-1}, zp in A_e. Throws Error("DegreeMismatch").
bool shift_identity_check(const FrobeniusPackage& f, int g, int h, const Vec& b, const Vec& zp);

// Delta_{g,h}(v) for v in A_gh as a flat tensor in A_g (x) A_h.
Vec coproduct(const FrobeniusPackage& f, int g, int h, const Vec& v);
Matrix coproduct_matrix(const FrobeniusPackage& f, int g, int h);

// z^{-1} computed as sum_i p_i^e q_i^e.
Vec z_inverse(const FrobeniusPackage& f);

// Helpers on flat tensors in A_g (x) A_h.
Vec tensor(const Vec& x, const Vec& y);
// (x (x) y) -> x*a (x) y etc. are built from left_mul/right_mul and kron.

}  // namespace hft
