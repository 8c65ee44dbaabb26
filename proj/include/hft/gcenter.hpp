#pragma once

#include "hft/frobenius.hpp"

namespace hft {

// The G-center Z = sum_g Psi(A_g) with the product x.y = x y z^-1, unit z
// and the twists phi_g(a) = sum_i p_i^g a z q_i^g.
struct CrossedPackage {
    FrobeniusPackage source;
    std::vector<Matrix> center_basis;         // columns span Z_g inside A_g, RREF-canonical
    std::vector<std::vector<std::size_t>> pivots;  // coordinate j of v is v[pivots[g][j]]
    std::vector<std::vector<Matrix>> mult;    // mult[g][h]: Z_g (x) Z_h -> Z_gh in center coordinates
    std::vector<std::vector<Matrix>> phi;     // phi[g][h]: Z_h -> Z_{g h g^-1}
    Vec unit;                                 // z in Z_e coordinates
    Vec trace;                                // Lambda restricted to Z_e, in coordinates

    const GroupTable& group() const { return source.group(); }
    std::size_t dim(int g) const { return center_basis[static_cast<std::size_t>(g)].cols(); }
    // Coordinates of v in A_g with respect to the center basis; throws if v is not central.
    Vec coords(int g, const Vec& v) const;
    Vec embed(int g, const Vec& c) const { return center_basis[static_cast<std::size_t>(g)] * c; }
    Vec mul(int g, const Vec& x, int h, const Vec& y) const;
    Scalar eta(int g, const Vec& x, int h, const Vec& y) const;
};

// Degreewise sum_i p_i^e a q_i^e.
Vec psi(const FrobeniusPackage& f, int g, const Vec& a);
Elem psi(const FrobeniusPackage& f, const Elem& a);
// phi_g(a) for a in A_h, landing in A_{g h g^-1}.
Vec phi(const FrobeniusPackage& f, int g, int h, const Vec& a);

// Throws Error("NotQuasiBiangular") when no z exists.
CrossedPackage g_center(const FrobeniusPackage& f);

// The center as a graded algebra with its own Frobenius package (trace Lambda|Z_e).
GradedAlgebra center_algebra(const CrossedPackage& c);
FrobeniusPackage center_frobenius(const CrossedPackage& c);

Report verify_crossed(const CrossedPackage& c);

// Trace of phi_b restricted to Z_a (a, b commuting).
Scalar twisted_trace(const CrossedPackage& c, int a, int b);

}  // namespace hft
