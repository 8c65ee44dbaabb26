#pragma once

#include "hft/tft.hpp"

namespace hft {

// A stellar G-algebra: a context between K^op (big) and K (small) together with
// an equivalence to its conjugate, given as maps U -> conj(U) and V -> conj(V).
// Block g of each map sends degree g to degree g of the conjugate, which is
// degree g^-1 of the original module.
struct StellarData {
    GradedAlgebra base;
    MoritaContext zeta;
    GradedMap sigma_u;
    GradedMap sigma_v;

    const GroupTable& group() const { return base.group(); }
};

// The identity context on a commutative-enough K (requires K^op == K) with identity maps.
StellarData trivial_stellar(const GradedAlgebra& k);
// From a degree-preserving anti-involution F of K over an involutory group:
// U = V = K^op with K acting through F, and sigma = (F, F).
StellarData anti_involution_stellar(const GradedAlgebra& k, const std::vector<Matrix>& f);
// Blockwise transpose on a matrix model with square blocks of A_g.
std::vector<Matrix> transpose_map(const GroupTable& group, const MatrixModelSpec& spec);

Report validate_stellar(const StellarData& s);

// Composite context: p between X and Y, q between Y and Z gives one between X and Z
// with U = U_p (x) U_q and V = V_q (x) V_p. Throws Error("AlgebraMismatch").
MoritaContext compose_contexts(const MoritaContext& p, const MoritaContext& q);

// rho between K (big) and L (small). Throws Error("ContextInvalid") when rho
// fails validation or does not start at the base of s.
StellarData transfer_stellar(const MoritaContext& rho, const StellarData& s);

// Orientation reversal T_g: K_g -> K_{g^-1}. Lifts through mu: U_e (x) V_{g^-1} -> L,
// averages over K_e, applies sigma to both legs and multiplies back in L.
// Well defined up to commutators; on an anti-involution model it is the central
// projection of F.
Matrix reversal(const StellarData& s, int g);
// The crosscap element: the canonical representative of tau(1) in V_g (x) U_{g^-1},
// sigma on the V leg, closed up with mu. Lands in K_e.
Vec crosscap(const StellarData& s, int g);

Report check_quasi_biangular_compatibility(const StellarData& s, const FrobeniusPackage& f);

struct ExtendedCrossedPackage {
    CrossedPackage crossed;
    std::vector<Matrix> phi;   // phi[g]: Z_g -> Z_g in center coordinates
    std::vector<Vec> theta;    // theta[g] in Z_e coordinates

    const GroupTable& group() const { return crossed.group(); }
};

// Throws Error("IncompatibleStellar") when validation or compatibility fails,
// or when the reversal does not preserve the center.
ExtendedCrossedPackage extract_phi_theta(const StellarData& s, const FrobeniusPackage& f);

Report verify_extended_crossed(const ExtendedCrossedPackage& p);

// Klein bottle with crosscap labels (g, h): counit of theta_g theta_h, and of theta_h theta_g.
std::pair<Scalar, Scalar> klein_bottle_values(const ExtendedCrossedPackage& p, int g, int h);

// The four unoriented generators: sigma_1 on V, sigma_2 on U, and their primed
// inverses on the conjugates.
struct UnorientedGenerators {
    GradedMap sigma1, sigma2, sigma1_inv, sigma2_inv;
};
UnorientedGenerators unoriented_generators(const StellarData& s);

Report unoriented_relation_suite(const TheoryPackage& t, const StellarData& s);
Report unoriented_relation_suite(const TheoryPackage& t, const StellarData& s, const UnorientedGenerators& gens);

// The oriented theory attached to a stellar algebra: A = B = K, context reversed.
TheoryPackage stellar_theory(const FrobeniusPackage& f, const StellarData& s);

}  // namespace hft
