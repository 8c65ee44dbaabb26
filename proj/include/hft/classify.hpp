#pragma once

#include <optional>
#include <vector>

#include "hft/algebra.hpp"
#include "hft/group.hpp"
#include "hft/report.hpp"
#include "hft/tft.hpp"

namespace hft {

// Matrix-model data with the cocycle valued in mu_m, stored as exponents:
// tau[g][h][i] = k means the value zeta_m^k on block i.
struct ModelData {
    GroupTable group;
    std::vector<std::size_t> blocks;
    int value_group_m = 2;
    std::vector<std::vector<std::vector<int>>> tau;  // empty = trivial
    std::vector<std::vector<int>> sigma;             // empty = trivial
    std::vector<Scalar> r;                           // empty = all ones

    std::size_t n() const { return blocks.size(); }
};

// Fills empty tau/sigma/r with the trivial data.
ModelData normalized(const ModelData& m);
MatrixModelSpec to_spec(const ModelData& m);

// Check names are the failure kinds: Schema, CocycleInvalid, NotAHomomorphism, StabViolated.
Report validate_model(const ModelData& m);

struct EquivalenceWitness {
    std::vector<int> perm;                  // block i of the first model goes to perm[i]
    std::vector<std::vector<int>> cochain;  // phi[g][i] exponents, phi[e] = 0
};

// Throws Error("ValueGroupMismatch") for different m, Error("ModelMismatch") for
// different groups or block counts, Error("TooLarge") past the search budget.
std::optional<EquivalenceWitness> are_equivalent(const ModelData& a, const ModelData& b,
                                                 std::size_t budget = std::size_t{1} << 22);

// One lexicographically least representative per class, for every r in r_reps.
// Empty blocks means all blocks of size 1; empty r_reps means r = (1, ..., 1).
std::vector<ModelData> enumerate_classes(const GroupTable& g, std::size_t n, int m,
                                         std::vector<std::vector<Scalar>> r_reps = {},
                                         std::vector<std::size_t> blocks = {},
                                         std::size_t budget = std::size_t{1} << 22);

// Genus 0, every commuting pair, then genus-2 tuples in lexicographic order up to genus2_cap.
std::vector<Monodromy> surface_battery(const GroupTable& g, int max_genus = 2, std::size_t genus2_cap = 16);

TheoryPackage model_theory(const ModelData& m);

// Equivalent models must agree on every battery surface. Inequivalent models
// that agree everywhere are recorded in the "separated" check detail and pass.
Report cross_validate(const ModelData& a, const ModelData& b, const std::vector<Monodromy>& battery);

nlohmann::json model_to_json(const ModelData& m);
ModelData model_from_json(const nlohmann::json& j, const GroupTable& g);

}  // namespace hft
