#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hft/group.hpp"
#include "hft/matrix.hpp"

namespace hft {

// Element of a graded algebra, one coefficient vector per degree.
using Elem = std::vector<Vec>;

class GradedAlgebra {
public:
    // mult[g][h] is the dims[gh] x (dims[g]*dims[h]) matrix of A_g (x) A_h -> A_gh,
    // source index i*dims[h]+j. Validates and throws NotAssociative, UnitFails
    // or GradingViolated.
    static GradedAlgebra build(GroupTable group, std::vector<std::size_t> dims,
                               std::vector<std::vector<Matrix>> mult, Vec unit);

    const GroupTable& group() const { return group_; }
    std::size_t dim(int g) const { return dims_[static_cast<std::size_t>(g)]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const;
    const Matrix& mult(int g, int h) const { return mult_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
    const Vec& unit() const { return unit_; }

    // Product of homogeneous x in A_g and y in A_h, landing in A_gh.
    Vec mul(int g, const Vec& x, int h, const Vec& y) const;
    Elem mul(const Elem& x, const Elem& y) const;
    // Matrix of y -> a*y on A_h (a in A_g) and y -> y*a on A_h.
    Matrix left_mul(int g, const Vec& a, int h) const;
    Matrix right_mul(int g, const Vec& a, int h) const;

    Elem zero_elem() const;
    Elem homogeneous(int g, const Vec& v) const;
    Elem basis_elem(int g, std::size_t i) const;
    Elem unit_elem() const { return homogeneous(group_.identity(), unit_); }

    nlohmann::json to_json() const;
    static GradedAlgebra from_json(const GroupTable& group, const nlohmann::json& j);

    friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
        return a.group_ == b.group_ && a.dims_ == b.dims_ && a.mult_ == b.mult_ && a.unit_ == b.unit_;
    }

private:
    GroupTable group_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> mult_;
    Vec unit_;
};

GradedAlgebra group_algebra(const GroupTable& group);

// Twisted matrix model: A_e = prod_i M_{k_i}; block i of A_g holds
// k_i x k_{sigma_g^{-1}(i)} matrices; (l_g X)(l_h Y) has block i equal to
// tau(g,h)_i X_i Y_{sigma_g^{-1}(i)}. Basis order is (block, row, col).
struct MatrixModelSpec {
    std::vector<std::size_t> blocks;
    std::vector<std::vector<std::vector<Scalar>>> tau;  // tau[g][h][i]; empty = trivial
    std::vector<std::vector<int>> sigma;                // sigma[g][i]; empty = trivial
    std::vector<Scalar> r;                              // empty = all ones
};

GradedAlgebra matrix_model(const GroupTable& group, const MatrixModelSpec& spec);
// Trace functional on A_e with value r_i k_i on each diagonal unit of block i.
Vec matrix_model_trace(const GroupTable& group, const MatrixModelSpec& spec);
// Index of basis element E_{row,col} of block `block` in A_g.
std::size_t matrix_model_index(const GroupTable& group, const MatrixModelSpec& spec, int g, std::size_t block,
                               std::size_t row, std::size_t col);
// Invariant checks shared with the classification module.
void check_model_data(const GroupTable& group, const MatrixModelSpec& spec);

struct StrongGrading {
    bool strongly_graded = false;
    std::optional<std::pair<int, int>> failing_pair;
    // splitting[g] is a flat tensor in A_g (x) A_{g^-1} whose product is 1.
    std::vector<Vec> splitting;
};

StrongGrading is_strongly_graded(const GradedAlgebra& a);
GradedAlgebra opposite(const GradedAlgebra& a);

// JSON helpers shared by every serialized structure: group elements are names
// or indices, scalars are integers or "p/q*z^k" strings.
int element_of_json(const GroupTable& group, const nlohmann::json& j);
Scalar scalar_of_json(const nlohmann::json& j, int conductor);

// Permutation matrix of x (x) y -> y (x) x on V_m (x) V_n.
Matrix swap_matrix(std::size_t m, std::size_t n);

}  // namespace hft
