#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "hft/bimodule.hpp"
#include "hft/gcenter.hpp"

namespace hft {

// Strand kinds: A and C = B^op are the two algebras, M = U is the (A,C)
// bimodule and N = V the (C,A) bimodule of the context.
enum class StrandKind { A, C, M, N };

struct Strand {
    StrandKind kind;
    int degree;
    friend bool operator==(const Strand&, const Strand&) = default;
};
using Signature = std::vector<Strand>;

struct Symbol {
    std::string name;         // m, cm, f1..f4, sx, sy, cup, cap, tw, b, id, one
    bool bside = false;       // "B:" prefix, acts on C strands
    std::vector<int> labels;  // group elements
    int swap_at = -1;         // b(i i+1) as a whole-slice transposition, 0-based i
    std::size_t line = 1, col = 1;
};

struct Slice {
    std::vector<Symbol> symbols;
};

// slices[0] is the leftmost slice, applied last.
struct GeneratorWord {
    std::optional<Signature> source;
    std::vector<Slice> slices;
};

GeneratorWord parse_word(const std::string& text, const GroupTable& group);
std::string print_word(const GeneratorWord& w, const GroupTable& group);
std::string print_signature(const Signature& s, const GroupTable& group);
// Strand counts at the bottom (input) and top (output) of a word.
std::size_t input_count(const GeneratorWord& w);
std::size_t output_count(const GeneratorWord& w);
// w1 after w2, and the side-by-side tensor of two words.
GeneratorWord compose(const GeneratorWord& w1, const GeneratorWord& w2);
GeneratorWord tensor_words(const GeneratorWord& w1, const GeneratorWord& w2);

struct TheoryPackage {
    FrobeniusPackage a;   // A
    FrobeniusPackage b;   // B as given
    FrobeniusPackage c;   // C = B^op with the same trace
    MoritaContext zeta;   // between A and C
    // Absent when the attached z fails verification; the relation suite then reports it.
    std::optional<CrossedPackage> center;
};

// Throws Error("PackageIncomplete") when z is missing on either side and
// Error("ContextInvalid") when the context does not join A and B^op.
TheoryPackage make_theory(FrobeniusPackage a, FrobeniusPackage b, MoritaContext zeta);
// B = A^op with the identity context.
TheoryPackage standard_theory(const FrobeniusPackage& a);

struct Evaluation {
    Signature source, target;
    Matrix matrix;  // dim(target) x dim(source), row-major flat indices over strands
};

class Evaluator {
public:
    explicit Evaluator(const TheoryPackage& t) : t_(t) {}
    Evaluation evaluate(const GeneratorWord& w, std::optional<Signature> source = std::nullopt);
    Evaluation evaluate(const std::string& text, std::optional<Signature> source = std::nullopt) {
        return evaluate(parse_word(text, t_.a.group()), std::move(source));
    }
    std::size_t dim(const Strand& s) const;
    std::size_t dim(const Signature& s) const;
    const TheoryPackage& theory() const { return t_; }

private:
    struct Typed {
        Signature out;
        const Matrix* matrix;  // null for pure permutations
    };
    Typed type_symbol(const Symbol& s, const Signature& in);
    const Matrix& cached(const std::string& key, const std::function<Matrix()>& make);

    const TheoryPackage& t_;
    std::map<std::string, std::unique_ptr<Matrix>> cache_;
};

Evaluation evaluate(const GeneratorWord& w, const TheoryPackage& t, std::optional<Signature> source = std::nullopt);

// Every relation family over all labels; check names are family ids and
// detail carries {"labels": [...]} plus the side where applicable.
Report relation_suite(const TheoryPackage& t);

using Monodromy = std::vector<std::pair<int, int>>;

// The closed word for a genus-g surface whose handles carry the given (a_i, b_i).
GeneratorWord surface_word(const TheoryPackage& t, const Monodromy& m);
// Throws Error("MonodromyInvalid") unless prod_i [a_i, b_i] = e.
Scalar surface_invariant(const TheoryPackage& t, const Monodromy& m);
// The same number computed inside the G-center as a Frobenius algebra.
Scalar center_surface_value(const CrossedPackage& c, const Monodromy& m);

struct AuditResult {
    Scalar base;
    std::vector<std::pair<std::string, Scalar>> alternatives;
    bool pass() const {
        for (const auto& [_, v] : alternatives)
            if (v != base) return false;
        return true;
    }
};
AuditResult decomposition_audit(const TheoryPackage& t, const Monodromy& m, std::size_t k);

}  // namespace hft
