#pragma once

// Generalized subformulas Sub, the composition Par on formula sets, and the
// exhaustive check that Par decides satisfaction by p || q.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hml/formula.hpp"
#include "hml/process.hpp"

namespace hml {

inline constexpr std::size_t default_sub_cap = 10000;
inline constexpr std::size_t default_subset_budget = std::size_t{1} << 16;

/// Formulas D[psi] for every split phi = D[C[psi]] with C nonempty. The hole
/// path of C crosses only conjunctions and diamonds; D is arbitrary.
[[nodiscard]] std::vector<Formula> one_step_deletions(const Formula& phi);

/// Closure of {phi} under one_step_deletions, normalized.
/// Throws CapError above `cap` members.
[[nodiscard]] FormulaSet sub(const Formula& phi, std::size_t cap = default_sub_cap);

/// Normalized members with top-level conjunctions split and T dropped: the
/// set read as the conjunction of its members.
[[nodiscard]] FormulaSet flatten(const FormulaSet& set);

enum class NegationMode {
    Monotone,    // one maximal (C, D) pair; exact because Par is monotone
    Exhaustive,  // every C, D within the subset budget
};

/// Membership in Par(A, B). A, B and diamond bodies are flattened; the C, D
/// quantified by the negation clause are subsets of Sub(psi) used as given.
/// Memoized; not thread-safe.
class ParCalculus {
public:
    explicit ParCalculus(NegationMode mode = NegationMode::Monotone,
                         std::size_t subset_budget = default_subset_budget);

    bool member(const Formula& phi, const FormulaSet& A, const FormulaSet& B);
    /// One line per clause applied in a successful derivation; empty when
    /// phi is not a member.
    std::vector<std::string> derivation(const Formula& phi, const FormulaSet& A, const FormulaSet& B);

private:
    using Id = std::uint32_t;
    using Set = std::vector<Id>;  // sorted

    Id intern(const Formula& f);
    Set to_set(const FormulaSet& s);
    Set flat_ids(const std::vector<Id>& members);
    bool member(Id phi, const Set& A, const Set& B);
    bool negation(Id psi, const Set& A, const Set& B);
    const std::vector<Id>& sub_ids(Id psi);
    void explain(Id phi, const Set& A, const Set& B, int indent, std::vector<std::string>& out);
    std::string show(const Set& s) const;

    NegationMode mode_;
    std::size_t budget_;
    std::vector<Formula> formulas_;
    std::unordered_map<std::string, Id> ids_;
    std::unordered_map<Id, std::vector<Id>> subs_;
    std::map<std::tuple<Id, Set, Set>, bool> memo_;
};

[[nodiscard]] bool par_member(const Formula& phi, const FormulaSet& A, const FormulaSet& B);

struct Lemma4Bounds {
    ActionSet actions{"a", "b"};
    int process_depth = 2;
    int process_branch = 2;
    int formula_depth = 2;
    int formula_width = 2;
    int formula_size = 9;
};

struct Lemma4Violation {
    Term p;
    Term q;
    Formula phi;
    bool composed_sat = false;  // p || q |= phi
    bool par_derivable = false; // exists A, B in Sub(phi) with p |= A, q |= B, phi in Par(A, B)
};

struct Lemma4Result {
    std::size_t formulas = 0;
    std::size_t checks = 0;
    std::optional<Lemma4Violation> violation;
};

/// Checks the biconditional for every pair of enumerated processes and every
/// enumerated formula. In Monotone mode A and B are the largest subsets of
/// Sub(phi) satisfied by p and q; in Exhaustive mode all satisfied subsets
/// are tried within the subset budget (CapError beyond it).
[[nodiscard]] Lemma4Result verify_lemma4(const Lemma4Bounds& bounds, NegationMode mode = NegationMode::Monotone);

/// The same check for one triple.
[[nodiscard]] Lemma4Violation lemma4_sides(const Term& p, const Term& q, const Formula& phi,
                                           NegationMode mode = NegationMode::Monotone);

} // namespace hml
