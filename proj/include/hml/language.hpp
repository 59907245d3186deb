#pragma once

// Modal languages O, the induced equivalence ~O, and the bounded oracle for
// logical equivalence of formulas that decides membership in O's closure.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hml/characterizations.hpp"
#include "hml/formula.hpp"
#include "hml/process.hpp"

namespace hml {

struct GrammarSource {
    CharacterizationId id;
    GrammarBounds bounds;
};

/// Either an explicit finite formula set or a grammar at fixed bounds.
struct LanguageSpec {
    std::optional<GrammarSource> grammar;
    FormulaSet formulas;  // explicit members; unused for grammar languages
    std::optional<ActionSet> declared_actions;

    static LanguageSpec explicit_set(FormulaSet formulas, std::optional<ActionSet> declared = std::nullopt);
    static LanguageSpec from_grammar(CharacterizationId id, GrammarBounds bounds);

    [[nodiscard]] bool is_grammar() const { return grammar.has_value(); }
    /// "CT actions=a,b depth=2 width=2" or "{<a>T, <b>T}".
    [[nodiscard]] std::string describe() const;
};

[[nodiscard]] FormulaSet materialize(const LanguageSpec& spec, std::size_t cap = default_formula_cap);

/// Universe of the bounded equivalence oracle.
struct OracleBounds {
    ActionSet alphabet;
    int depth = 0;
    int branch = 2;
};

/// First of "fresh", "fresh1", "fresh2", ... not in `used`.
[[nodiscard]] Action fresh_action(const ActionSet& used);

/// Branching used by the oracle: max(2, widest conjunction), limited to 3
/// for depth <= 1 and to 2 beyond, which keeps the universe below ~250k trees.
[[nodiscard]] int oracle_branch(std::size_t widest, int depth);

/// Actions of the formulas plus one fresh action; depth is the largest modal
/// depth; branch per oracle_branch.
[[nodiscard]] OracleBounds default_oracle_bounds(const std::vector<Formula>& formulas);

/// A tree in the bounded universe on which exactly one of phi, psi holds.
[[nodiscard]] std::optional<Term> distinguishing_tree(const Formula& phi, const Formula& psi,
                                                      const std::optional<OracleBounds>& bounds = std::nullopt);

/// phi and psi agree on every tree of the bounded universe.
[[nodiscard]] bool semantically_equiv(const Formula& phi, const Formula& psi,
                                      const std::optional<OracleBounds>& bounds = std::nullopt);

/// A materialized language with cached oracle universes. Not thread-safe.
class Language {
public:
    explicit Language(LanguageSpec spec, std::size_t cap = default_formula_cap);
    ~Language();
    Language(Language&&) noexcept;
    Language& operator=(Language&&) noexcept;

    [[nodiscard]] const LanguageSpec& spec() const { return spec_; }
    [[nodiscard]] const FormulaSet& members() const { return members_; }
    /// Members sorted by `simpler`.
    [[nodiscard]] const std::vector<Formula>& ordered() const { return ordered_; }
    /// Declared alphabet joined with the actions of all members.
    [[nodiscard]] const ActionSet& actions() const { return actions_; }

    /// phi is in the closure of O under logical equivalence: literal member
    /// after normalization, grammar member, or oracle-equivalent to a member.
    bool member_equiv(const Formula& phi);
    /// phi is equivalent to T or to F on the oracle universe.
    bool trivial(const Formula& phi);
    /// Bounds of the oracle universe used for `phi`.
    [[nodiscard]] OracleBounds oracle_bounds(const Formula& phi) const;

private:
    struct Oracle;
    Oracle& oracle_for(const Formula& phi);

    LanguageSpec spec_;
    FormulaSet members_;
    std::vector<Formula> ordered_;
    ActionSet actions_;
    int depth_ = 0;
    std::size_t width_ = 0;
    std::map<std::tuple<ActionSet, int, int>, std::unique_ptr<Oracle>> oracles_;
    std::unordered_map<std::string, bool> member_cache_;
};

/// Smallest member of O (by `simpler`) that distinguishes p and q, or
/// nothing when p ~O q. Evaluated on the operational semantics.
[[nodiscard]] std::optional<Formula> equiv_under(const Term& p, const Term& q, const Language& O);

} // namespace hml
