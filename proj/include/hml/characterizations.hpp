#pragma once

// The modal characterizations of the linear-time/branching-time spectrum:
// grammar recognizers and bounded enumerators.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hml/formula.hpp"
#include "hml/process.hpp"

namespace hml {

enum class CharKind { T, CT, CTStar, F, R, FT, RT, S1, RS, NS, B };

struct CharacterizationId {
    CharKind kind = CharKind::T;
    int n = 2;  // nesting, NS only

    /// "T", "CT", "CT*", "F", "R", "FT", "RT", "1S", "RS", "2S", "3S", ..., "B"
    [[nodiscard]] std::string name() const;
    /// Accepts the names above plus "CTstar" and "nS" (with `n` applied).
    /// Throws std::invalid_argument on unknown names.
    static CharacterizationId parse(std::string_view text, int n = 2);

    friend bool operator==(const CharacterizationId&, const CharacterizationId&) = default;
};

/// T, CT, CT*, F, R, FT, RT, 1S, RS, 2S, B.
[[nodiscard]] std::vector<CharacterizationId> standard_characterizations();

struct GrammarBounds {
    ActionSet actions;
    int depth = 0;
    int width = 0;
};

inline constexpr std::size_t default_formula_cap = 200000;

/// Grammar membership of normalize(phi). Width is not bounded here. `act` is
/// the declared alphabet; only CT and CT* depend on it.
[[nodiscard]] bool recognize(const CharacterizationId& id, const Formula& phi, const ActionSet& act);

/// All normalized grammar formulas over `bounds.actions` with modal depth at
/// most `bounds.depth` whose widest conjunction has at most `bounds.width`
/// conjuncts. For B this is a fragment: literals and conjunctions are built
/// from signed diamonds only. Throws CapError above `cap` formulas.
[[nodiscard]] FormulaSet enumerate(const CharacterizationId& id, const GrammarBounds& bounds,
                                   std::size_t cap = default_formula_cap);

struct RefinementResult {
    bool holds = true;
    /// First pair (in enumeration order) equivalent under the finer language
    /// but distinguished by the coarser one.
    std::optional<std::pair<Term, Term>> witness;
    std::optional<Formula> distinguishing;
};

/// Checks that ~fine refines ~coarse (p ~fine q implies p ~coarse q) on all
/// processes over `formulas.actions` of depth <= process_depth and branching
/// <= process_branch, with both languages enumerated at `formulas`.
[[nodiscard]] RefinementResult spectrum_refinement_check(const CharacterizationId& coarse,
                                                         const CharacterizationId& fine,
                                                         const GrammarBounds& formulas, int process_depth,
                                                         int process_branch);

} // namespace hml

namespace hml {

/// Every formula built from T, negation, diamonds over `actions` and
/// conjunctions of 2..max_width conjuncts, with modal depth <= max_depth and
/// size <= max_size. Deduplicated by text; with `normalized` the results are
/// normalized first, which merges logically trivial variants.
[[nodiscard]] std::vector<Formula> enumerate_hml(const ActionSet& actions, int max_depth, int max_width,
                                                 int max_size, bool normalized = false);

} // namespace hml
