#pragma once

// Syntactic congruence conditions on a modal language O:
//   AC   conjuncts of 0-level conjunctions are in O's closure   (choice)
//   AP   bodies of 0-level <a>-diamonds are in O's closure      (prefix a.)
//   RES  replacing any negation by T stays in O's closure       (restriction)
//   PAR  Sub of every member stays in O's closure               (parallel)
//
// "In O's closure" means member_equiv, or logically trivial: T and F never
// separate processes, so they are admitted regardless of membership.

#include <optional>
#include <string>
#include <vector>

#include "hml/formula.hpp"
#include "hml/language.hpp"

namespace hml {

enum class Condition { AC, AP, RES, PAR };

struct ConditionWitness {
    Formula formula;   // member of O
    FormulaPath path;  // position inside `formula`
    Formula missing;   // candidate outside the closure
};

struct ConditionVerdict {
    Condition condition = Condition::AC;
    std::optional<Action> action;  // AP only; empty means every action
    bool holds = true;
    std::vector<ConditionWitness> witnesses;  // at most `max_witnesses`
    std::size_t violations = 0;
    std::string bounds;

    [[nodiscard]] std::string name() const;  // "AC", "AP(a)", "AP", "RES", "PAR"
};

inline constexpr std::size_t default_max_witnesses = 20;

[[nodiscard]] ConditionVerdict check_AC(Language& O, std::size_t max_witnesses = default_max_witnesses);
[[nodiscard]] ConditionVerdict check_AP(Language& O, const Action& a,
                                        std::size_t max_witnesses = default_max_witnesses);
/// AP for every action of O.
[[nodiscard]] ConditionVerdict check_AP(Language& O, std::size_t max_witnesses = default_max_witnesses);
[[nodiscard]] ConditionVerdict check_RES(Language& O, std::size_t max_witnesses = default_max_witnesses);
[[nodiscard]] ConditionVerdict check_PAR(Language& O, std::size_t max_witnesses = default_max_witnesses);

[[nodiscard]] ConditionVerdict check(Condition c, Language& O);
[[nodiscard]] Condition parse_condition(const std::string& name);  // throws std::invalid_argument

} // namespace hml
