#pragma once

// Finite process terms: BCCSP (0, prefix, choice) plus projection,
// encapsulation, priority, parallel composition and left merge. Terms are
// immutable and evaluated lazily through their transition rules.

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hml/formula.hpp"

namespace hml {

enum class TermKind { Nil, Prefix, Choice, Proj, Encap, Priority, Par, LeftMerge };

/// Strict partial order on actions; `higher(a, b)` reads "a has priority over b".
class PriorityOrder {
public:
    PriorityOrder() = default;
    /// Pairs (higher, lower). The transitive closure is taken; an order that
    /// becomes reflexive is rejected with std::invalid_argument.
    explicit PriorityOrder(std::vector<std::pair<Action, Action>> pairs);

    [[nodiscard]] bool higher(const Action& a, const Action& b) const;
    [[nodiscard]] const std::vector<std::pair<Action, Action>>& pairs() const { return pairs_; }
    [[nodiscard]] std::string to_string() const;  // "a>b,b>c"

private:
    std::vector<std::pair<Action, Action>> pairs_;    // as given, sorted
    std::vector<std::pair<Action, Action>> closure_;  // sorted
};

class Term {
public:
    Term();  // 0

    static Term nil();
    static Term prefix(Action action, Term body);
    static Term choice(Term left, Term right);
    static Term proj(int depth, Term body);
    static Term encap(ActionSet blocked, Term body);
    static Term priority(PriorityOrder order, Term body);
    static Term par(Term left, Term right);
    static Term left_merge(Term left, Term right);

    [[nodiscard]] TermKind kind() const;
    [[nodiscard]] const Action& action() const;       // Prefix
    [[nodiscard]] const Term& body() const;           // Prefix, Proj, Encap, Priority
    [[nodiscard]] const Term& left() const;           // Choice, Par, LeftMerge
    [[nodiscard]] const Term& right() const;
    [[nodiscard]] int proj_depth() const;             // Proj
    [[nodiscard]] const ActionSet& blocked() const;   // Encap
    [[nodiscard]] const PriorityOrder& order() const; // Priority

    /// Canonical text in the process grammar; identity for memo tables.
    [[nodiscard]] const std::string& key() const;
    /// Maximal prefix nesting; bounds the length of any run.
    [[nodiscard]] int syntactic_depth() const;

    friend bool operator==(const Term& a, const Term& b) { return a.key() == b.key(); }
    friend bool operator<(const Term& a, const Term& b) { return a.key() < b.key(); }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_{std::move(node)} {}
    std::shared_ptr<const Node> node_;
};

[[nodiscard]] std::string to_string(const Term& p);

struct Transition {
    Action action;
    Term target;

    friend bool operator==(const Transition& a, const Transition& b)
    {
        return a.action == b.action && a.target == b.target;
    }
};

/// Outgoing transitions derivable from the operational rules, deduplicated
/// and sorted by (action, target text).
[[nodiscard]] std::vector<Transition> step(const Term& p);

[[nodiscard]] ActionSet actions_of(const Term& p);

struct Lts {
    struct Edge {
        std::size_t source;
        Action action;
        std::size_t target;
    };
    std::vector<std::string> states;  // canonical term text per state
    std::vector<Edge> transitions;
    std::size_t root = 0;
};

inline constexpr std::size_t default_state_cap = 100000;

/// Reachable LTS rooted at `p`. States are identified by term text.
/// Throws CapError when more than `state_cap` states are reached.
[[nodiscard]] Lts to_lts(const Term& p, std::size_t state_cap = default_state_cap);

[[nodiscard]] std::string to_dot(const Lts& lts);

/// Depth of the longest path from the root (the LTS is acyclic).
[[nodiscard]] int lts_depth(const Lts& lts);

/// Strong HML satisfaction evaluated straight from `step`. Serves as the
/// reference semantics that the table-driven evaluator is checked against.
[[nodiscard]] bool sat(const Term& p, const Formula& phi);

/// Memoizing variant of `sat` for repeated queries over related terms.
class TermEvaluator {
public:
    [[nodiscard]] bool sat(const Term& p, const Formula& phi);
    [[nodiscard]] const std::vector<Transition>& transitions(const Term& p);

private:
    std::unordered_map<std::string, std::vector<Transition>> steps_;
    std::unordered_map<std::string, bool> verdicts_;
};

} // namespace hml
