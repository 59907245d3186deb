#pragma once

// Hash-consed finite trees. Every interned state is a sorted, duplicate-free
// set of (action, child) edges, so two states are strongly bisimilar exactly
// when they have the same id. Children are always interned before their
// parents, which keeps ids topologically ordered.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hml/formula.hpp"
#include "hml/process.hpp"

namespace hml {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

struct Edge {
    ActionId action;
    StateId target;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class TreeStore {
public:
    TreeStore();

    ActionId action_id(const Action& name);
    [[nodiscard]] std::optional<ActionId> find_action(const Action& name) const;
    [[nodiscard]] const Action& action_name(ActionId id) const { return actions_[id]; }
    [[nodiscard]] std::size_t action_count() const { return actions_.size(); }

    StateId intern(std::vector<Edge> children);
    [[nodiscard]] StateId nil() const { return 0; }
    [[nodiscard]] std::span<const Edge> children(StateId s) const;
    [[nodiscard]] std::size_t size() const { return offsets_.size() - 1; }

    /// Number of transitions in the tree unfolding.
    [[nodiscard]] std::size_t tree_size(StateId s) const { return tree_size_[s]; }
    [[nodiscard]] int depth(StateId s) const { return depth_[s]; }
    /// Canonical BCCSP text: children sorted by (action, child text).
    [[nodiscard]] const std::string& text(StateId s);
    [[nodiscard]] Term term(StateId s);

    /// Interns the state reached by `p` (the bisimulation class of its LTS).
    StateId from_term(const Term& p);

    // Operator images on canonical trees. Each mirrors the transition rule
    // of the corresponding term constructor.
    StateId prefix(ActionId a, StateId s);
    StateId choice(StateId l, StateId r);
    StateId project(int n, StateId s);
    StateId encapsulate(const std::vector<ActionId>& blocked, StateId s);
    StateId prioritize(const PriorityOrder& order, StateId s);
    StateId parallel(StateId l, StateId r);

private:
    struct VecHash {
        std::size_t operator()(const std::vector<Edge>& v) const noexcept;
    };

    std::vector<Action> actions_;
    std::unordered_map<Action, ActionId> action_index_;

    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::unordered_map<std::vector<Edge>, StateId, VecHash> index_;
    std::vector<std::size_t> tree_size_;
    std::vector<int> depth_;
    std::vector<std::optional<std::string>> text_;

    std::unordered_map<std::string, StateId> term_memo_;
    std::map<std::pair<int, StateId>, StateId> project_memo_;
    std::map<std::pair<std::vector<ActionId>, StateId>, StateId> encap_memo_;
    std::map<std::pair<std::string, StateId>, StateId> priority_memo_;
    std::map<std::pair<StateId, StateId>, StateId> par_memo_;
};

inline constexpr std::size_t default_tree_cap = 4000000;

/// All trees of depth <= max_depth and branching <= max_branch over the
/// alphabet, one per bisimulation class, interned into `store`. Ordered by
/// (tree size, depth, text) so searches report the smallest witnesses first.
/// Throws CapError once a level would exceed `cap` trees.
[[nodiscard]] std::vector<StateId> enumerate_states(TreeStore& store, const ActionSet& alphabet, int max_depth,
                                                    int max_branch, std::size_t cap = default_tree_cap);

/// Same enumeration, without computing texts or sorting. Cheaper for large
/// oracle universes where only the set matters.
[[nodiscard]] std::vector<StateId> enumerate_states_unordered(TreeStore& store, const ActionSet& alphabet,
                                                              int max_depth, int max_branch,
                                                              std::size_t cap = default_tree_cap);

/// BCCSP representatives of the enumeration above.
[[nodiscard]] std::vector<Term> enumerate_processes(const ActionSet& alphabet, int max_depth, int max_branch,
                                                   std::size_t cap = default_tree_cap);

} // namespace hml
