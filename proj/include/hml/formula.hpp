#pragma once

// Hennessy-Milner formulas with finite conjunction, diamond and negation.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hml {

using Action = std::string;
using ActionSet = std::set<Action>;

enum class FormulaKind { Truth, Conj, Diamond, Neg };

class Formula {
public:
    Formula();  // T

    static Formula truth();
    static Formula falsity();  // ~T
    static Formula conj(std::vector<Formula> conjuncts);
    static Formula conj(Formula left, Formula right);
    static Formula diamond(Action action, Formula body);
    static Formula neg(Formula body);

    [[nodiscard]] FormulaKind kind() const;
    [[nodiscard]] bool is_truth() const { return kind() == FormulaKind::Truth; }
    [[nodiscard]] bool is_falsity() const;
    [[nodiscard]] const std::vector<Formula>& conjuncts() const;
    [[nodiscard]] const Action& action() const;
    [[nodiscard]] const Formula& body() const;

    /// Canonical text; doubles as identity for sets, maps and memo tables.
    [[nodiscard]] const std::string& key() const;
    [[nodiscard]] int modal_depth() const;
    /// Number of syntax nodes.
    [[nodiscard]] std::size_t size() const;

    friend bool operator==(const Formula& a, const Formula& b) { return a.key() == b.key(); }
    friend bool operator<(const Formula& a, const Formula& b) { return a.key() < b.key(); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_{std::move(node)} {}
    std::shared_ptr<const Node> node_;
};

[[nodiscard]] std::string to_string(const Formula& f);

[[nodiscard]] ActionSet actions_of(const Formula& f);
/// Largest conjunction arity anywhere in the formula (0 if none).
[[nodiscard]] std::size_t widest_conjunction(const Formula& f);

/// Removes double negations, flattens and sorts conjunctions, drops T
/// conjuncts, deduplicates, collapses empty/singleton conjunctions.
[[nodiscard]] Formula normalize(const Formula& f);

/// Total order used for picking "smallest" formulas: modal depth, size, text.
[[nodiscard]] bool simpler(const Formula& a, const Formula& b);

/// A finite set of normalized formulas, ordered by key.
class FormulaSet {
public:
    using container = std::map<std::string, Formula>;
    using const_iterator = container::const_iterator;

    FormulaSet() = default;
    FormulaSet(std::initializer_list<Formula> formulas);

    /// Normalizes before inserting. Returns true if the set grew.
    bool insert(const Formula& f);
    [[nodiscard]] bool contains(const Formula& f) const;  // normalizes the probe
    [[nodiscard]] bool contains_key(const std::string& key) const { return members_.count(key) != 0; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] const_iterator begin() const { return members_.begin(); }
    [[nodiscard]] const_iterator end() const { return members_.end(); }
    [[nodiscard]] std::vector<Formula> formulas() const;
    [[nodiscard]] ActionSet actions() const;
    [[nodiscard]] int max_modal_depth() const;
    [[nodiscard]] std::size_t widest_conjunction() const;

    friend bool operator==(const FormulaSet& a, const FormulaSet& b);

private:
    container members_;
};

// --- positions -----------------------------------------------------------

struct PathStep {
    enum class Kind { ConjIndex, NegBody, DiamondBody };
    Kind kind;
    std::size_t index = 0;  // ConjIndex only
    Action action;          // DiamondBody only
};

/// A position inside a formula. Its level is the number of diamonds crossed,
/// so a level-n path marks the hole of an n-level context.
struct FormulaPath {
    std::vector<PathStep> steps;

    [[nodiscard]] int level() const;
    [[nodiscard]] bool under_negation() const;
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] bool is_prefix_of(const FormulaPath& other) const;
};

struct Position {
    FormulaPath path;
    Formula subformula;
};

/// Every position of the formula in preorder, root first.
[[nodiscard]] std::vector<Position> positions(const Formula& f);
[[nodiscard]] const Formula& subformula_at(const Formula& f, const FormulaPath& path);
/// Rebuilds the formula with the subformula at `path` replaced. Not normalized.
[[nodiscard]] Formula replace_at(const Formula& f, const FormulaPath& path, const Formula& replacement);

} // namespace hml
