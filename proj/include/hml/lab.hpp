#pragma once

// Congruence search: does p ~O q (componentwise) imply f(p..) ~O f(q..)?
// Also the fixed demonstrations and the condition/search matrix.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hml/conditions.hpp"
#include "hml/formula.hpp"
#include "hml/language.hpp"
#include "hml/process.hpp"
#include "hml/tree_store.hpp"

namespace hml {

struct Operator {
    enum class Kind { Prefix, Choice, Projection, Encapsulation, Priority, Parallel };
    Kind kind = Kind::Choice;
    Action action;          // Prefix
    int depth = 0;          // Projection
    ActionSet blocked;      // Encapsulation
    PriorityOrder order;    // Priority

    static Operator prefix(Action a);
    static Operator choice();
    static Operator projection(int n);
    static Operator encapsulation(ActionSet blocked);
    static Operator priority(PriorityOrder order);
    static Operator parallel();

    [[nodiscard]] bool binary() const { return kind == Kind::Choice || kind == Kind::Parallel; }
    /// Actions the operator mentions.
    [[nodiscard]] ActionSet actions() const;
    /// "prefix:a", "choice", "pi:1", "enc:{b}", "theta:a>b", "par"
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] Term apply(const Term& p) const;
    [[nodiscard]] Term apply(const Term& p, const Term& q) const;
    StateId apply(TreeStore& store, StateId p) const;
    StateId apply(TreeStore& store, StateId p, StateId q) const;
};

/// Inverse of Operator::to_string; "prefix:a" may also be written "prefix a".
[[nodiscard]] Operator parse_operator(const std::string& text);

struct SearchBounds {
    std::optional<ActionSet> alphabet;  // default: actions of O and of the operator
    int depth = 3;
    int branch = 2;
};

struct CounterexampleReport {
    Operator op;
    std::vector<std::pair<Term, Term>> components;  // each pair is ~O
    Term composed_left;
    Term composed_right;
    Formula distinguishing;  // member of O separating the composed terms
    std::string language;
    ActionSet alphabet;
    int depth = 0;
    int branch = 0;
};

struct SearchResult {
    std::optional<CounterexampleReport> report;  // empty: no violation at bounds
    std::size_t universe = 0;
    std::size_t classes = 0;
    std::size_t checked = 0;
};

/// Enumerates trees at the bounds, groups them into ~O classes, and compares
/// every f(p..) with f(rep(p)..), where rep is the first member of the class.
/// Candidates are visited by increasing total tree size, so the reported
/// violation is deterministic and small.
[[nodiscard]] SearchResult congruence_search(const Operator& op, Language& O, const SearchBounds& bounds = {});

struct ReplayResult {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Re-derives every verdict of a report from the operational semantics.
[[nodiscard]] ReplayResult replay(const CounterexampleReport& report, const Language& O);

struct CtDemo {
    Term left;   // a.(b.0 + c.0)
    Term right;  // a.b.0 + a.c.0
    bool components_equivalent = false;
    std::optional<Formula> encapsulated_distinguishing;
    std::vector<std::pair<int, std::optional<Formula>>> projections;  // n, distinguishing formula if any
    CounterexampleReport report;
};

/// Completed traces over {a,b,c} (depth 3, width 3): the pair above is
/// equivalent, enc{b} separates it, pi_n for n <= 3 does not.
[[nodiscard]] CtDemo ct_encapsulation_demo();

struct SuiteSearch {
    std::string op;
    bool violation = false;
    std::optional<CounterexampleReport> report;
    std::string error;
};

struct SuiteCell {
    std::string condition;
    bool holds = false;
    std::size_t violations = 0;
    std::optional<ConditionWitness> witness;
    std::vector<SuiteSearch> searches;
    std::string error;
};

struct SuiteRow {
    std::string language;
    std::vector<SuiteCell> cells;  // AC, AP, RES, PAR
};

struct SuiteBounds {
    ActionSet actions{"a", "b"};
    int language_depth = 2;
    int language_width = 2;
    int search_depth = 2;
    int search_branch = 2;
};

struct SuiteReport {
    SuiteBounds bounds;
    std::vector<SuiteRow> rows;
    double seconds = 0;
};

/// For each standard characterization: all four conditions, and for each
/// condition that holds the congruence searches it licenses (AC: choice,
/// AP: prefix per action, RES: pi_n for n <= search depth and enc_B for all
/// B, PAR: parallel). Cap errors are recorded in the cell.
[[nodiscard]] SuiteReport theorem_suite(const SuiteBounds& bounds = {},
                                        const std::vector<CharacterizationId>& ids = standard_characterizations());

} // namespace hml
