#pragma once

// Table-driven satisfaction over a TreeStore. Formulas are hash-consed into
// a DAG and every node owns one packed bit column indexed by StateId.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hml/formula.hpp"
#include "hml/tree_store.hpp"

namespace hml {

using FormulaId = std::uint32_t;
using Column = std::vector<std::uint64_t>;

enum class SatMode {
    Parallel,  // OpenMP over 64-state words
    Serial,    // one state at a time; reference for the parallel kernel
};

class SatTable {
public:
    explicit SatTable(TreeStore& store, SatMode mode = SatMode::Parallel);

    /// Registers `f` (not normalized) and all its subformulas.
    FormulaId add(const Formula& f);
    [[nodiscard]] const Formula& formula(FormulaId id) const { return nodes_[id].formula; }
    [[nodiscard]] std::size_t formula_count() const { return nodes_.size(); }

    /// Extends every column to cover all states currently in the store.
    void sync();

    /// Requires a prior sync() covering `s`.
    [[nodiscard]] bool holds(FormulaId f, StateId s) const
    {
        return (nodes_[f].bits[s >> 6] >> (s & 63)) & 1U;
    }
    /// Convenience: add, sync and look up.
    bool holds(const Formula& f, StateId s);

    /// Packed truth values of `f` on `states`, bit i for states[i].
    [[nodiscard]] Column restrict(FormulaId f, const std::vector<StateId>& states) const;

    [[nodiscard]] SatMode mode() const { return mode_; }
    [[nodiscard]] TreeStore& store() const { return store_; }

private:
    struct Node {
        Formula formula;
        FormulaKind kind;
        Action action;
        std::vector<FormulaId> children;
        Column bits;
        std::size_t states_done = 0;
    };

    void compute_parallel(Node& node, std::size_t from_word, std::size_t to_word, std::size_t states);
    void compute_serial(Node& node, std::size_t from_word, std::size_t to_word, std::size_t states);

    TreeStore& store_;
    SatMode mode_;
    std::vector<Node> nodes_;
    std::unordered_map<std::string, FormulaId> index_;
};

/// Number of set bits.
[[nodiscard]] std::size_t popcount(const Column& c);

/// Column of `count` set bits.
[[nodiscard]] Column full_column(std::size_t count);

} // namespace hml
