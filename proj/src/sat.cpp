#include "hml/sat.hpp"

#include <algorithm>
#include <bit>
#include <optional>

namespace hml {

namespace {

std::uint64_t word_mask(std::size_t word, std::size_t states)
{
    std::size_t begin = word * 64;
    if (begin + 64 <= states) return ~std::uint64_t{0};
    std::size_t live = states - begin;
    return (std::uint64_t{1} << live) - 1;
}

} // namespace

std::size_t popcount(const Column& c)
{
    std::size_t n = 0;
    for (auto w : c) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

Column full_column(std::size_t count)
{
    Column c((count + 63) / 64, ~std::uint64_t{0});
    if (count % 64) c.back() = (std::uint64_t{1} << (count % 64)) - 1;
    return c;
}

SatTable::SatTable(TreeStore& store, SatMode mode) : store_{store}, mode_{mode} {}

FormulaId SatTable::add(const Formula& f)
{
    if (auto it = index_.find(f.key()); it != index_.end()) return it->second;
    Node node{f, f.kind(), {}, {}, {}, 0};
    switch (f.kind()) {
    case FormulaKind::Truth: break;
    case FormulaKind::Diamond:
        node.action = f.action();
        node.children.push_back(add(f.body()));
        break;
    case FormulaKind::Neg: node.children.push_back(add(f.body())); break;
    case FormulaKind::Conj:
        for (const auto& c : f.conjuncts()) node.children.push_back(add(c));
        break;
    }
    auto id = static_cast<FormulaId>(nodes_.size());
    nodes_.push_back(std::move(node));
    index_.emplace(f.key(), id);
    return id;
}

void SatTable::sync()
{
    const std::size_t states = store_.size();
    const std::size_t words = (states + 63) / 64;
    for (auto& node : nodes_) {
        if (node.states_done == states) continue;
        node.bits.resize(words, 0);
        if (mode_ == SatMode::Parallel)
            compute_parallel(node, node.states_done / 64, words, states);
        else
            compute_serial(node, node.states_done / 64, words, states);
        node.states_done = states;
    }
}

void SatTable::compute_parallel(Node& node, std::size_t from_word, std::size_t to_word, std::size_t states)
{
    const auto from = static_cast<std::int64_t>(from_word);
    const auto to = static_cast<std::int64_t>(to_word);
    std::optional<ActionId> action;
    if (node.kind == FormulaKind::Diamond) action = store_.find_action(node.action);
    const TreeStore& store = store_;

#pragma omp parallel for schedule(static)
    for (std::int64_t w = from; w < to; ++w) {
        const auto word = static_cast<std::size_t>(w);
        const std::uint64_t mask = word_mask(word, states);
        std::uint64_t out = 0;
        switch (node.kind) {
        case FormulaKind::Truth: out = mask; break;
        case FormulaKind::Neg: out = ~nodes_[node.children[0]].bits[word] & mask; break;
        case FormulaKind::Conj:
            out = mask;
            for (auto c : node.children) out &= nodes_[c].bits[word];
            break;
        case FormulaKind::Diamond: {
            if (!action) break;
            const Column& body = nodes_[node.children[0]].bits;
            for (std::size_t b = 0; b < 64 && word * 64 + b < states; ++b) {
                auto s = static_cast<StateId>(word * 64 + b);
                for (const auto& e : store.children(s)) {
                    if (e.action == *action && ((body[e.target >> 6] >> (e.target & 63)) & 1U)) {
                        out |= std::uint64_t{1} << b;
                        break;
                    }
                }
            }
            break;
        }
        }
        node.bits[word] = out;
    }
}

void SatTable::compute_serial(Node& node, std::size_t from_word, std::size_t, std::size_t states)
{
    auto get = [this](FormulaId f, StateId s) { return ((nodes_[f].bits[s >> 6] >> (s & 63)) & 1U) != 0; };
    std::optional<ActionId> action;
    if (node.kind == FormulaKind::Diamond) action = store_.find_action(node.action);
    for (std::size_t i = from_word * 64; i < states; ++i) {
        auto s = static_cast<StateId>(i);
        bool v = false;
        switch (node.kind) {
        case FormulaKind::Truth: v = true; break;
        case FormulaKind::Neg: v = !get(node.children[0], s); break;
        case FormulaKind::Conj:
            v = std::all_of(node.children.begin(), node.children.end(), [&](FormulaId c) { return get(c, s); });
            break;
        case FormulaKind::Diamond:
            if (!action) break;
            for (const auto& e : store_.children(s))
                if (e.action == *action && get(node.children[0], e.target)) v = true;
            break;
        }
        std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (v)
            node.bits[i >> 6] |= bit;
        else
            node.bits[i >> 6] &= ~bit;
    }
}

bool SatTable::holds(const Formula& f, StateId s)
{
    FormulaId id = add(f);
    sync();
    return holds(id, s);
}

Column SatTable::restrict(FormulaId f, const std::vector<StateId>& states) const
{
    Column out((states.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < states.size(); ++i)
        if (holds(f, states[i])) out[i >> 6] |= std::uint64_t{1} << (i & 63);
    return out;
}

} // namespace hml
