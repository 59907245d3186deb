#include "hml/tree_store.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "hml/errors.hpp"

namespace hml {

std::size_t TreeStore::VecHash::operator()(const std::vector<Edge>& v) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL ^ v.size();
    for (const auto& e : v) {
        h ^= (static_cast<std::size_t>(e.action) << 32) ^ e.target;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return h;
}

TreeStore::TreeStore()
{
    offsets_.push_back(0);
    intern({});
}

ActionId TreeStore::action_id(const Action& name)
{
    auto [it, fresh] = action_index_.emplace(name, static_cast<ActionId>(actions_.size()));
    if (fresh) actions_.push_back(name);
    return it->second;
}

std::optional<ActionId> TreeStore::find_action(const Action& name) const
{
    auto it = action_index_.find(name);
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

StateId TreeStore::intern(std::vector<Edge> children)
{
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    if (auto it = index_.find(children); it != index_.end()) return it->second;

    auto id = static_cast<StateId>(size());
    std::size_t count = 0;
    int depth = 0;
    for (const auto& e : children) {
        assert(e.target < id);
        count += 1 + tree_size_[e.target];
        depth = std::max(depth, 1 + depth_[e.target]);
    }
    edges_.insert(edges_.end(), children.begin(), children.end());
    offsets_.push_back(edges_.size());
    tree_size_.push_back(count);
    depth_.push_back(depth);
    text_.emplace_back();
    index_.emplace(std::move(children), id);
    return id;
}

std::span<const Edge> TreeStore::children(StateId s) const
{
    return {edges_.data() + offsets_[s], offsets_[s + 1] - offsets_[s]};
}

Term TreeStore::term(StateId s)
{
    std::vector<Edge> kids(children(s).begin(), children(s).end());
    std::vector<Term> prefixes;
    prefixes.reserve(kids.size());
    for (const auto& e : kids) prefixes.push_back(Term::prefix(actions_[e.action], term(e.target)));
    std::sort(prefixes.begin(), prefixes.end());
    if (prefixes.empty()) return Term::nil();
    Term out = prefixes.front();
    for (std::size_t i = 1; i < prefixes.size(); ++i) out = Term::choice(out, prefixes[i]);
    return out;
}

const std::string& TreeStore::text(StateId s)
{
    if (!text_[s]) text_[s] = term(s).key();
    return *text_[s];
}

StateId TreeStore::from_term(const Term& p)
{
    if (auto it = term_memo_.find(p.key()); it != term_memo_.end()) return it->second;
    std::vector<Edge> kids;
    for (const auto& t : step(p)) {
        ActionId a = action_id(t.action);
        kids.push_back({a, from_term(t.target)});
    }
    StateId id = intern(std::move(kids));
    term_memo_.emplace(p.key(), id);
    return id;
}

StateId TreeStore::prefix(ActionId a, StateId s) { return intern({{a, s}}); }

StateId TreeStore::choice(StateId l, StateId r)
{
    std::vector<Edge> kids(children(l).begin(), children(l).end());
    kids.insert(kids.end(), children(r).begin(), children(r).end());
    return intern(std::move(kids));
}

StateId TreeStore::project(int n, StateId s)
{
    if (n <= 0) return nil();
    if (auto it = project_memo_.find({n, s}); it != project_memo_.end()) return it->second;
    std::vector<Edge> kids(children(s).begin(), children(s).end());
    for (auto& e : kids) e.target = project(n - 1, e.target);
    StateId id = intern(std::move(kids));
    project_memo_.emplace(std::pair{n, s}, id);
    return id;
}

StateId TreeStore::encapsulate(const std::vector<ActionId>& blocked, StateId s)
{
    if (auto it = encap_memo_.find({blocked, s}); it != encap_memo_.end()) return it->second;
    std::vector<Edge> kids;
    std::vector<Edge> all(children(s).begin(), children(s).end());
    for (const auto& e : all)
        if (std::find(blocked.begin(), blocked.end(), e.action) == blocked.end())
            kids.push_back({e.action, encapsulate(blocked, e.target)});
    StateId id = intern(std::move(kids));
    encap_memo_.emplace(std::pair{blocked, s}, id);
    return id;
}

StateId TreeStore::prioritize(const PriorityOrder& order, StateId s)
{
    std::string tag = order.to_string();
    if (auto it = priority_memo_.find({tag, s}); it != priority_memo_.end()) return it->second;
    std::vector<Edge> all(children(s).begin(), children(s).end());
    std::vector<Edge> kids;
    for (const auto& e : all) {
        bool preempted = std::any_of(all.begin(), all.end(), [&](const Edge& u) {
            return order.higher(actions_[u.action], actions_[e.action]);
        });
        if (!preempted) kids.push_back({e.action, prioritize(order, e.target)});
    }
    StateId id = intern(std::move(kids));
    priority_memo_.emplace(std::pair{tag, s}, id);
    return id;
}

StateId TreeStore::parallel(StateId l, StateId r)
{
    if (auto it = par_memo_.find({l, r}); it != par_memo_.end()) return it->second;
    std::vector<Edge> left(children(l).begin(), children(l).end());
    std::vector<Edge> right(children(r).begin(), children(r).end());
    std::vector<Edge> kids;
    for (const auto& e : left) kids.push_back({e.action, parallel(e.target, r)});
    for (const auto& e : right) kids.push_back({e.action, parallel(l, e.target)});
    StateId id = intern(std::move(kids));
    par_memo_.emplace(std::pair{l, r}, id);
    return id;
}

// --- enumeration -----------------------------------------------------------

namespace {

void combinations(TreeStore& store, const std::vector<Edge>& options, std::size_t from, int remaining,
                  std::vector<Edge>& chosen, std::vector<StateId>& out, std::size_t cap)
{
    if (out.size() >= cap)
        throw CapError("tree enumeration exceeds " + std::to_string(cap) + " states");
    out.push_back(store.intern(chosen));
    if (remaining == 0) return;
    for (std::size_t i = from; i < options.size(); ++i) {
        chosen.push_back(options[i]);
        combinations(store, options, i + 1, remaining - 1, chosen, out, cap);
        chosen.pop_back();
    }
}

} // namespace

std::vector<StateId> enumerate_states_unordered(TreeStore& store, const ActionSet& alphabet, int max_depth,
                                                int max_branch, std::size_t cap)
{
    std::vector<ActionId> ids;
    for (const auto& a : alphabet) ids.push_back(store.action_id(a));
    std::vector<StateId> level{store.nil()};
    for (int d = 1; d <= max_depth && max_branch > 0; ++d) {
        std::vector<Edge> options;
        for (auto a : ids)
            for (auto t : level) options.push_back({a, t});
        std::vector<StateId> next;
        std::vector<Edge> chosen;
        combinations(store, options, 0, max_branch, chosen, next, cap);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = std::move(next);
    }
    return level;
}

std::vector<StateId> enumerate_states(TreeStore& store, const ActionSet& alphabet, int max_depth, int max_branch,
                                      std::size_t cap)
{
    auto states = enumerate_states_unordered(store, alphabet, max_depth, max_branch, cap);
    for (auto s : states) (void)store.text(s);
    std::sort(states.begin(), states.end(), [&](StateId a, StateId b) {
        return std::tuple{store.tree_size(a), store.depth(a), store.text(a)} <
               std::tuple{store.tree_size(b), store.depth(b), store.text(b)};
    });
    return states;
}

std::vector<Term> enumerate_processes(const ActionSet& alphabet, int max_depth, int max_branch, std::size_t cap)
{
    TreeStore store;
    std::vector<Term> out;
    for (auto s : enumerate_states(store, alphabet, max_depth, max_branch, cap)) out.push_back(store.term(s));
    return out;
}

} // namespace hml
