#include "hml/language.hpp"

#include <algorithm>
#include <unordered_set>

#include "hml/sat.hpp"
#include "hml/tree_store.hpp"

namespace hml {

namespace {

std::string join(const ActionSet& actions)
{
    std::string out;
    for (const auto& a : actions) {
        if (!out.empty()) out += ',';
        out += a;
    }
    return out;
}

struct ColumnHash {
    std::size_t operator()(const Column& c) const noexcept
    {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : c) h = (h ^ w) * 0x100000001b3ULL;
        return h;
    }
};

} // namespace

LanguageSpec LanguageSpec::explicit_set(FormulaSet formulas, std::optional<ActionSet> declared)
{
    LanguageSpec spec;
    spec.formulas = std::move(formulas);
    spec.declared_actions = std::move(declared);
    return spec;
}

LanguageSpec LanguageSpec::from_grammar(CharacterizationId id, GrammarBounds bounds)
{
    LanguageSpec spec;
    spec.declared_actions = bounds.actions;
    spec.grammar = GrammarSource{id, std::move(bounds)};
    return spec;
}

std::string LanguageSpec::describe() const
{
    if (grammar) {
        return grammar->id.name() + " actions=" + join(grammar->bounds.actions) +
               " depth=" + std::to_string(grammar->bounds.depth) + " width=" + std::to_string(grammar->bounds.width);
    }
    std::string out = "{";
    bool first = true;
    for (const auto& [key, f] : formulas) {
        if (!first) out += ", ";
        first = false;
        out += key;
    }
    return out + "}";
}

FormulaSet materialize(const LanguageSpec& spec, std::size_t cap)
{
    if (spec.grammar) return enumerate(spec.grammar->id, spec.grammar->bounds, cap);
    return spec.formulas;
}

Action fresh_action(const ActionSet& used)
{
    Action name = "fresh";
    for (int i = 1; used.count(name); ++i) name = "fresh" + std::to_string(i);
    return name;
}

int oracle_branch(std::size_t widest, int depth)
{
    int b = std::max<int>(2, static_cast<int>(widest));
    return depth <= 1 ? std::min(b, 3) : 2;
}

OracleBounds default_oracle_bounds(const std::vector<Formula>& formulas)
{
    OracleBounds b;
    std::size_t widest = 0;
    for (const auto& f : formulas) {
        auto acts = actions_of(f);
        b.alphabet.insert(acts.begin(), acts.end());
        b.depth = std::max(b.depth, f.modal_depth());
        widest = std::max(widest, widest_conjunction(f));
    }
    b.alphabet.insert(fresh_action(b.alphabet));
    b.branch = oracle_branch(widest, b.depth);
    return b;
}

std::optional<Term> distinguishing_tree(const Formula& phi, const Formula& psi,
                                        const std::optional<OracleBounds>& bounds)
{
    OracleBounds b = bounds ? *bounds : default_oracle_bounds({phi, psi});
    TreeStore store;
    auto states = enumerate_states_unordered(store, b.alphabet, b.depth, b.branch);
    SatTable table{store};
    FormulaId x = table.add(phi);
    FormulaId y = table.add(psi);
    table.sync();
    std::optional<StateId> best;
    for (auto s : states) {
        if (table.holds(x, s) == table.holds(y, s)) continue;
        if (!best || std::tuple{store.tree_size(s), store.depth(s), store.text(s)} <
                         std::tuple{store.tree_size(*best), store.depth(*best), store.text(*best)})
            best = s;
    }
    if (!best) return std::nullopt;
    return store.term(*best);
}

bool semantically_equiv(const Formula& phi, const Formula& psi, const std::optional<OracleBounds>& bounds)
{
    return !distinguishing_tree(phi, psi, bounds).has_value();
}

// --- Language ----------------------------------------------------------------

struct Language::Oracle {
    TreeStore store;
    SatTable table{store};
    std::vector<StateId> universe;
    std::unordered_set<Column, ColumnHash> columns;
    Column ones;
    Column zeros;

    Column column(const Formula& f)
    {
        FormulaId id = table.add(f);
        table.sync();
        return table.restrict(id, universe);
    }
};

Language::Language(LanguageSpec spec, std::size_t cap) : spec_{std::move(spec)}
{
    members_ = materialize(spec_, cap);
    ordered_ = members_.formulas();
    std::sort(ordered_.begin(), ordered_.end(), simpler);
    actions_ = members_.actions();
    if (spec_.declared_actions) actions_.insert(spec_.declared_actions->begin(), spec_.declared_actions->end());
    depth_ = members_.max_modal_depth();
    width_ = members_.widest_conjunction();
}

Language::~Language() = default;
Language::Language(Language&&) noexcept = default;
Language& Language::operator=(Language&&) noexcept = default;

OracleBounds Language::oracle_bounds(const Formula& phi) const
{
    OracleBounds b;
    b.alphabet = actions_;
    auto extra = actions_of(phi);
    b.alphabet.insert(extra.begin(), extra.end());
    b.alphabet.insert(fresh_action(b.alphabet));
    b.depth = std::max(depth_, phi.modal_depth());
    b.branch = oracle_branch(std::max(width_, widest_conjunction(phi)), b.depth);
    return b;
}

Language::Oracle& Language::oracle_for(const Formula& phi)
{
    OracleBounds b = oracle_bounds(phi);
    auto key = std::tuple{b.alphabet, b.depth, b.branch};
    auto& slot = oracles_[key];
    if (!slot) {
        slot = std::make_unique<Oracle>();
        slot->universe = enumerate_states_unordered(slot->store, b.alphabet, b.depth, b.branch);
        std::vector<FormulaId> ids;
        for (const auto& f : ordered_) ids.push_back(slot->table.add(f));
        slot->table.sync();
        for (auto id : ids) slot->columns.insert(slot->table.restrict(id, slot->universe));
        slot->ones = slot->column(Formula::truth());
        slot->zeros = slot->column(Formula::falsity());
    }
    return *slot;
}

bool Language::member_equiv(const Formula& phi)
{
    Formula n = normalize(phi);
    if (auto it = member_cache_.find(n.key()); it != member_cache_.end()) return it->second;
    bool verdict = members_.contains_key(n.key());
    if (!verdict && spec_.grammar) verdict = recognize(spec_.grammar->id, n, spec_.grammar->bounds.actions);
    if (!verdict) {
        Oracle& o = oracle_for(n);
        verdict = o.columns.count(o.column(n)) != 0;
    }
    member_cache_.emplace(n.key(), verdict);
    return verdict;
}

bool Language::trivial(const Formula& phi)
{
    Formula n = normalize(phi);
    Oracle& o = oracle_for(n);
    Column c = o.column(n);
    return c == o.ones || c == o.zeros;
}

std::optional<Formula> equiv_under(const Term& p, const Term& q, const Language& O)
{
    TermEvaluator ev;
    for (const auto& f : O.ordered())
        if (ev.sat(p, f) != ev.sat(q, f)) return f;
    return std::nullopt;
}

} // namespace hml
