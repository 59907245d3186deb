#include "hml/characterizations.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hml/errors.hpp"
#include "hml/sat.hpp"
#include "hml/tree_store.hpp"

namespace hml {

std::string CharacterizationId::name() const
{
    switch (kind) {
    case CharKind::T: return "T";
    case CharKind::CT: return "CT";
    case CharKind::CTStar: return "CT*";
    case CharKind::F: return "F";
    case CharKind::R: return "R";
    case CharKind::FT: return "FT";
    case CharKind::RT: return "RT";
    case CharKind::S1: return "1S";
    case CharKind::RS: return "RS";
    case CharKind::NS: return std::to_string(n) + "S";
    case CharKind::B: return "B";
    }
    return "?";
}

CharacterizationId CharacterizationId::parse(std::string_view text, int n)
{
    static const std::map<std::string, CharKind, std::less<>> names{
        {"T", CharKind::T},   {"CT", CharKind::CT}, {"CT*", CharKind::CTStar}, {"CTstar", CharKind::CTStar},
        {"F", CharKind::F},   {"R", CharKind::R},   {"FT", CharKind::FT},      {"RT", CharKind::RT},
        {"1S", CharKind::S1}, {"RS", CharKind::RS}, {"B", CharKind::B},
    };
    if (auto it = names.find(text); it != names.end()) return {it->second, n};
    if (text == "nS") {
        if (n < 2) throw std::invalid_argument("nS requires n >= 2");
        return {CharKind::NS, n};
    }
    if (text.size() >= 2 && text.back() == 'S' &&
        std::all_of(text.begin(), text.end() - 1, [](char c) { return c >= '0' && c <= '9'; })) {
        int k = std::stoi(std::string(text.substr(0, text.size() - 1)));
        if (k == 1) return {CharKind::S1, 2};
        if (k >= 2) return {CharKind::NS, k};
    }
    throw std::invalid_argument("unknown characterization '" + std::string(text) + "'");
}

std::vector<CharacterizationId> standard_characterizations()
{
    return {{CharKind::T},  {CharKind::CT}, {CharKind::CTStar}, {CharKind::F},     {CharKind::R}, {CharKind::FT},
            {CharKind::RT}, {CharKind::S1}, {CharKind::RS},     {CharKind::NS, 2}, {CharKind::B}};
}

// --- recognition -----------------------------------------------------------

namespace {

bool neg_literal(const Formula& f)
{
    return f.kind() == FormulaKind::Neg && f.body().kind() == FormulaKind::Diamond && f.body().body().is_truth();
}

bool pos_literal(const Formula& f) { return f.kind() == FormulaKind::Diamond && f.body().is_truth(); }

bool literal(const Formula& f) { return neg_literal(f) || pos_literal(f); }

std::vector<Formula> parts(const Formula& f)
{
    if (f.kind() == FormulaKind::Conj) return f.conjuncts();
    return {f};
}

bool completed(const Formula& f, const ActionSet& act)
{
    if (act.empty()) return false;
    std::vector<std::string> want;
    for (const auto& a : act) want.push_back(Formula::neg(Formula::diamond(a, Formula::truth())).key());
    std::vector<std::string> have;
    for (const auto& p : parts(f)) have.push_back(p.key());
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    return want == have;
}

// Conjunction of literals (as classified by `is_lit`) plus at most one
// further conjunct satisfying `rest`.
template <class Lit, class Rest>
bool literals_plus_one(const Formula& f, Lit is_lit, Rest rest)
{
    int others = 0;
    for (const auto& p : parts(f)) {
        if (is_lit(p)) continue;
        if (++others > 1 || !rest(p)) return false;
    }
    return true;
}

bool rec(const CharacterizationId& id, const Formula& f, const ActionSet& act)
{
    if (f.is_truth()) return true;
    auto diamond_case = [&] { return f.kind() == FormulaKind::Diamond && rec(id, f.body(), act); };
    auto all_parts = [&] {
        if (f.kind() != FormulaKind::Conj) return false;
        return std::all_of(f.conjuncts().begin(), f.conjuncts().end(),
                           [&](const Formula& c) { return rec(id, c, act); });
    };
    switch (id.kind) {
    case CharKind::T: return diamond_case();
    case CharKind::CT: return diamond_case() || completed(f, act);
    case CharKind::CTStar: return rec({CharKind::CT}, f, act) || neg_literal(f);
    case CharKind::F: {
        auto ps = parts(f);
        return diamond_case() || std::all_of(ps.begin(), ps.end(), neg_literal);
    }
    case CharKind::R: {
        auto ps = parts(f);
        return diamond_case() || std::all_of(ps.begin(), ps.end(), literal);
    }
    case CharKind::FT:
        return diamond_case() || literals_plus_one(f, neg_literal, [&](const Formula& p) {
                   return p.kind() == FormulaKind::Diamond && rec(id, p.body(), act);
               });
    case CharKind::RT:
        return diamond_case() || literals_plus_one(f, literal, [&](const Formula& p) {
                   return p.kind() == FormulaKind::Diamond && rec(id, p.body(), act);
               });
    case CharKind::S1: return diamond_case() || all_parts();
    case CharKind::RS: return diamond_case() || neg_literal(f) || all_parts();
    case CharKind::NS: {
        if (diamond_case() || all_parts()) return true;
        if (f.kind() != FormulaKind::Neg) return false;
        CharacterizationId lower = id.n <= 2 ? CharacterizationId{CharKind::S1} : CharacterizationId{CharKind::NS, id.n - 1};
        return rec(lower, f.body(), act);
    }
    case CharKind::B: return true;
    }
    return false;
}

} // namespace

bool recognize(const CharacterizationId& id, const Formula& phi, const ActionSet& act)
{
    return rec(id, normalize(phi), act);
}

// --- enumeration -----------------------------------------------------------

namespace {

using Level = std::vector<Formula>;

class Enumerator {
public:
    Enumerator(const GrammarBounds& bounds, std::size_t cap) : bounds_{bounds}, cap_{cap} {}

    Level run(const CharacterizationId& id, int d)
    {
        const auto key = std::pair{id.name(), d};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Level out = build(id, d);
        memo_.emplace(key, out);
        return out;
    }

private:
    Level build(const CharacterizationId& id, int d)
    {
        const Formula t = Formula::truth();
        Level prev = d > 0 ? run(id.kind == CharKind::CTStar ? CharacterizationId{CharKind::CT} : id, d - 1) : Level{};
        Level out;
        switch (id.kind) {
        case CharKind::T:
            out = {t};
            add(out, diamonds(prev));
            break;
        case CharKind::CT:
            out = {t};
            add(out, diamonds(prev));
            if (d >= 1 && !bounds_.actions.empty()) {
                std::vector<Formula> all;
                for (const auto& a : bounds_.actions) all.push_back(neg_lit(a));
                add(out, {Formula::conj(all)});
            }
            break;
        case CharKind::CTStar:
            out = run({CharKind::CT}, d);
            if (d >= 1) add(out, neg_lits());
            break;
        case CharKind::F:
            out = {t};
            add(out, diamonds(prev));
            if (d >= 1) add(out, subsets(neg_lits(), 1));
            break;
        case CharKind::R:
            out = {t};
            add(out, diamonds(prev));
            if (d >= 1) add(out, subsets(all_lits(), 1));
            break;
        case CharKind::FT:
        case CharKind::RT: {
            Level base{t};
            add(base, diamonds(prev));
            Level lits = d >= 1 ? (id.kind == CharKind::FT ? neg_lits() : all_lits()) : Level{};
            Level sets = subsets(lits, 0);
            for (const auto& s : sets)
                for (const auto& x : base) add(out, {Formula::conj(s, x)});
            break;
        }
        case CharKind::S1:
            out = {t};
            add(out, subsets(diamonds(prev), 1));
            break;
        case CharKind::RS: {
            Level atoms = diamonds(prev);
            if (d >= 1) add(atoms, neg_lits());
            out = {t};
            add(out, subsets(atoms, 1));
            break;
        }
        case CharKind::NS: {
            Level atoms = diamonds(prev);
            CharacterizationId lower =
                id.n <= 2 ? CharacterizationId{CharKind::S1} : CharacterizationId{CharKind::NS, id.n - 1};
            for (const auto& chi : run(lower, d)) {
                Formula n = normalize(Formula::neg(chi));
                if (n.kind() == FormulaKind::Conj)
                    add(atoms, n.conjuncts());
                else if (!n.is_truth())
                    add(atoms, {n});
            }
            out = {t};
            add(out, subsets(atoms, 1));
            break;
        }
        case CharKind::B: {
            out = {t, Formula::falsity()};
            if (d == 0) break;
            Level atoms;
            for (const auto& f : diamonds(prev)) add(atoms, {f, Formula::neg(f)});
            Level conjs = subsets(atoms, 1);
            add(out, conjs);
            for (const auto& c : conjs) add(out, {Formula::neg(c)});
            break;
        }
        }
        return finish(std::move(out));
    }

    Formula neg_lit(const Action& a) { return Formula::neg(Formula::diamond(a, Formula::truth())); }

    Level neg_lits()
    {
        Level out;
        for (const auto& a : bounds_.actions) out.push_back(neg_lit(a));
        return out;
    }

    Level all_lits()
    {
        Level out = neg_lits();
        for (const auto& a : bounds_.actions) out.push_back(Formula::diamond(a, Formula::truth()));
        return out;
    }

    Level diamonds(const Level& prev)
    {
        Level out;
        for (const auto& a : bounds_.actions)
            for (const auto& f : prev) out.push_back(Formula::diamond(a, f));
        check(out.size());
        return out;
    }

    /// Conjunctions of between `min` and width distinct items.
    Level subsets(const Level& items, std::size_t min)
    {
        Level out;
        std::vector<Formula> chosen;
        const auto width = static_cast<std::size_t>(std::max(bounds_.width, 0));
        auto rec = [&](auto&& self, std::size_t from) -> void {
            if (chosen.size() >= min) {
                out.push_back(Formula::conj(chosen));
                check(out.size());
            }
            if (chosen.size() == width) return;
            for (std::size_t i = from; i < items.size(); ++i) {
                chosen.push_back(items[i]);
                self(self, i + 1);
                chosen.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    }

    static void add(Level& into, const Level& more) { into.insert(into.end(), more.begin(), more.end()); }

    Level finish(Level raw)
    {
        FormulaSet set;
        for (const auto& f : raw) {
            Formula n = normalize(f);
            if (widest_conjunction(n) > static_cast<std::size_t>(std::max(bounds_.width, 0))) continue;
            set.insert(n);
        }
        check(set.size());
        return set.formulas();
    }

    void check(std::size_t n) const
    {
        if (n > cap_) throw CapError("grammar enumeration exceeds " + std::to_string(cap_) + " formulas");
    }

    GrammarBounds bounds_;
    std::size_t cap_;
    std::map<std::pair<std::string, int>, Level> memo_;
};

} // namespace

FormulaSet enumerate(const CharacterizationId& id, const GrammarBounds& bounds, std::size_t cap)
{
    Enumerator e{bounds, cap};
    FormulaSet out;
    for (const auto& f : e.run(id, std::max(bounds.depth, 0))) out.insert(f);
    return out;
}

// --- refinement --------------------------------------------------------------

RefinementResult spectrum_refinement_check(const CharacterizationId& coarse, const CharacterizationId& fine,
                                           const GrammarBounds& formulas, int process_depth, int process_branch)
{
    auto sorted = [](const FormulaSet& set) {
        auto v = set.formulas();
        std::sort(v.begin(), v.end(), simpler);
        return v;
    };
    const auto coarse_fs = sorted(enumerate(coarse, formulas));
    const auto fine_fs = sorted(enumerate(fine, formulas));

    TreeStore store;
    const auto states = enumerate_states(store, formulas.actions, process_depth, process_branch);
    SatTable table{store};
    std::vector<FormulaId> coarse_ids, fine_ids;
    for (const auto& f : coarse_fs) coarse_ids.push_back(table.add(f));
    for (const auto& f : fine_fs) fine_ids.push_back(table.add(f));
    table.sync();

    auto signature = [&](const std::vector<FormulaId>& ids, StateId s) {
        std::vector<bool> sig(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) sig[i] = table.holds(ids[i], s);
        return sig;
    };

    std::map<std::vector<bool>, StateId> rep;
    RefinementResult result;
    for (auto s : states) {
        auto [it, fresh] = rep.emplace(signature(fine_ids, s), s);
        if (fresh) continue;
        StateId r = it->second;
        for (std::size_t i = 0; i < coarse_ids.size(); ++i) {
            if (table.holds(coarse_ids[i], r) != table.holds(coarse_ids[i], s)) {
                result.holds = false;
                result.witness = std::pair{store.term(r), store.term(s)};
                result.distinguishing = coarse_fs[i];
                return result;
            }
        }
    }
    return result;
}

} // namespace hml

namespace hml {

std::vector<Formula> enumerate_hml(const ActionSet& actions, int max_depth, int max_width, int max_size,
                                   bool normalized)
{
    // by_size[s] holds the formulas of size exactly s.
    std::vector<std::vector<Formula>> by_size(static_cast<std::size_t>(std::max(max_size, 0)) + 1);
    if (max_size >= 1) by_size[1] = {Formula::truth()};
    for (int s = 2; s <= max_size; ++s) {
        auto& out = by_size[static_cast<std::size_t>(s)];
        for (const auto& x : by_size[static_cast<std::size_t>(s - 1)]) {
            out.push_back(Formula::neg(x));
            if (x.modal_depth() < max_depth)
                for (const auto& a : actions) out.push_back(Formula::diamond(a, x));
        }
        // Conjunctions: children sizes sum to s - 1, between 2 and max_width children.
        std::vector<Formula> chosen;
        auto rec = [&](auto&& self, int remaining) -> void {
            if (remaining == 0) {
                if (chosen.size() >= 2) out.push_back(Formula::conj(chosen));
                return;
            }
            if (static_cast<int>(chosen.size()) == max_width) return;
            for (int k = 1; k <= remaining; ++k)
                for (const auto& c : by_size[static_cast<std::size_t>(k)]) {
                    chosen.push_back(c);
                    self(self, remaining - k);
                    chosen.pop_back();
                }
        };
        if (max_width >= 2) rec(rec, s - 1);
    }
    std::vector<Formula> out;
    std::set<std::string> seen;
    for (const auto& level : by_size)
        for (const auto& f : level) {
            Formula g = normalized ? normalize(f) : f;
            if (seen.insert(g.key()).second) out.push_back(g);
        }
    return out;
}

} // namespace hml
