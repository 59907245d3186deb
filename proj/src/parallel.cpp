#include "hml/parallel.hpp"

#include <algorithm>
#include <deque>

#include "hml/characterizations.hpp"
#include "hml/errors.hpp"
#include "hml/sat.hpp"
#include "hml/tree_store.hpp"

namespace hml {

// --- Sub -------------------------------------------------------------------

std::vector<Formula> one_step_deletions(const Formula& phi)
{
    const auto pos = positions(phi);
    std::vector<Formula> out;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const auto& outer = pos[i].path.steps;
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const auto& inner = pos[j].path.steps;
            if (!pos[i].path.is_prefix_of(pos[j].path)) break;  // preorder: descendants are contiguous
            bool negation_free = std::none_of(inner.begin() + static_cast<std::ptrdiff_t>(outer.size()), inner.end(),
                                              [](const PathStep& s) { return s.kind == PathStep::Kind::NegBody; });
            if (negation_free) out.push_back(replace_at(phi, pos[i].path, pos[j].subformula));
        }
    }
    return out;
}

FormulaSet sub(const Formula& phi, std::size_t cap)
{
    FormulaSet seen;
    std::deque<Formula> todo;
    Formula start = normalize(phi);
    seen.insert(start);
    todo.push_back(start);
    while (!todo.empty()) {
        Formula f = todo.front();
        todo.pop_front();
        for (const auto& g : one_step_deletions(f)) {
            Formula n = normalize(g);
            if (seen.insert(n)) {
                if (seen.size() > cap) throw CapError("Sub closure exceeds " + std::to_string(cap) + " formulas");
                todo.push_back(n);
            }
        }
    }
    return seen;
}

FormulaSet flatten(const FormulaSet& set)
{
    FormulaSet out;
    for (const auto& [key, f] : set) {
        if (f.kind() == FormulaKind::Conj) {
            for (const auto& c : f.conjuncts()) out.insert(c);
        } else if (!f.is_truth()) {
            out.insert(f);
        }
    }
    return out;
}

// --- Par -------------------------------------------------------------------

ParCalculus::ParCalculus(NegationMode mode, std::size_t subset_budget) : mode_{mode}, budget_{subset_budget} {}

ParCalculus::Id ParCalculus::intern(const Formula& f)
{
    Formula n = normalize(f);
    auto [it, fresh] = ids_.emplace(n.key(), static_cast<Id>(formulas_.size()));
    if (fresh) formulas_.push_back(n);
    return it->second;
}

ParCalculus::Set ParCalculus::flat_ids(const std::vector<Id>& members)
{
    Set out;
    for (Id id : members) {
        Formula f = formulas_[id];
        if (f.kind() == FormulaKind::Conj) {
            for (const auto& c : f.conjuncts()) out.push_back(intern(c));
        } else if (!f.is_truth()) {
            out.push_back(id);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ParCalculus::Set ParCalculus::to_set(const FormulaSet& s)
{
    std::vector<Id> ids;
    for (const auto& [key, f] : s) ids.push_back(intern(f));
    return flat_ids(ids);
}

const std::vector<ParCalculus::Id>& ParCalculus::sub_ids(Id psi)
{
    if (auto it = subs_.find(psi); it != subs_.end()) return it->second;
    std::vector<Id> ids;
    for (const auto& [key, f] : sub(formulas_[psi])) ids.push_back(intern(f));
    return subs_.emplace(psi, std::move(ids)).first->second;
}

bool ParCalculus::member(const Formula& phi, const FormulaSet& A, const FormulaSet& B)
{
    return member(intern(phi), to_set(A), to_set(B));
}

bool ParCalculus::member(Id phi, const Set& A, const Set& B)
{
    auto key = std::tuple{phi, A, B};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Formula f = formulas_[phi];
    bool verdict = false;
    switch (f.kind()) {
    case FormulaKind::Truth: verdict = true; break;
    case FormulaKind::Conj:
        verdict = true;
        for (const auto& c : f.conjuncts())
            if (!member(intern(c), A, B)) {
                verdict = false;
                break;
            }
        break;
    case FormulaKind::Diamond: {
        Id body = intern(f.body());
        for (Id x : A) {
            const Formula fx = formulas_[x];
            if (fx.kind() == FormulaKind::Diamond && fx.action() == f.action() &&
                member(body, flat_ids({intern(fx.body())}), B)) {
                verdict = true;
                break;
            }
        }
        if (verdict) break;
        for (Id y : B) {
            const Formula fy = formulas_[y];
            if (fy.kind() == FormulaKind::Diamond && fy.action() == f.action() &&
                member(body, A, flat_ids({intern(fy.body())}))) {
                verdict = true;
                break;
            }
        }
        break;
    }
    case FormulaKind::Neg: verdict = negation(intern(f.body()), A, B); break;
    }
    memo_.emplace(std::move(key), verdict);
    return verdict;
}

namespace {

// C and D are taken as given: their members are not split into conjuncts.
std::vector<std::uint32_t> sorted(std::vector<std::uint32_t> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

bool ParCalculus::negation(Id psi, const Set& A, const Set& B)
{
    const std::vector<Id> subs = sub_ids(psi);
    // blocked_in_X[i]: the negation of subs[i] is a member of X.
    std::vector<bool> in_a(subs.size()), in_b(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        Id n = intern(Formula::neg(formulas_[subs[i]]));
        in_a[i] = std::binary_search(A.begin(), A.end(), n);
        in_b[i] = std::binary_search(B.begin(), B.end(), n);
    }

    if (mode_ == NegationMode::Monotone) {
        std::vector<Id> c, d;
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!in_a[i]) c.push_back(subs[i]);
            if (!in_b[i]) d.push_back(subs[i]);
        }
        return !member(psi, sorted(c), sorted(d));
    }

    const std::size_t n = subs.size();
    if (2 * n >= 63 || (std::size_t{1} << (2 * n)) > budget_)
        throw CapError("negation clause needs 4^" + std::to_string(n) + " subset pairs, budget is " +
                       std::to_string(budget_));
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t mc = 0; mc < limit; ++mc) {
        std::vector<Id> c;
        bool c_blocked = false;
        for (std::size_t i = 0; i < n; ++i)
            if (mc >> i & 1U) {
                c.push_back(subs[i]);
                c_blocked = c_blocked || in_a[i];
            }
        if (c_blocked) continue;
        Set fc = sorted(c);
        for (std::uint64_t md = 0; md < limit; ++md) {
            std::vector<Id> d;
            bool d_blocked = false;
            for (std::size_t i = 0; i < n; ++i)
                if (md >> i & 1U) {
                    d.push_back(subs[i]);
                    d_blocked = d_blocked || in_b[i];
                }
            if (d_blocked) continue;
            if (member(psi, fc, sorted(std::move(d)))) return false;
        }
    }
    return true;
}

std::string ParCalculus::show(const Set& s) const
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += formulas_[s[i]].key();
    }
    return out + "}";
}

void ParCalculus::explain(Id phi, const Set& A, const Set& B, int indent, std::vector<std::string>& out)
{
    const Formula f = formulas_[phi];
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string head = pad + f.key() + " in Par(" + show(A) + ", " + show(B) + ")";
    switch (f.kind()) {
    case FormulaKind::Truth: out.push_back(head + "  [truth]"); return;
    case FormulaKind::Conj:
        out.push_back(head + "  [conjunction]");
        for (const auto& c : f.conjuncts()) explain(intern(c), A, B, indent + 1, out);
        return;
    case FormulaKind::Diamond: {
        Id body = intern(f.body());
        for (Id x : A) {
            const Formula fx = formulas_[x];
            if (fx.kind() != FormulaKind::Diamond || fx.action() != f.action()) continue;
            Set ax = flat_ids({intern(fx.body())});
            if (member(body, ax, B)) {
                out.push_back(head + "  [left move via " + fx.key() + "]");
                explain(body, ax, B, indent + 1, out);
                return;
            }
        }
        for (Id y : B) {
            const Formula fy = formulas_[y];
            if (fy.kind() != FormulaKind::Diamond || fy.action() != f.action()) continue;
            Set by = flat_ids({intern(fy.body())});
            if (member(body, A, by)) {
                out.push_back(head + "  [right move via " + fy.key() + "]");
                explain(body, A, by, indent + 1, out);
                return;
            }
        }
        return;
    }
    case FormulaKind::Neg:
        out.push_back(head + "  [negation: every C, D deriving " + f.body().key() +
                      " contains a component refuted by A or B]");
        return;
    }
}

std::vector<std::string> ParCalculus::derivation(const Formula& phi, const FormulaSet& A, const FormulaSet& B)
{
    Id id = intern(phi);
    Set a = to_set(A), b = to_set(B);
    std::vector<std::string> out;
    if (member(id, a, b)) explain(id, a, b, 0, out);
    return out;
}

bool par_member(const Formula& phi, const FormulaSet& A, const FormulaSet& B)
{
    ParCalculus calc;
    return calc.member(phi, A, B);
}

// --- Composition lemma -------------------------------------------------------

namespace {

bool exists_subsets(ParCalculus& calc, const Formula& phi, const std::vector<Formula>& ap,
                    const std::vector<Formula>& bq)
{
    const std::size_t n = ap.size() + bq.size();
    if (n >= 63 || (std::size_t{1} << n) > default_subset_budget)
        throw CapError("2^" + std::to_string(n) + " subset pairs exceed the budget");
    for (std::uint64_t ma = 0; ma < (std::uint64_t{1} << ap.size()); ++ma) {
        FormulaSet A;
        for (std::size_t i = 0; i < ap.size(); ++i)
            if (ma >> i & 1U) A.insert(ap[i]);
        for (std::uint64_t mb = 0; mb < (std::uint64_t{1} << bq.size()); ++mb) {
            FormulaSet B;
            for (std::size_t i = 0; i < bq.size(); ++i)
                if (mb >> i & 1U) B.insert(bq[i]);
            if (calc.member(phi, A, B)) return true;
        }
    }
    return false;
}

} // namespace

Lemma4Violation lemma4_sides(const Term& p, const Term& q, const Formula& phi, NegationMode mode)
{
    Lemma4Violation out{p, q, phi, sat(Term::par(p, q), phi), false};
    std::vector<Formula> ap, bq;
    for (const auto& [key, chi] : sub(phi)) {
        if (sat(p, chi)) ap.push_back(chi);
        if (sat(q, chi)) bq.push_back(chi);
    }
    ParCalculus calc{mode};
    if (mode == NegationMode::Monotone) {
        FormulaSet A, B;
        for (const auto& f : ap) A.insert(f);
        for (const auto& f : bq) B.insert(f);
        out.par_derivable = calc.member(phi, A, B);
    } else {
        out.par_derivable = exists_subsets(calc, phi, ap, bq);
    }
    return out;
}

Lemma4Result verify_lemma4(const Lemma4Bounds& bounds, NegationMode mode)
{
    TreeStore store;
    const auto states = enumerate_states(store, bounds.actions, bounds.process_depth, bounds.process_branch);
    std::vector<std::vector<StateId>> composed(states.size(), std::vector<StateId>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j) composed[i][j] = store.parallel(states[i], states[j]);

    const auto formulas = enumerate_hml(bounds.actions, bounds.formula_depth, bounds.formula_width,
                                        bounds.formula_size, /*normalized=*/true);
    SatTable table{store};
    ParCalculus calc{mode};
    Lemma4Result result;
    result.formulas = formulas.size();

    for (const auto& phi : formulas) {
        const auto subs = sub(phi).formulas();
        FormulaId phi_id = table.add(phi);
        std::vector<FormulaId> sub_ids;
        for (const auto& s : subs) sub_ids.push_back(table.add(s));
        table.sync();

        std::vector<std::vector<Formula>> sat_sets(states.size());
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t k = 0; k < subs.size(); ++k)
                if (table.holds(sub_ids[k], states[i])) sat_sets[i].push_back(subs[k]);
        std::vector<FormulaSet> as_sets(states.size());
        for (std::size_t i = 0; i < states.size(); ++i)
            for (const auto& f : sat_sets[i]) as_sets[i].insert(f);

        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = 0; j < states.size(); ++j) {
                ++result.checks;
                bool lhs = table.holds(phi_id, composed[i][j]);
                bool rhs = mode == NegationMode::Monotone ? calc.member(phi, as_sets[i], as_sets[j])
                                                          : exists_subsets(calc, phi, sat_sets[i], sat_sets[j]);
                if (lhs != rhs) {
                    result.violation = Lemma4Violation{store.term(states[i]), store.term(states[j]), phi, lhs, rhs};
                    return result;
                }
            }
        }
    }
    return result;
}

} // namespace hml
