#include "hml/lab.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <tuple>

#include "hml/errors.hpp"
#include "hml/parse.hpp"
#include "hml/restriction.hpp"
#include "hml/sat.hpp"

namespace hml {

// --- operators ---------------------------------------------------------------

Operator Operator::prefix(Action a)
{
    Operator op;
    op.kind = Kind::Prefix;
    op.action = std::move(a);
    return op;
}

Operator Operator::choice() { return Operator{}; }

Operator Operator::projection(int n)
{
    if (n < 0) throw std::invalid_argument("projection depth must be nonnegative");
    Operator op;
    op.kind = Kind::Projection;
    op.depth = n;
    return op;
}

Operator Operator::encapsulation(ActionSet blocked)
{
    Operator op;
    op.kind = Kind::Encapsulation;
    op.blocked = std::move(blocked);
    return op;
}

Operator Operator::priority(PriorityOrder order)
{
    Operator op;
    op.kind = Kind::Priority;
    op.order = std::move(order);
    return op;
}

Operator Operator::parallel()
{
    Operator op;
    op.kind = Kind::Parallel;
    return op;
}

ActionSet Operator::actions() const
{
    switch (kind) {
    case Kind::Prefix: return {action};
    case Kind::Encapsulation: return blocked;
    case Kind::Priority: {
        ActionSet out;
        for (const auto& [hi, lo] : order.pairs()) {
            out.insert(hi);
            out.insert(lo);
        }
        return out;
    }
    default: return {};
    }
}

std::string Operator::to_string() const
{
    switch (kind) {
    case Kind::Prefix: return "prefix:" + action;
    case Kind::Choice: return "choice";
    case Kind::Projection: return RestrictionOp::projection(depth).to_string();
    case Kind::Encapsulation: return RestrictionOp::encapsulation(blocked).to_string();
    case Kind::Priority: return "theta:" + order.to_string();
    case Kind::Parallel: return "par";
    }
    return "?";
}

Term Operator::apply(const Term& p) const
{
    switch (kind) {
    case Kind::Prefix: return Term::prefix(action, p);
    case Kind::Projection: return Term::proj(depth, p);
    case Kind::Encapsulation: return Term::encap(blocked, p);
    case Kind::Priority: return Term::priority(order, p);
    default: throw std::logic_error(to_string() + " is binary");
    }
}

Term Operator::apply(const Term& p, const Term& q) const
{
    if (kind == Kind::Choice) return Term::choice(p, q);
    if (kind == Kind::Parallel) return Term::par(p, q);
    throw std::logic_error(to_string() + " is unary");
}

StateId Operator::apply(TreeStore& store, StateId p) const
{
    switch (kind) {
    case Kind::Prefix: return store.prefix(store.action_id(action), p);
    case Kind::Projection: return store.project(depth, p);
    case Kind::Encapsulation: return RestrictionOp::encapsulation(blocked).apply(store, p);
    case Kind::Priority: return store.prioritize(order, p);
    default: throw std::logic_error(to_string() + " is binary");
    }
}

StateId Operator::apply(TreeStore& store, StateId p, StateId q) const
{
    if (kind == Kind::Choice) return store.choice(p, q);
    if (kind == Kind::Parallel) return store.parallel(p, q);
    throw std::logic_error(to_string() + " is unary");
}

Operator parse_operator(const std::string& text)
{
    if (text == "choice" || text == "+") return Operator::choice();
    if (text == "par" || text == "||") return Operator::parallel();
    for (const char* head : {"prefix:", "prefix "}) {
        std::string h{head};
        if (text.rfind(h, 0) == 0) {
            auto acts = parse_action_list(text.substr(h.size()));
            if (acts.size() != 1) throw std::invalid_argument("prefix needs exactly one action");
            return Operator::prefix(*acts.begin());
        }
    }
    if (text.rfind("theta:", 0) == 0) {
        try {
            return Operator::priority(parse_priority(text.substr(6)));
        } catch (const ParseError& e) {
            throw std::invalid_argument("bad priority order: " + std::string(e.what()));
        }
    }
    if (text.rfind("pi:", 0) == 0 || text.rfind("enc:", 0) == 0) {
        auto r = parse_restriction(text);
        return r.kind == RestrictionOp::Kind::Projection ? Operator::projection(r.depth)
                                                         : Operator::encapsulation(r.blocked);
    }
    throw std::invalid_argument("unknown operator '" + text +
                                "' (expected choice, par, prefix:a, pi:n, enc:{..}, theta:a>b)");
}

// --- search ------------------------------------------------------------------

namespace {

constexpr std::size_t chunk_size = 4096;

class Search {
public:
    Search(const Operator& op, Language& O, const SearchBounds& bounds) : op_{op}, O_{O}, table_{store_}
    {
        if (bounds.alphabet) {
            alphabet_ = *bounds.alphabet;
        } else {
            alphabet_ = O.actions();
            auto extra = op.actions();
            alphabet_.insert(extra.begin(), extra.end());
        }
        depth_ = bounds.depth;
        branch_ = bounds.branch;
        states_ = enumerate_states(store_, alphabet_, depth_, branch_);
        for (const auto& f : O.ordered()) members_.push_back(table_.add(f));
        table_.sync();
        classify();
    }

    SearchResult run()
    {
        SearchResult out;
        out.universe = states_.size();
        out.classes = classes_;
        if (op_.binary())
            run_binary(out);
        else
            run_unary(out);
        return out;
    }

private:
    void classify()
    {
        std::map<std::vector<bool>, std::size_t> first;
        rep_.resize(states_.size());
        for (std::size_t i = 0; i < states_.size(); ++i) {
            std::vector<bool> sig(members_.size());
            for (std::size_t m = 0; m < members_.size(); ++m) sig[m] = table_.holds(members_[m], states_[i]);
            rep_[i] = first.emplace(std::move(sig), i).first->second;
        }
        classes_ = first.size();
    }

    std::optional<std::size_t> separate(StateId x, StateId y) const
    {
        if (x == y) return std::nullopt;
        for (std::size_t m = 0; m < members_.size(); ++m)
            if (table_.holds(members_[m], x) != table_.holds(members_[m], y)) return m;
        return std::nullopt;
    }

    // Candidates are (index, index) pairs; unary ones leave the second unused.
    template <class Compose>
    bool scan(const std::vector<std::pair<std::size_t, std::size_t>>& candidates, Compose compose,
              SearchResult& out)
    {
        for (std::size_t start = 0; start < candidates.size(); start += chunk_size) {
            std::size_t end = std::min(candidates.size(), start + chunk_size);
            std::vector<std::pair<StateId, StateId>> images;
            images.reserve(end - start);
            for (std::size_t k = start; k < end; ++k) images.push_back(compose(candidates[k]));
            table_.sync();
            for (std::size_t k = start; k < end; ++k) {
                ++out.checked;
                if (auto m = separate(images[k - start].first, images[k - start].second)) {
                    out.report = report(candidates[k], *m);
                    return true;
                }
            }
        }
        return false;
    }

    void run_unary(SearchResult& out)
    {
        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        for (std::size_t i = 0; i < states_.size(); ++i)
            if (rep_[i] != i) candidates.emplace_back(i, 0);
        scan(candidates,
             [&](const std::pair<std::size_t, std::size_t>& c) {
                 return std::pair{op_.apply(store_, states_[c.first]), op_.apply(store_, states_[rep_[c.first]])};
             },
             out);
    }

    void run_binary(SearchResult& out)
    {
        std::map<std::size_t, std::vector<std::size_t>> by_size;
        for (std::size_t i = 0; i < states_.size(); ++i) by_size[store_.tree_size(states_[i])].push_back(i);
        std::size_t max_size = by_size.empty() ? 0 : by_size.rbegin()->first;

        auto compose = [&](const std::pair<std::size_t, std::size_t>& c) {
            return std::pair{op_.apply(store_, states_[c.first], states_[c.second]),
                             op_.apply(store_, states_[rep_[c.first]], states_[rep_[c.second]])};
        };
        for (std::size_t total = 0; total <= 2 * max_size; ++total) {
            std::vector<std::tuple<int, int, std::size_t, std::size_t>> keyed;
            for (const auto& [s1, left] : by_size) {
                if (s1 > total) break;
                auto it = by_size.find(total - s1);
                if (it == by_size.end()) continue;
                for (auto i : left) {
                    bool ni = rep_[i] != i;
                    for (auto j : it->second) {
                        bool nj = rep_[j] != j;
                        if (!ni && !nj) continue;
                        keyed.emplace_back(-(int(ni) + int(nj)), -int(ni), i, j);
                    }
                }
            }
            std::sort(keyed.begin(), keyed.end());
            std::vector<std::pair<std::size_t, std::size_t>> candidates;
            candidates.reserve(keyed.size());
            for (const auto& k : keyed) candidates.emplace_back(std::get<2>(k), std::get<3>(k));
            if (scan(candidates, compose, out)) return;
        }
    }

    CounterexampleReport report(const std::pair<std::size_t, std::size_t>& c, std::size_t member)
    {
        CounterexampleReport r;
        r.op = op_;
        Term p1 = store_.term(states_[c.first]);
        Term q1 = store_.term(states_[rep_[c.first]]);
        r.components.emplace_back(p1, q1);
        if (op_.binary()) {
            Term p2 = store_.term(states_[c.second]);
            Term q2 = store_.term(states_[rep_[c.second]]);
            r.components.emplace_back(p2, q2);
            r.composed_left = op_.apply(p1, p2);
            r.composed_right = op_.apply(q1, q2);
        } else {
            r.composed_left = op_.apply(p1);
            r.composed_right = op_.apply(q1);
        }
        r.distinguishing = O_.ordered()[member];
        r.language = O_.spec().describe();
        r.alphabet = alphabet_;
        r.depth = depth_;
        r.branch = branch_;
        return r;
    }

    const Operator& op_;
    Language& O_;
    TreeStore store_;
    SatTable table_;
    ActionSet alphabet_;
    int depth_ = 0;
    int branch_ = 0;
    std::vector<StateId> states_;
    std::vector<FormulaId> members_;
    std::vector<std::size_t> rep_;
    std::size_t classes_ = 0;
};

} // namespace

SearchResult congruence_search(const Operator& op, Language& O, const SearchBounds& bounds)
{
    Search s{op, O, bounds};
    return s.run();
}

ReplayResult replay(const CounterexampleReport& report, const Language& O)
{
    ReplayResult out;
    auto problem = [&](std::string msg) {
        out.ok = false;
        out.problems.push_back(std::move(msg));
    };
    const std::size_t arity = report.op.binary() ? 2 : 1;
    if (report.components.size() != arity) {
        problem("expected " + std::to_string(arity) + " component pairs");
        return out;
    }
    for (const auto& [p, q] : report.components)
        if (auto f = equiv_under(p, q, O))
            problem("components " + to_string(p) + " and " + to_string(q) + " are separated by " + f->key());
    Term left = arity == 2 ? report.op.apply(report.components[0].first, report.components[1].first)
                           : report.op.apply(report.components[0].first);
    Term right = arity == 2 ? report.op.apply(report.components[0].second, report.components[1].second)
                            : report.op.apply(report.components[0].second);
    if (!(left == report.composed_left)) problem("left composition does not match " + to_string(left));
    if (!(right == report.composed_right)) problem("right composition does not match " + to_string(right));
    if (!O.members().contains(report.distinguishing))
        problem("distinguishing formula " + report.distinguishing.key() + " is not a member");
    if (sat(report.composed_left, report.distinguishing) == sat(report.composed_right, report.distinguishing))
        problem("distinguishing formula does not separate the composed terms");
    return out;
}

// --- demonstrations ----------------------------------------------------------

CtDemo ct_encapsulation_demo()
{
    Language ct{LanguageSpec::from_grammar({CharKind::CT}, {{"a", "b", "c"}, 3, 3})};
    CtDemo demo;
    demo.left = parse_process("a.(b.0 + c.0)");
    demo.right = parse_process("a.b.0 + a.c.0");
    demo.components_equivalent = !equiv_under(demo.left, demo.right, ct).has_value();

    Operator enc = Operator::encapsulation({"b"});
    Term l = enc.apply(demo.left), r = enc.apply(demo.right);
    demo.encapsulated_distinguishing = equiv_under(l, r, ct);
    for (int n = 0; n <= 3; ++n)
        demo.projections.emplace_back(n, equiv_under(Term::proj(n, demo.left), Term::proj(n, demo.right), ct));

    demo.report.op = enc;
    demo.report.components = {{demo.left, demo.right}};
    demo.report.composed_left = l;
    demo.report.composed_right = r;
    if (demo.encapsulated_distinguishing) demo.report.distinguishing = *demo.encapsulated_distinguishing;
    demo.report.language = ct.spec().describe();
    demo.report.alphabet = {"a", "b", "c"};
    demo.report.depth = 3;
    demo.report.branch = 3;
    return demo;
}

SuiteReport theorem_suite(const SuiteBounds& bounds, const std::vector<CharacterizationId>& ids)
{
    const auto start = std::chrono::steady_clock::now();
    SuiteReport out;
    out.bounds = bounds;
    SearchBounds sb{bounds.actions, bounds.search_depth, bounds.search_branch};

    auto powerset = [&] {
        std::vector<ActionSet> sets{{}};
        for (const auto& a : bounds.actions) {
            auto more = sets;
            for (auto& s : more) s.insert(a);
            sets.insert(sets.end(), more.begin(), more.end());
        }
        return sets;
    };

    for (const auto& id : ids) {
        SuiteRow row;
        row.language = id.name();
        Language O{LanguageSpec::from_grammar(id, {bounds.actions, bounds.language_depth, bounds.language_width})};
        for (Condition c : {Condition::AC, Condition::AP, Condition::RES, Condition::PAR}) {
            SuiteCell cell;
            try {
                ConditionVerdict v = check(c, O);
                cell.condition = v.name();
                cell.holds = v.holds;
                cell.violations = v.violations;
                if (!v.witnesses.empty()) cell.witness = v.witnesses.front();
                if (v.holds) {
                    std::vector<Operator> ops;
                    switch (c) {
                    case Condition::AC: ops.push_back(Operator::choice()); break;
                    case Condition::AP:
                        for (const auto& a : bounds.actions) ops.push_back(Operator::prefix(a));
                        break;
                    case Condition::RES:
                        for (int n = 0; n <= bounds.search_depth; ++n) ops.push_back(Operator::projection(n));
                        for (const auto& b : powerset()) ops.push_back(Operator::encapsulation(b));
                        break;
                    case Condition::PAR: ops.push_back(Operator::parallel()); break;
                    }
                    for (const auto& op : ops) {
                        SuiteSearch s;
                        s.op = op.to_string();
                        try {
                            auto r = congruence_search(op, O, sb);
                            s.violation = r.report.has_value();
                            s.report = r.report;
                        } catch (const CapError& e) {
                            s.error = e.what();
                        }
                        cell.searches.push_back(std::move(s));
                    }
                }
            } catch (const CapError& e) {
                cell.error = e.what();
            }
            if (cell.condition.empty()) cell.condition = c == Condition::AC ? "AC" : c == Condition::AP ? "AP"
                                                        : c == Condition::RES                        ? "RES"
                                                                                                      : "PAR";
            row.cells.push_back(std::move(cell));
        }
        out.rows.push_back(std::move(row));
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace hml
