#include "hml/process.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hml/errors.hpp"

namespace hml {

// --- PriorityOrder -------------------------------------------------------

PriorityOrder::PriorityOrder(std::vector<std::pair<Action, Action>> pairs) : pairs_{std::move(pairs)}
{
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    closure_ = pairs_;
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::pair<Action, Action>> extra;
        for (const auto& [a, b] : closure_)
            for (const auto& [c, d] : closure_)
                if (b == c && !std::binary_search(closure_.begin(), closure_.end(), std::pair{a, d}))
                    extra.emplace_back(a, d);
        if (!extra.empty()) {
            closure_.insert(closure_.end(), extra.begin(), extra.end());
            std::sort(closure_.begin(), closure_.end());
            closure_.erase(std::unique(closure_.begin(), closure_.end()), closure_.end());
            grew = true;
        }
    }
    for (const auto& [a, b] : closure_)
        if (a == b) throw std::invalid_argument("priority order is not irreflexive on '" + a + "'");
}

bool PriorityOrder::higher(const Action& a, const Action& b) const
{
    return std::binary_search(closure_.begin(), closure_.end(), std::pair{a, b});
}

std::string PriorityOrder::to_string() const
{
    std::string out;
    for (const auto& [a, b] : pairs_) {
        if (!out.empty()) out += ',';
        out += a + ">" + b;
    }
    return out;
}

// --- Term ----------------------------------------------------------------

struct Term::Node {
    TermKind kind = TermKind::Nil;
    Action action;
    std::vector<Term> children;
    int n = 0;
    ActionSet blocked;
    PriorityOrder order;
    std::string key;
    int depth = 0;
};

namespace {

enum Precedence { kChoice = 1, kPar = 2, kAtom = 3 };

int precedence(const Term& t)
{
    switch (t.kind()) {
    case TermKind::Choice: return kChoice;
    case TermKind::Par: return kPar;
    default: return kAtom;
    }
}

std::string at_least(const Term& t, int level)
{
    return precedence(t) >= level ? t.key() : "(" + t.key() + ")";
}

std::string join_actions(const ActionSet& s)
{
    std::string out;
    for (const auto& a : s) {
        if (!out.empty()) out += ',';
        out += a;
    }
    return out;
}

} // namespace

Term::Term() : Term(nil()) {}

Term Term::nil()
{
    static const Term zero = [] {
        auto node = std::make_shared<Node>();
        node->key = "0";
        return Term{std::shared_ptr<const Node>(std::move(node))};
    }();
    return zero;
}

Term Term::prefix(Action action, Term body)
{
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Prefix;
    node->key = action + "." + at_least(body, kAtom);
    node->depth = body.syntactic_depth() + 1;
    node->action = std::move(action);
    node->children.push_back(std::move(body));
    return Term{std::shared_ptr<const Node>(std::move(node))};
}

Term Term::choice(Term left, Term right)
{
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Choice;
    node->key = at_least(left, kChoice) + " + " + at_least(right, kChoice + 1);
    node->depth = std::max(left.syntactic_depth(), right.syntactic_depth());
    node->children = {std::move(left), std::move(right)};
    return Term{std::shared_ptr<const Node>(std::move(node))};
}

Term Term::proj(int depth, Term body)
{
    if (depth < 0) throw std::invalid_argument("projection depth must be nonnegative");
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Proj;
    node->key = "pi[" + std::to_string(depth) + "](" + body.key() + ")";
    node->depth = std::min(depth, body.syntactic_depth());
    node->n = depth;
    node->children.push_back(std::move(body));
    return Term{std::shared_ptr<const Node>(std::move(node))};
}

Term Term::encap(ActionSet blocked, Term body)
{
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Encap;
    node->key = "enc{" + join_actions(blocked) + "}(" + body.key() + ")";
    node->depth = body.syntactic_depth();
    node->blocked = std::move(blocked);
    node->children.push_back(std::move(body));
    return Term{std::shared_ptr<const Node>(std::move(node))};
}

Term Term::priority(PriorityOrder order, Term body)
{
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Priority;
    node->key = "theta[" + order.to_string() + "](" + body.key() + ")";
    node->depth = body.syntactic_depth();
    node->order = std::move(order);
    node->children.push_back(std::move(body));
    return Term{std::shared_ptr<const Node>(std::move(node))};
}

Term Term::par(Term left, Term right)
{
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Par;
    node->key = at_least(left, kPar) + " || " + at_least(right, kPar + 1);
    node->depth = left.syntactic_depth() + right.syntactic_depth();
    node->children = {std::move(left), std::move(right)};
    return Term{std::shared_ptr<const Node>(std::move(node))};
}

Term Term::left_merge(Term left, Term right)
{
    auto node = std::make_shared<Node>();
    node->kind = TermKind::LeftMerge;
    node->key = "lmerge(" + left.key() + ", " + right.key() + ")";
    node->depth = left.syntactic_depth() + right.syntactic_depth();
    node->children = {std::move(left), std::move(right)};
    return Term{std::shared_ptr<const Node>(std::move(node))};
}

TermKind Term::kind() const { return node_->kind; }
const Action& Term::action() const { return node_->action; }
const Term& Term::body() const { return node_->children.front(); }
const Term& Term::left() const { return node_->children.front(); }
const Term& Term::right() const { return node_->children.back(); }
int Term::proj_depth() const { return node_->n; }
const ActionSet& Term::blocked() const { return node_->blocked; }
const PriorityOrder& Term::order() const { return node_->order; }
const std::string& Term::key() const { return node_->key; }
int Term::syntactic_depth() const { return node_->depth; }

std::string to_string(const Term& p) { return p.key(); }

// --- operational semantics -------------------------------------------------

namespace {

void finish(std::vector<Transition>& out)
{
    std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
        return a.action != b.action ? a.action < b.action : a.target.key() < b.target.key();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

void raw_step(const Term& p, std::vector<Transition>& out);

void left_merge_steps(const Term& x, const Term& y, std::vector<Transition>& out)
{
    std::vector<Transition> xs;
    raw_step(x, xs);
    for (auto& t : xs) out.push_back({t.action, Term::par(t.target, y)});
}

void raw_step(const Term& p, std::vector<Transition>& out)
{
    switch (p.kind()) {
    case TermKind::Nil: return;
    case TermKind::Prefix: out.push_back({p.action(), p.body()}); return;
    case TermKind::Choice:
        raw_step(p.left(), out);
        raw_step(p.right(), out);
        return;
    case TermKind::Proj: {
        if (p.proj_depth() == 0) return;
        std::vector<Transition> inner;
        raw_step(p.body(), inner);
        for (auto& t : inner) out.push_back({t.action, Term::proj(p.proj_depth() - 1, t.target)});
        return;
    }
    case TermKind::Encap: {
        std::vector<Transition> inner;
        raw_step(p.body(), inner);
        for (auto& t : inner)
            if (!p.blocked().count(t.action)) out.push_back({t.action, Term::encap(p.blocked(), t.target)});
        return;
    }
    case TermKind::Priority: {
        std::vector<Transition> inner;
        raw_step(p.body(), inner);
        for (auto& t : inner) {
            bool preempted = std::any_of(inner.begin(), inner.end(), [&](const Transition& u) {
                return p.order().higher(u.action, t.action);
            });
            if (!preempted) out.push_back({t.action, Term::priority(p.order(), t.target)});
        }
        return;
    }
    case TermKind::LeftMerge: left_merge_steps(p.left(), p.right(), out); return;
    case TermKind::Par:
        left_merge_steps(p.left(), p.right(), out);
        left_merge_steps(p.right(), p.left(), out);
        return;
    }
}

void collect_actions(const Term& p, ActionSet& out)
{
    switch (p.kind()) {
    case TermKind::Nil: return;
    case TermKind::Prefix:
        out.insert(p.action());
        collect_actions(p.body(), out);
        return;
    case TermKind::Proj:
    case TermKind::Encap:
    case TermKind::Priority: collect_actions(p.body(), out); return;
    case TermKind::Choice:
    case TermKind::Par:
    case TermKind::LeftMerge:
        collect_actions(p.left(), out);
        collect_actions(p.right(), out);
        return;
    }
}

} // namespace

std::vector<Transition> step(const Term& p)
{
    std::vector<Transition> out;
    raw_step(p, out);
    finish(out);
    return out;
}

ActionSet actions_of(const Term& p)
{
    ActionSet out;
    collect_actions(p, out);
    return out;
}

Lts to_lts(const Term& p, std::size_t state_cap)
{
    Lts lts;
    std::map<std::string, std::size_t> index;
    std::deque<Term> frontier;
    index.emplace(p.key(), 0);
    lts.states.push_back(p.key());
    frontier.push_back(p);
    while (!frontier.empty()) {
        Term cur = std::move(frontier.front());
        frontier.pop_front();
        std::size_t src = index.at(cur.key());
        for (auto& t : step(cur)) {
            auto [it, fresh] = index.emplace(t.target.key(), lts.states.size());
            if (fresh) {
                if (lts.states.size() >= state_cap)
                    throw CapError("state cap of " + std::to_string(state_cap) + " exceeded");
                lts.states.push_back(t.target.key());
                frontier.push_back(t.target);
            }
            lts.transitions.push_back({src, t.action, it->second});
        }
    }
    return lts;
}

std::string to_dot(const Lts& lts)
{
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "digraph lts {\n";
    os << "  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        os << "  s" << i << " [label=" << quote(lts.states[i]);
        if (i == lts.root) os << ", peripheries=2";
        os << "];\n";
    }
    for (const auto& e : lts.transitions)
        os << "  s" << e.source << " -> s" << e.target << " [label=" << quote(e.action) << "];\n";
    os << "}\n";
    return os.str();
}

int lts_depth(const Lts& lts)
{
    std::vector<std::vector<std::size_t>> succ(lts.states.size());
    for (const auto& e : lts.transitions) succ[e.source].push_back(e.target);
    std::vector<int> memo(lts.states.size(), -1);
    auto depth = [&](auto&& self, std::size_t s) -> int {
        if (memo[s] >= 0) return memo[s];
        int d = 0;
        for (auto t : succ[s]) d = std::max(d, 1 + self(self, t));
        return memo[s] = d;
    };
    return lts.states.empty() ? 0 : depth(depth, lts.root);
}

// --- reference satisfaction ------------------------------------------------

const std::vector<Transition>& TermEvaluator::transitions(const Term& p)
{
    auto it = steps_.find(p.key());
    if (it == steps_.end()) it = steps_.emplace(p.key(), step(p)).first;
    return it->second;
}

bool TermEvaluator::sat(const Term& p, const Formula& phi)
{
    switch (phi.kind()) {
    case FormulaKind::Truth: return true;
    case FormulaKind::Neg: return !sat(p, phi.body());
    case FormulaKind::Conj:
        return std::all_of(phi.conjuncts().begin(), phi.conjuncts().end(),
                           [&](const Formula& c) { return sat(p, c); });
    case FormulaKind::Diamond: break;
    }
    std::string memo_key = p.key() + '\x1f' + phi.key();
    if (auto it = verdicts_.find(memo_key); it != verdicts_.end()) return it->second;
    bool holds = false;
    // copy: recursion may rehash steps_
    std::vector<Transition> succ = transitions(p);
    for (const auto& t : succ) {
        if (t.action == phi.action() && sat(t.target, phi.body())) {
            holds = true;
            break;
        }
    }
    verdicts_.emplace(std::move(memo_key), holds);
    return holds;
}

bool sat(const Term& p, const Formula& phi)
{
    TermEvaluator eval;
    return eval.sat(p, phi);
}

} // namespace hml
