#include "hml/formula.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hml {

struct Formula::Node {
    FormulaKind kind = FormulaKind::Truth;
    Action action;
    std::vector<Formula> children;  // conjuncts, or the single body
    std::string key;
    int depth = 0;
    std::size_t size = 1;
};

namespace {

std::string wrapped(const Formula& f)
{
    if (f.kind() == FormulaKind::Conj && f.conjuncts().size() != 1 && !f.conjuncts().empty())
        return "(" + f.key() + ")";
    return f.key();
}

} // namespace

Formula::Formula() : Formula(Formula::truth()) {}

Formula Formula::truth()
{
    static const Formula t = [] {
        auto node = std::make_shared<Node>();
        node->kind = FormulaKind::Truth;
        node->key = "T";
        return Formula{std::shared_ptr<const Node>(std::move(node))};
    }();
    return t;
}

Formula Formula::falsity() { return neg(truth()); }

Formula Formula::conj(std::vector<Formula> conjuncts)
{
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Conj;
    if (conjuncts.empty()) {
        node->key = "/\\()";
    } else if (conjuncts.size() == 1) {
        node->key = "/\\(" + conjuncts.front().key() + ")";
    } else {
        for (std::size_t i = 0; i < conjuncts.size(); ++i) {
            if (i) node->key += " & ";
            node->key += wrapped(conjuncts[i]);
        }
    }
    for (const auto& c : conjuncts) {
        node->depth = std::max(node->depth, c.modal_depth());
        node->size += c.size();
    }
    node->children = std::move(conjuncts);
    return Formula{std::shared_ptr<const Node>(std::move(node))};
}

Formula Formula::conj(Formula left, Formula right)
{
    return conj(std::vector<Formula>{std::move(left), std::move(right)});
}

Formula Formula::diamond(Action action, Formula body)
{
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Diamond;
    node->key = "<" + action + ">" + wrapped(body);
    node->depth = body.modal_depth() + 1;
    node->size = body.size() + 1;
    node->action = std::move(action);
    node->children.push_back(std::move(body));
    return Formula{std::shared_ptr<const Node>(std::move(node))};
}

Formula Formula::neg(Formula body)
{
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Neg;
    node->key = body.is_truth() ? "F" : "~" + wrapped(body);
    node->depth = body.modal_depth();
    node->size = body.size() + 1;
    node->children.push_back(std::move(body));
    return Formula{std::shared_ptr<const Node>(std::move(node))};
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_falsity() const
{
    return node_->kind == FormulaKind::Neg && node_->children.front().is_truth();
}

const std::vector<Formula>& Formula::conjuncts() const
{
    assert(node_->kind == FormulaKind::Conj);
    return node_->children;
}

const Action& Formula::action() const
{
    assert(node_->kind == FormulaKind::Diamond);
    return node_->action;
}

const Formula& Formula::body() const
{
    assert(node_->kind == FormulaKind::Diamond || node_->kind == FormulaKind::Neg);
    return node_->children.front();
}

const std::string& Formula::key() const { return node_->key; }
int Formula::modal_depth() const { return node_->depth; }
std::size_t Formula::size() const { return node_->size; }

std::string to_string(const Formula& f) { return f.key(); }

namespace {

void collect_actions(const Formula& f, ActionSet& out)
{
    switch (f.kind()) {
    case FormulaKind::Truth: return;
    case FormulaKind::Diamond: out.insert(f.action()); collect_actions(f.body(), out); return;
    case FormulaKind::Neg: collect_actions(f.body(), out); return;
    case FormulaKind::Conj:
        for (const auto& c : f.conjuncts()) collect_actions(c, out);
        return;
    }
}

} // namespace

ActionSet actions_of(const Formula& f)
{
    ActionSet out;
    collect_actions(f, out);
    return out;
}

std::size_t widest_conjunction(const Formula& f)
{
    switch (f.kind()) {
    case FormulaKind::Truth: return 0;
    case FormulaKind::Diamond:
    case FormulaKind::Neg: return widest_conjunction(f.body());
    case FormulaKind::Conj: {
        std::size_t w = f.conjuncts().size();
        for (const auto& c : f.conjuncts()) w = std::max(w, widest_conjunction(c));
        return w;
    }
    }
    return 0;
}

Formula normalize(const Formula& f)
{
    switch (f.kind()) {
    case FormulaKind::Truth: return f;
    case FormulaKind::Diamond: return Formula::diamond(f.action(), normalize(f.body()));
    case FormulaKind::Neg: {
        Formula inner = normalize(f.body());
        if (inner.kind() == FormulaKind::Neg) return inner.body();
        return Formula::neg(std::move(inner));
    }
    case FormulaKind::Conj: {
        std::map<std::string, Formula> parts;
        for (const auto& c : f.conjuncts()) {
            Formula n = normalize(c);
            if (n.kind() == FormulaKind::Conj) {
                for (const auto& cc : n.conjuncts()) parts.emplace(cc.key(), cc);
            } else if (!n.is_truth()) {
                parts.emplace(n.key(), n);
            }
        }
        if (parts.empty()) return Formula::truth();
        if (parts.size() == 1) return parts.begin()->second;
        std::vector<Formula> sorted;
        sorted.reserve(parts.size());
        for (auto& [k, v] : parts) sorted.push_back(v);
        return Formula::conj(std::move(sorted));
    }
    }
    return f;
}

bool simpler(const Formula& a, const Formula& b)
{
    if (a.modal_depth() != b.modal_depth()) return a.modal_depth() < b.modal_depth();
    if (a.size() != b.size()) return a.size() < b.size();
    return a.key() < b.key();
}

// --- FormulaSet ----------------------------------------------------------

FormulaSet::FormulaSet(std::initializer_list<Formula> formulas)
{
    for (const auto& f : formulas) insert(f);
}

bool FormulaSet::insert(const Formula& f)
{
    Formula n = normalize(f);
    return members_.emplace(n.key(), n).second;
}

bool FormulaSet::contains(const Formula& f) const { return contains_key(normalize(f).key()); }

std::vector<Formula> FormulaSet::formulas() const
{
    std::vector<Formula> out;
    out.reserve(members_.size());
    for (const auto& [k, f] : members_) out.push_back(f);
    return out;
}

ActionSet FormulaSet::actions() const
{
    ActionSet out;
    for (const auto& [k, f] : members_) collect_actions(f, out);
    return out;
}

int FormulaSet::max_modal_depth() const
{
    int d = 0;
    for (const auto& [k, f] : members_) d = std::max(d, f.modal_depth());
    return d;
}

std::size_t FormulaSet::widest_conjunction() const
{
    std::size_t w = 0;
    for (const auto& [k, f] : members_) w = std::max(w, hml::widest_conjunction(f));
    return w;
}

bool operator==(const FormulaSet& a, const FormulaSet& b)
{
    if (a.size() != b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first; });
}

// --- positions -----------------------------------------------------------

int FormulaPath::level() const
{
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const PathStep& s) {
        return s.kind == PathStep::Kind::DiamondBody;
    }));
}

bool FormulaPath::under_negation() const
{
    return std::any_of(steps.begin(), steps.end(),
                       [](const PathStep& s) { return s.kind == PathStep::Kind::NegBody; });
}

std::string FormulaPath::to_string() const
{
    if (steps.empty()) return "/";
    std::string out;
    for (const auto& s : steps) {
        out += '/';
        switch (s.kind) {
        case PathStep::Kind::ConjIndex: out += "and" + std::to_string(s.index); break;
        case PathStep::Kind::NegBody: out += "not"; break;
        case PathStep::Kind::DiamondBody: out += "<" + s.action + ">"; break;
        }
    }
    return out;
}

bool FormulaPath::is_prefix_of(const FormulaPath& other) const
{
    if (steps.size() > other.steps.size()) return false;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& a = steps[i];
        const auto& b = other.steps[i];
        if (a.kind != b.kind || a.index != b.index || a.action != b.action) return false;
    }
    return true;
}

namespace {

void walk(const Formula& f, FormulaPath& path, std::vector<Position>& out)
{
    out.push_back({path, f});
    switch (f.kind()) {
    case FormulaKind::Truth: return;
    case FormulaKind::Neg:
        path.steps.push_back({PathStep::Kind::NegBody, 0, {}});
        walk(f.body(), path, out);
        path.steps.pop_back();
        return;
    case FormulaKind::Diamond:
        path.steps.push_back({PathStep::Kind::DiamondBody, 0, f.action()});
        walk(f.body(), path, out);
        path.steps.pop_back();
        return;
    case FormulaKind::Conj:
        for (std::size_t i = 0; i < f.conjuncts().size(); ++i) {
            path.steps.push_back({PathStep::Kind::ConjIndex, i, {}});
            walk(f.conjuncts()[i], path, out);
            path.steps.pop_back();
        }
        return;
    }
}

Formula replace_from(const Formula& f, const std::vector<PathStep>& steps, std::size_t at,
                     const Formula& replacement)
{
    if (at == steps.size()) return replacement;
    const PathStep& s = steps[at];
    switch (s.kind) {
    case PathStep::Kind::NegBody:
        if (f.kind() != FormulaKind::Neg) break;
        return Formula::neg(replace_from(f.body(), steps, at + 1, replacement));
    case PathStep::Kind::DiamondBody:
        if (f.kind() != FormulaKind::Diamond || f.action() != s.action) break;
        return Formula::diamond(f.action(), replace_from(f.body(), steps, at + 1, replacement));
    case PathStep::Kind::ConjIndex: {
        if (f.kind() != FormulaKind::Conj || s.index >= f.conjuncts().size()) break;
        std::vector<Formula> parts = f.conjuncts();
        parts[s.index] = replace_from(parts[s.index], steps, at + 1, replacement);
        return Formula::conj(std::move(parts));
    }
    }
    throw std::invalid_argument("path does not address a position of " + f.key());
}

} // namespace

std::vector<Position> positions(const Formula& f)
{
    std::vector<Position> out;
    FormulaPath path;
    walk(f, path, out);
    return out;
}

const Formula& subformula_at(const Formula& f, const FormulaPath& path)
{
    const Formula* cur = &f;
    for (const auto& s : path.steps) {
        switch (s.kind) {
        case PathStep::Kind::NegBody:
        case PathStep::Kind::DiamondBody:
            if (cur->kind() == FormulaKind::Truth || cur->kind() == FormulaKind::Conj)
                throw std::invalid_argument("invalid path " + path.to_string());
            cur = &cur->body();
            break;
        case PathStep::Kind::ConjIndex:
            if (cur->kind() != FormulaKind::Conj || s.index >= cur->conjuncts().size())
                throw std::invalid_argument("invalid path " + path.to_string());
            cur = &cur->conjuncts()[s.index];
            break;
        }
    }
    return *cur;
}

Formula replace_at(const Formula& f, const FormulaPath& path, const Formula& replacement)
{
    return replace_from(f, path.steps, 0, replacement);
}

} // namespace hml
