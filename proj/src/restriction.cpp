#include "hml/restriction.hpp"

#include <algorithm>
#include <stdexcept>

#include "hml/characterizations.hpp"
#include "hml/parse.hpp"
#include "hml/sat.hpp"

namespace hml {

RestrictionOp RestrictionOp::projection(int n)
{
    if (n < 0) throw std::invalid_argument("projection depth must be nonnegative");
    RestrictionOp op;
    op.kind = Kind::Projection;
    op.depth = n;
    return op;
}

RestrictionOp RestrictionOp::encapsulation(ActionSet blocked)
{
    RestrictionOp op;
    op.kind = Kind::Encapsulation;
    op.blocked = std::move(blocked);
    return op;
}

Term RestrictionOp::apply(const Term& p) const
{
    return kind == Kind::Projection ? Term::proj(depth, p) : Term::encap(blocked, p);
}

StateId RestrictionOp::apply(TreeStore& store, StateId s) const
{
    if (kind == Kind::Projection) return store.project(depth, s);
    std::vector<ActionId> ids;
    for (const auto& a : blocked) ids.push_back(store.action_id(a));
    std::sort(ids.begin(), ids.end());
    return store.encapsulate(ids, s);
}

std::string RestrictionOp::to_string() const
{
    if (kind == Kind::Projection) return "pi:" + std::to_string(depth);
    std::string out = "enc:{";
    bool first = true;
    for (const auto& a : blocked) {
        if (!first) out += ',';
        first = false;
        out += a;
    }
    return out + "}";
}

RestrictionOp parse_restriction(const std::string& text)
{
    if (text.rfind("pi:", 0) == 0) {
        std::size_t used = 0;
        int n = -1;
        try {
            n = std::stoi(text.substr(3), &used);
        } catch (const std::logic_error&) {
        }
        if (n < 0 || used != text.size() - 3) throw std::invalid_argument("bad projection '" + text + "'");
        return RestrictionOp::projection(n);
    }
    if (text.rfind("enc:", 0) == 0) {
        try {
            return RestrictionOp::encapsulation(parse_action_list(text.substr(4)));
        } catch (const ParseError& e) {
            throw std::invalid_argument("bad encapsulation '" + text + "': " + e.what());
        }
    }
    throw std::invalid_argument("expected pi:<n> or enc:{a,b}, got '" + text + "'");
}

namespace {

// `level` is the number of diamonds crossed so far.
bool cut_here(const RestrictionOp& op, const Formula& diamond, int level)
{
    if (op.kind == RestrictionOp::Kind::Projection) return level >= op.depth;
    return op.blocked.count(diamond.action()) != 0;
}

Formula cut_at(const RestrictionOp& op, const Formula& phi, int level)
{
    switch (phi.kind()) {
    case FormulaKind::Truth: return phi;
    case FormulaKind::Neg: return Formula::neg(cut_at(op, phi.body(), level));
    case FormulaKind::Conj: {
        std::vector<Formula> parts;
        for (const auto& c : phi.conjuncts()) parts.push_back(cut_at(op, c, level));
        return Formula::conj(std::move(parts));
    }
    case FormulaKind::Diamond:
        if (cut_here(op, phi, level)) return Formula::falsity();
        return Formula::diamond(phi.action(), cut_at(op, phi.body(), level + 1));
    }
    return phi;
}

} // namespace

Formula cut(const RestrictionOp& op, const Formula& phi) { return cut_at(op, phi, 0); }

Residue cut_residue_shape(const RestrictionOp& op, const Formula& phi)
{
    Residue out;
    const auto pos = positions(phi);
    for (const auto& p : pos) {
        if (p.subformula.kind() != FormulaKind::Diamond) continue;
        if (!cut_here(op, p.subformula, p.path.level())) continue;
        bool nested = std::any_of(out.replaced.begin(), out.replaced.end(),
                                  [&](const FormulaPath& r) { return r.is_prefix_of(p.path); });
        if (!nested) out.replaced.push_back(p.path);
    }
    if (out.replaced.empty()) {
        out.context_form = phi;
        return out;
    }

    // Innermost negation above each introduced F.
    std::vector<FormulaPath> negations;
    for (const auto& r : out.replaced) {
        std::optional<std::size_t> innermost;
        for (std::size_t i = r.steps.size(); i-- > 0;)
            if (r.steps[i].kind == PathStep::Kind::NegBody) {
                innermost = i;
                break;
            }
        if (!innermost) {
            out.kind = ResidueKind::EquivFalse;
            return out;
        }
        FormulaPath n;
        n.steps.assign(r.steps.begin(), r.steps.begin() + static_cast<std::ptrdiff_t>(*innermost));
        negations.push_back(std::move(n));
    }
    // Keep only the outermost of these; inner ones disappear with them.
    std::vector<FormulaPath> roots;
    for (const auto& n : negations) {
        bool covered = std::any_of(negations.begin(), negations.end(), [&](const FormulaPath& m) {
            return m.steps.size() < n.steps.size() && m.is_prefix_of(n);
        });
        bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const FormulaPath& m) {
            return m.steps.size() == n.steps.size() && m.is_prefix_of(n);
        });
        if (!covered && !duplicate) roots.push_back(n);
    }
    Formula form = phi;
    for (const auto& r : roots) form = replace_at(form, r, Formula::truth());
    out.kind = ResidueKind::ContextForm;
    out.context_form = form;
    return out;
}

CutResult verify_cut(const RestrictionOp& op, const CutBounds& bounds)
{
    TreeStore store;
    ActionSet alphabet = bounds.actions;
    if (op.kind == RestrictionOp::Kind::Encapsulation) alphabet.insert(op.blocked.begin(), op.blocked.end());
    const auto states = enumerate_states(store, alphabet, bounds.process_depth, bounds.process_branch);
    std::vector<StateId> images;
    images.reserve(states.size());
    for (auto s : states) images.push_back(op.apply(store, s));

    const auto formulas =
        enumerate_hml(alphabet, bounds.formula_depth, bounds.formula_width, bounds.formula_size, false);
    SatTable table{store};
    std::vector<std::pair<FormulaId, FormulaId>> ids;
    ids.reserve(formulas.size());
    for (const auto& f : formulas) ids.emplace_back(table.add(f), table.add(cut(op, f)));
    table.sync();

    CutResult result;
    result.processes = states.size();
    result.formulas = formulas.size();
    for (std::size_t k = 0; k < formulas.size(); ++k) {
        for (std::size_t i = 0; i < states.size(); ++i) {
            ++result.checks;
            bool lhs = table.holds(ids[k].first, images[i]);
            bool rhs = table.holds(ids[k].second, states[i]);
            if (lhs != rhs) {
                result.violation = CutViolation{store.term(states[i]), formulas[k], lhs, rhs};
                return result;
            }
        }
    }
    return result;
}

} // namespace hml
