#include "hml/conditions.hpp"

#include <stdexcept>

#include "hml/parallel.hpp"

namespace hml {

std::string ConditionVerdict::name() const
{
    switch (condition) {
    case Condition::AC: return "AC";
    case Condition::AP: return action ? "AP(" + *action + ")" : "AP";
    case Condition::RES: return "RES";
    case Condition::PAR: return "PAR";
    }
    return "?";
}

namespace {

class Checker {
public:
    Checker(Language& O, Condition c, std::optional<Action> a, std::size_t max_witnesses) : O_{O}, max_{max_witnesses}
    {
        verdict_.condition = c;
        verdict_.action = std::move(a);
        verdict_.bounds = O.spec().describe();
    }

    void require(const Formula& member, const FormulaPath& path, const Formula& candidate)
    {
        auto key = normalize(candidate).key();
        auto [it, fresh] = accepted_.emplace(key, false);
        if (fresh) it->second = O_.member_equiv(candidate) || O_.trivial(candidate);
        if (it->second) return;
        verdict_.holds = false;
        ++verdict_.violations;
        if (verdict_.witnesses.size() < max_) verdict_.witnesses.push_back({member, path, normalize(candidate)});
    }

    ConditionVerdict done() { return std::move(verdict_); }

private:
    Language& O_;
    std::size_t max_;
    ConditionVerdict verdict_;
    std::unordered_map<std::string, bool> accepted_;
};

FormulaPath child(const FormulaPath& p, PathStep step)
{
    FormulaPath out = p;
    out.steps.push_back(std::move(step));
    return out;
}

} // namespace

ConditionVerdict check_AC(Language& O, std::size_t max_witnesses)
{
    Checker c{O, Condition::AC, std::nullopt, max_witnesses};
    for (const auto& phi : O.ordered())
        for (const auto& pos : positions(phi)) {
            if (pos.path.level() != 0 || pos.subformula.kind() != FormulaKind::Conj) continue;
            const auto& parts = pos.subformula.conjuncts();
            for (std::size_t i = 0; i < parts.size(); ++i)
                c.require(phi, child(pos.path, {PathStep::Kind::ConjIndex, i, {}}), parts[i]);
        }
    return c.done();
}

ConditionVerdict check_AP(Language& O, const Action& a, std::size_t max_witnesses)
{
    Checker c{O, Condition::AP, a, max_witnesses};
    for (const auto& phi : O.ordered())
        for (const auto& pos : positions(phi)) {
            if (pos.path.level() != 0 || pos.subformula.kind() != FormulaKind::Diamond) continue;
            if (pos.subformula.action() != a) continue;
            c.require(phi, pos.path, pos.subformula.body());
        }
    return c.done();
}

ConditionVerdict check_AP(Language& O, std::size_t max_witnesses)
{
    ConditionVerdict all;
    all.condition = Condition::AP;
    all.bounds = O.spec().describe();
    for (const auto& a : O.actions()) {
        auto v = check_AP(O, a, max_witnesses);
        all.holds = all.holds && v.holds;
        all.violations += v.violations;
        for (auto& w : v.witnesses)
            if (all.witnesses.size() < max_witnesses) all.witnesses.push_back(std::move(w));
    }
    return all;
}

ConditionVerdict check_RES(Language& O, std::size_t max_witnesses)
{
    Checker c{O, Condition::RES, std::nullopt, max_witnesses};
    for (const auto& phi : O.ordered())
        for (const auto& pos : positions(phi)) {
            if (pos.subformula.kind() != FormulaKind::Neg) continue;
            c.require(phi, pos.path, replace_at(phi, pos.path, Formula::truth()));
        }
    return c.done();
}

ConditionVerdict check_PAR(Language& O, std::size_t max_witnesses)
{
    Checker c{O, Condition::PAR, std::nullopt, max_witnesses};
    for (const auto& phi : O.ordered())
        for (const auto& [key, s] : sub(phi)) c.require(phi, FormulaPath{}, s);
    return c.done();
}

ConditionVerdict check(Condition cond, Language& O)
{
    switch (cond) {
    case Condition::AC: return check_AC(O);
    case Condition::AP: return check_AP(O);
    case Condition::RES: return check_RES(O);
    case Condition::PAR: return check_PAR(O);
    }
    throw std::invalid_argument("unknown condition");
}

Condition parse_condition(const std::string& name)
{
    if (name == "AC") return Condition::AC;
    if (name == "AP") return Condition::AP;
    if (name == "RES") return Condition::RES;
    if (name == "PAR") return Condition::PAR;
    throw std::invalid_argument("unknown condition '" + name + "' (expected AC, AP, RES or PAR)");
}

} // namespace hml
