#include "hml/report.hpp"

#include <sstream>

#include "hml/parse.hpp"

namespace hml {

namespace {

Json actions_json(const ActionSet& s)
{
    Json out = Json::array();
    for (const auto& a : s) out.push_back(a);
    return out;
}

} // namespace

Json make_report(const std::string& command, Json inputs, Json bounds, Json verdict, Json witnesses, double timing_ms)
{
    Json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["bounds"] = std::move(bounds);
    j["verdict"] = std::move(verdict);
    j["witnesses"] = std::move(witnesses);
    j["timing_ms"] = timing_ms;
    return j;
}

Json to_json(const CounterexampleReport& r)
{
    Json j;
    j["operator"] = r.op.to_string();
    j["language"] = r.language;
    Json comps = Json::array();
    for (const auto& [p, q] : r.components) comps.push_back({to_string(p), to_string(q)});
    j["components"] = comps;
    j["composed"] = {to_string(r.composed_left), to_string(r.composed_right)};
    j["distinguishing"] = r.distinguishing.key();
    j["bounds"] = {{"alphabet", actions_json(r.alphabet)}, {"depth", r.depth}, {"branch", r.branch}};
    return j;
}

Json to_json(const ConditionWitness& w)
{
    return {{"formula", w.formula.key()}, {"path", w.path.to_string()}, {"missing", w.missing.key()}};
}

Json to_json(const ConditionVerdict& v)
{
    Json ws = Json::array();
    for (const auto& w : v.witnesses) ws.push_back(to_json(w));
    return {{"condition", v.name()}, {"holds", v.holds}, {"violations", v.violations}, {"bounds", v.bounds},
            {"witnesses", ws}};
}

Json to_json(const SuiteReport& s)
{
    Json rows = Json::array();
    for (const auto& row : s.rows) {
        Json cells = Json::array();
        for (const auto& c : row.cells) {
            Json searches = Json::array();
            for (const auto& sr : c.searches) {
                Json x{{"operator", sr.op}, {"violation", sr.violation}};
                if (sr.report) x["report"] = to_json(*sr.report);
                if (!sr.error.empty()) x["error"] = sr.error;
                searches.push_back(x);
            }
            Json cell{{"condition", c.condition}, {"holds", c.holds}, {"violations", c.violations},
                      {"searches", searches}};
            if (c.witness) cell["witness"] = to_json(*c.witness);
            if (!c.error.empty()) cell["error"] = c.error;
            cells.push_back(cell);
        }
        rows.push_back({{"language", row.language}, {"cells", cells}});
    }
    return {{"rows", rows}, {"seconds", s.seconds}};
}

CounterexampleReport report_from_json(const Json& j)
{
    try {
        CounterexampleReport r;
        r.op = parse_operator(j.at("operator").get<std::string>());
        r.language = j.at("language").get<std::string>();
        for (const auto& c : j.at("components"))
            r.components.emplace_back(parse_process(c.at(0).get<std::string>()),
                                      parse_process(c.at(1).get<std::string>()));
        r.composed_left = parse_process(j.at("composed").at(0).get<std::string>());
        r.composed_right = parse_process(j.at("composed").at(1).get<std::string>());
        r.distinguishing = parse_formula(j.at("distinguishing").get<std::string>());
        const auto& b = j.at("bounds");
        for (const auto& a : b.at("alphabet")) r.alphabet.insert(a.get<std::string>());
        r.depth = b.at("depth").get<int>();
        r.branch = b.at("branch").get<int>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

std::string render(const CounterexampleReport& r)
{
    std::ostringstream out;
    out << "counterexample for " << r.op.to_string() << " under " << r.language << "\n";
    for (const auto& [p, q] : r.components) out << "  component  " << to_string(p) << "  ~  " << to_string(q) << "\n";
    out << "  composed   " << to_string(r.composed_left) << "  !~  " << to_string(r.composed_right) << "\n";
    out << "  separated by " << r.distinguishing.key() << "\n";
    return out.str();
}

std::string render(const ConditionVerdict& v)
{
    std::ostringstream out;
    out << v.name() << ": " << (v.holds ? "holds" : "fails") << " (" << v.bounds << ")\n";
    for (const auto& w : v.witnesses)
        out << "  " << w.formula.key() << " at " << w.path.to_string() << " needs " << w.missing.key() << "\n";
    if (v.violations > v.witnesses.size())
        out << "  ... " << v.violations - v.witnesses.size() << " more\n";
    return out.str();
}

std::string render(const SuiteReport& s)
{
    std::ostringstream out;
    out << "language  AC   AP   RES  PAR  searches\n";
    for (const auto& row : s.rows) {
        std::size_t searches = 0, violations = 0;
        out << row.language << std::string(row.language.size() < 10 ? 10 - row.language.size() : 1, ' ');
        for (const auto& c : row.cells) {
            out << (c.error.empty() ? (c.holds ? "ok   " : "FAIL ") : "CAP  ");
            searches += c.searches.size();
            for (const auto& sr : c.searches) violations += sr.violation ? 1 : 0;
        }
        out << searches << " run, " << violations << " violations\n";
    }
    out << "elapsed " << s.seconds << " s\n";
    return out.str();
}

} // namespace hml
