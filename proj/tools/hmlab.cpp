// hmlab: batch front end for the process/modal-logic workbench.
// Exit codes: 0 verdict computed, 1 usage or parse error, 2 resource cap.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hml/characterizations.hpp"
#include "hml/conditions.hpp"
#include "hml/errors.hpp"
#include "hml/lab.hpp"
#include "hml/language.hpp"
#include "hml/parallel.hpp"
#include "hml/parse.hpp"
#include "hml/report.hpp"
#include "hml/restriction.hpp"

using namespace hml;

namespace {

struct Output {
    bool json = false;
    std::string command;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }

    void emit(Json inputs, Json bounds, Json verdict, Json witnesses, const std::string& text) const
    {
        if (json)
            std::cout << make_report(command, std::move(inputs), std::move(bounds), std::move(verdict),
                                     std::move(witnesses), elapsed_ms())
                             .dump(2)
                      << "\n";
        else
            std::cout << text;
    }

    int error(const std::string& message, int code) const
    {
        if (json) {
            Json r = make_report(command, Json::object(), Json::object(), "error", Json::array(), elapsed_ms());
            r["error"] = message;
            std::cout << r.dump(2) << "\n";
        }
        std::cerr << "hmlab: " << message << "\n";
        return code;
    }
};

std::string read_text(const std::string& arg)
{
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::string text = arg;
    for (auto& c : text)
        if (c == ';') c = '\n';
    return text;
}

Json witness_list(const std::vector<ConditionWitness>& ws)
{
    Json out = Json::array();
    for (const auto& w : ws) out.push_back(to_json(w));
    return out;
}

Json bounds_of(const LanguageSpec& spec)
{
    if (!spec.grammar) return {{"language", spec.describe()}};
    const auto& b = spec.grammar->bounds;
    Json acts = Json::array();
    for (const auto& a : b.actions) acts.push_back(a);
    return {{"grammar", spec.grammar->id.name()}, {"actions", acts}, {"depth", b.depth}, {"width", b.width}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hmlab: processes, Hennessy-Milner logic and congruence conditions"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--json", out.json, "Emit a structured JSON report");

    std::string p_text, q_text, f_text, lang_arg, op_text, cond_text, left_file, right_file, action;
    int depth = 3, branch = 2, width = 2, search_depth = 2;
    std::string actions_text;

    auto* sat_cmd = app.add_subcommand("sat", "Does a process satisfy a formula?");
    sat_cmd->add_option("process", p_text)->required();
    sat_cmd->add_option("formula", f_text)->required();

    auto* equiv_cmd = app.add_subcommand("equiv", "Are two processes equivalent under a language?");
    equiv_cmd->add_option("p", p_text)->required();
    equiv_cmd->add_option("q", q_text)->required();
    equiv_cmd->add_option("--lang", lang_arg, "Language file or inline formulas (';'-separated)")->required();

    auto* lts_cmd = app.add_subcommand("lts", "Print the LTS of a process as DOT");
    lts_cmd->add_option("process", p_text)->required();

    auto* cut_cmd = app.add_subcommand("cut", "Apply a cut function (pi:<n> or enc:{a,b})");
    cut_cmd->add_option("op", op_text)->required();
    cut_cmd->add_option("formula", f_text)->required();

    auto* sub_cmd = app.add_subcommand("sub", "Print the generalized subformula closure");
    sub_cmd->add_option("formula", f_text)->required();

    auto* par_cmd = app.add_subcommand("par", "Membership of a formula in Par(A, B)");
    par_cmd->add_option("formula", f_text)->required();
    par_cmd->add_option("--left", left_file, "Formula set A (language file)")->required();
    par_cmd->add_option("--right", right_file, "Formula set B (language file)")->required();

    auto* check_cmd = app.add_subcommand("check", "Check AC, AP, RES or PAR for a language");
    check_cmd->add_option("condition", cond_text)->required()->check(CLI::IsMember({"AC", "AP", "RES", "PAR"}));
    check_cmd->add_option("--lang", lang_arg)->required();
    check_cmd->add_option("--action", action, "AP only: restrict to one action");

    auto* search_cmd = app.add_subcommand("search", "Search for a congruence violation");
    search_cmd->add_option("op", op_text, "choice | par | prefix:a | pi:n | enc:{a,b} | theta:a>b")->required();
    search_cmd->add_option("--lang", lang_arg)->required();
    search_cmd->add_option("--depth", depth)->check(CLI::Range(0, 6));
    search_cmd->add_option("--branch", branch)->check(CLI::Range(0, 4));
    search_cmd->add_option("--actions", actions_text, "Alphabet, e.g. a,b");

    auto* suite_cmd = app.add_subcommand("suite", "Condition/search matrix over the standard characterizations");
    int suite_depth = 2;
    suite_cmd->add_option("--depth", suite_depth, "Grammar depth")->check(CLI::Range(0, 3));
    suite_cmd->add_option("--width", width, "Grammar width")->check(CLI::Range(0, 3));
    suite_cmd->add_option("--search-depth", search_depth)->check(CLI::Range(0, 3));
    suite_cmd->add_option("--branch", branch)->check(CLI::Range(0, 3));

    auto* demo_cmd = app.add_subcommand("demo-ct", "Completed traces are not preserved by encapsulation");

    std::string report_file;
    auto* replay_cmd = app.add_subcommand("replay", "Re-check a JSON counterexample report");
    replay_cmd->add_option("report", report_file)->required();
    replay_cmd->add_option("--lang", lang_arg)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    out.command = app.get_subcommands().front()->get_name();

    try {
        if (*sat_cmd) {
            Term p = parse_process(p_text);
            Formula f = parse_formula(f_text);
            bool v = sat(p, f);
            out.emit({{"process", to_string(p)}, {"formula", f.key()}}, Json::object(), v, Json::array(),
                     std::string(v ? "true" : "false") + "\n");
        } else if (*equiv_cmd) {
            Term p = parse_process(p_text), q = parse_process(q_text);
            LanguageSpec spec = parse_language(read_text(lang_arg));
            Language O{spec};
            auto f = equiv_under(p, q, O);
            Json ws = Json::array();
            if (f) ws.push_back({{"distinguishing", f->key()}});
            out.emit({{"p", to_string(p)}, {"q", to_string(q)}, {"language", spec.describe()}}, bounds_of(spec),
                     f ? "inequivalent" : "equivalent", ws,
                     f ? "inequivalent: " + f->key() + "\n" : std::string("equivalent\n"));
        } else if (*lts_cmd) {
            Term p = parse_process(p_text);
            Lts lts = to_lts(p);
            std::string dot = to_dot(lts);
            out.emit({{"process", to_string(p)}}, Json::object(),
                     {{"states", lts.states.size()}, {"transitions", lts.transitions.size()}, {"dot", dot}},
                     Json::array(), dot);
        } else if (*cut_cmd) {
            RestrictionOp op = parse_restriction(op_text);
            Formula f = parse_formula(f_text);
            Formula c = cut(op, f);
            Residue r = cut_residue_shape(op, f);
            std::string shape = r.kind == ResidueKind::EquivFalse ? "F" : r.context_form->key();
            Json replaced = Json::array();
            for (const auto& p : r.replaced) replaced.push_back(p.to_string());
            out.emit({{"op", op.to_string()}, {"formula", f.key()}}, Json::object(),
                     {{"cut", c.key()},
                      {"residue", r.kind == ResidueKind::EquivFalse ? "EquivFalse" : "ContextForm"},
                      {"form", shape}},
                     replaced, c.key() + "\nresidue: " + shape + "\n");
        } else if (*sub_cmd) {
            Formula f = parse_formula(f_text);
            FormulaSet s = sub(f);
            std::vector<Formula> sorted = s.formulas();
            std::sort(sorted.begin(), sorted.end(), simpler);
            Json list = Json::array();
            std::string text;
            for (const auto& g : sorted) {
                list.push_back(g.key());
                text += g.key() + "\n";
            }
            out.emit({{"formula", f.key()}}, Json::object(), {{"size", sorted.size()}}, list, text);
        } else if (*par_cmd) {
            Formula f = parse_formula(f_text);
            FormulaSet A = parse_language(read_text(left_file)).formulas;
            FormulaSet B = parse_language(read_text(right_file)).formulas;
            ParCalculus calc;
            auto trace = calc.derivation(f, A, B);
            bool v = !trace.empty();
            Json ws = Json::array();
            std::string text = v ? "member\n" : "not a member\n";
            for (const auto& line : trace) {
                ws.push_back(line);
                text += line + "\n";
            }
            out.emit({{"formula", f.key()}, {"left", LanguageSpec::explicit_set(A).describe()},
                      {"right", LanguageSpec::explicit_set(B).describe()}},
                     Json::object(), v, ws, text);
        } else if (*check_cmd) {
            LanguageSpec spec = parse_language(read_text(lang_arg));
            Language O{spec};
            Condition c = parse_condition(cond_text);
            ConditionVerdict v = (c == Condition::AP && !action.empty()) ? check_AP(O, action) : check(c, O);
            out.emit({{"condition", v.name()}, {"language", spec.describe()}}, bounds_of(spec),
                     v.holds ? "pass" : "fail", witness_list(v.witnesses), render(v));
        } else if (*search_cmd) {
            Operator op = parse_operator(op_text);
            LanguageSpec spec = parse_language(read_text(lang_arg));
            Language O{spec};
            SearchBounds b;
            b.depth = depth;
            b.branch = branch;
            if (!actions_text.empty()) b.alphabet = parse_action_list(actions_text);
            SearchResult r = congruence_search(op, O, b);
            Json ws = Json::array();
            if (r.report) ws.push_back(to_json(*r.report));
            Json bj{{"depth", depth}, {"branch", branch}, {"universe", r.universe}, {"classes", r.classes}};
            out.emit({{"operator", op.to_string()}, {"language", spec.describe()}}, bj,
                     r.report ? "violation" : "no violation", ws,
                     r.report ? render(*r.report)
                              : "no violation among " + std::to_string(r.checked) + " candidates (" +
                                    std::to_string(r.universe) + " trees, " + std::to_string(r.classes) +
                                    " classes)\n");
        } else if (*suite_cmd) {
            SuiteBounds sb;
            sb.language_depth = suite_depth;
            sb.language_width = width;
            sb.search_depth = search_depth;
            sb.search_branch = branch;
            SuiteReport s = theorem_suite(sb);
            std::size_t violations = 0;
            for (const auto& row : s.rows)
                for (const auto& c : row.cells)
                    for (const auto& x : c.searches) violations += x.violation ? 1 : 0;
            Json bj{{"actions", {"a", "b"}}, {"depth", sb.language_depth}, {"width", sb.language_width},
                    {"search_depth", sb.search_depth}, {"branch", sb.search_branch}};
            out.emit(Json::object(), bj, violations == 0 ? "no violation" : "violation", to_json(s)["rows"],
                     render(s));
        } else if (*demo_cmd) {
            CtDemo d = ct_encapsulation_demo();
            Json proj = Json::array();
            std::string text = std::string("components equivalent: ") + (d.components_equivalent ? "yes" : "no") + "\n";
            text += "enc{b} images: " +
                    (d.encapsulated_distinguishing ? "separated by " + d.encapsulated_distinguishing->key()
                                                   : std::string("equivalent")) +
                    "\n";
            for (const auto& [n, f] : d.projections) {
                proj.push_back({{"n", n}, {"distinguishing", f ? Json(f->key()) : Json(nullptr)}});
                text += "pi[" + std::to_string(n) + "] images: " + (f ? "separated by " + f->key() : "equivalent") + "\n";
            }
            out.emit({{"left", to_string(d.left)}, {"right", to_string(d.right)}},
                     {{"grammar", "CT"}, {"actions", {"a", "b", "c"}}, {"depth", 3}, {"width", 3}},
                     {{"components_equivalent", d.components_equivalent},
                      {"encapsulation_separates", d.encapsulated_distinguishing.has_value()},
                      {"projections", proj}},
                     Json::array({to_json(d.report)}), text);
        } else if (*replay_cmd) {
            Json j = Json::parse(read_text(report_file));
            if (j.contains("witnesses") && j["witnesses"].is_array() && !j["witnesses"].empty()) j = j["witnesses"][0];
            CounterexampleReport r = report_from_json(j);
            Language O{parse_language(read_text(lang_arg))};
            ReplayResult rr = replay(r, O);
            Json ws = Json::array();
            std::string text = rr.ok ? "replay ok\n" : "replay FAILED\n";
            for (const auto& p : rr.problems) {
                ws.push_back(p);
                text += "  " + p + "\n";
            }
            out.emit({{"report", report_file}}, Json::object(), rr.ok ? "ok" : "mismatch", ws, text);
        }
    } catch (const CapError& e) {
        return out.error(e.what(), 2);
    } catch (const ParseError& e) {
        return out.error(e.what(), 1);
    } catch (const std::invalid_argument& e) {
        return out.error(e.what(), 1);
    } catch (const nlohmann::json::exception& e) {
        return out.error(e.what(), 1);
    }
    return 0;
}
