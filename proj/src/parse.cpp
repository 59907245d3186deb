#include "hml/parse.hpp"

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>

namespace hml {

namespace {

class Scanner {
public:
    Scanner(std::string_view text, const std::optional<ActionSet>& alphabet, std::size_t line = 1)
        : text_{text}, alphabet_{alphabet}, line_{line}
    {
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    bool at_end()
    {
        skip_space();
        return pos_ >= text_.size();
    }

    bool peek(std::string_view token)
    {
        skip_space();
        return text_.substr(pos_, token.size()) == token;
    }

    bool accept(std::string_view token)
    {
        if (!peek(token)) return false;
        for (std::size_t i = 0; i < token.size(); ++i) advance();
        return true;
    }

    void expect(std::string_view token)
    {
        if (!accept(token)) fail({std::string(token)});
    }

    bool peek_identifier()
    {
        skip_space();
        return pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z';
    }

    /// Identifier text without consuming it.
    std::string_view look_identifier()
    {
        skip_space();
        std::size_t end = pos_;
        while (end < text_.size() && ident_char(text_[end])) ++end;
        return text_.substr(pos_, end - pos_);
    }

    Action action()
    {
        if (!peek_identifier()) fail({"action"});
        std::size_t line = line_, column = column_;
        std::string name{look_identifier()};
        for (std::size_t i = 0; i < name.size(); ++i) advance();
        if (alphabet_ && !alphabet_->count(name))
            throw ParseError("unknown action '" + name + "' (not in declared alphabet)", line, column);
        return name;
    }

    int integer()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (start == pos_) fail({"integer"});
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    [[nodiscard]] std::pair<int, int> position() const { return {line_, column_}; }

    [[noreturn]] void fail(const std::set<std::string>& expected)
    {
        skip_space();
        std::string msg = "syntax error: expected ";
        bool first = true;
        for (const auto& e : expected) {
            if (!first) msg += " | ";
            first = false;
            msg += "'" + e + "'";
        }
        msg += pos_ < text_.size() ? ", found '" + std::string(1, text_[pos_]) + "'" : ", found end of input";
        throw ParseError(msg, line_, column_);
    }

    void finish(const std::set<std::string>& continuations)
    {
        if (!at_end()) fail(continuations);
    }

private:
    static bool ident_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    const std::optional<ActionSet>& alphabet_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

// --- processes ---------------------------------------------------------------

class ProcessParser {
public:
    explicit ProcessParser(Scanner& s) : s_{s} {}

    Term choice()
    {
        Term t = par();
        while (s_.accept("+")) t = Term::choice(t, par());
        return t;
    }

private:
    Term par()
    {
        Term t = prefix();
        while (s_.accept("||")) t = Term::par(t, prefix());
        return t;
    }

    Term prefix()
    {
        if (s_.accept("0")) return Term::nil();
        if (s_.accept("(")) {
            Term t = choice();
            s_.expect(")");
            return t;
        }
        if (!s_.peek_identifier()) s_.fail({"0", "(", "action", "pi[", "enc{", "theta[", "lmerge("});
        std::string_view word = s_.look_identifier();
        if (word == "pi" && s_.accept("pi[")) {
            int n = s_.integer();
            s_.expect("]");
            return Term::proj(n, group());
        }
        if (word == "enc" && s_.accept("enc{")) {
            ActionSet blocked;
            if (!s_.peek("}")) {
                do blocked.insert(s_.action());
                while (s_.accept(","));
            }
            s_.expect("}");
            return Term::encap(std::move(blocked), group());
        }
        if (word == "theta" && s_.accept("theta[")) {
            std::vector<std::pair<Action, Action>> pairs;
            s_.skip_space();
            auto [line, column] = s_.position();
            if (!s_.peek("]")) {
                do {
                    Action hi = s_.action();
                    s_.expect(">");
                    pairs.emplace_back(hi, s_.action());
                } while (s_.accept(","));
            }
            s_.expect("]");
            PriorityOrder order;
            try {
                order = PriorityOrder(std::move(pairs));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line, column);
            }
            return Term::priority(std::move(order), group());
        }
        if (word == "lmerge" && s_.accept("lmerge(")) {
            Term l = choice();
            s_.expect(",");
            Term r = choice();
            s_.expect(")");
            return Term::left_merge(l, r);
        }
        Action a = s_.action();
        s_.expect(".");
        return Term::prefix(std::move(a), prefix());
    }

    Term group()
    {
        s_.expect("(");
        Term t = choice();
        s_.expect(")");
        return t;
    }

    Scanner& s_;
};

// --- formulas ----------------------------------------------------------------

class FormulaParser {
public:
    explicit FormulaParser(Scanner& s) : s_{s} {}

    Formula conjunction()
    {
        std::vector<Formula> parts{unary()};
        while (s_.accept("&")) parts.push_back(unary());
        if (parts.size() == 1) return parts.front();
        return Formula::conj(std::move(parts));
    }

private:
    Formula unary()
    {
        if (s_.accept("~")) return Formula::neg(unary());
        if (s_.accept("<")) {
            Action a = s_.action();
            s_.expect(">");
            return Formula::diamond(std::move(a), unary());
        }
        if (s_.accept("/\\(")) {
            std::vector<Formula> parts;
            if (!s_.peek(")")) {
                do parts.push_back(conjunction());
                while (s_.accept(","));
            }
            s_.expect(")");
            return Formula::conj(std::move(parts));
        }
        if (s_.accept("(")) {
            Formula f = conjunction();
            s_.expect(")");
            return f;
        }
        if (s_.accept("T")) return Formula::truth();
        if (s_.accept("F")) return Formula::falsity();
        s_.fail({"T", "F", "~", "<", "/\\(", "("});
    }

    Scanner& s_;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Term parse_process(std::string_view text, const std::optional<ActionSet>& alphabet)
{
    Scanner s{text, alphabet};
    Term t = ProcessParser{s}.choice();
    s.finish({"+", "||"});
    return t;
}

Formula parse_formula(std::string_view text, const std::optional<ActionSet>& alphabet)
{
    Scanner s{text, alphabet};
    Formula f = FormulaParser{s}.conjunction();
    s.finish({"&"});
    return f;
}

PriorityOrder parse_priority(std::string_view text)
{
    Term t = parse_process("theta[" + std::string(text) + "](0)");
    return t.order();
}

ActionSet parse_action_list(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
    std::optional<ActionSet> none;
    Scanner s{text, none};
    ActionSet out;
    if (s.at_end()) return out;
    do out.insert(s.action());
    while (s.accept(","));
    s.finish({","});
    return out;
}

LanguageSpec parse_language(std::string_view text)
{
    std::optional<ActionSet> alphabet;
    std::optional<GrammarSource> grammar;
    std::vector<std::pair<std::size_t, std::string_view>> formula_lines;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim(text.substr(start, end - start));
        ++line_no;
        start = end + 1;
        if (line.empty() || line.front() == '#') continue;
        if (line.rfind("@actions", 0) == 0) {
            try {
                alphabet = parse_action_list(line.substr(8));
            } catch (const ParseError& e) {
                throw ParseError(std::string("bad @actions header: ") + e.what(), line_no, 1);
            }
            continue;
        }
        if (line.rfind("@grammar", 0) == 0) {
            if (grammar) throw ParseError("more than one @grammar directive", line_no, 1);
            std::string rest{trim(line.substr(8))};
            std::size_t sp = rest.find(' ');
            std::string id_text = rest.substr(0, sp);
            GrammarBounds bounds;
            int n = 2;
            bool have_actions = false;
            std::string params = sp == std::string::npos ? "" : rest.substr(sp + 1);
            std::size_t p = 0;
            while (p < params.size()) {
                std::size_t q = params.find(' ', p);
                if (q == std::string::npos) q = params.size();
                std::string kv = params.substr(p, q - p);
                p = q + 1;
                if (kv.empty()) continue;
                std::size_t eq = kv.find('=');
                if (eq == std::string::npos) throw ParseError("expected key=value in @grammar", line_no, 1);
                std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
                try {
                    if (key == "actions") {
                        bounds.actions = parse_action_list(value);
                        have_actions = true;
                    } else if (key == "depth") {
                        bounds.depth = std::stoi(value);
                    } else if (key == "width") {
                        bounds.width = std::stoi(value);
                    } else if (key == "n") {
                        n = std::stoi(value);
                    } else {
                        throw ParseError("unknown @grammar parameter '" + key + "'", line_no, 1);
                    }
                } catch (const std::logic_error&) {
                    throw ParseError("bad value for @grammar parameter '" + key + "'", line_no, 1);
                }
            }
            if (bounds.depth < 0 || bounds.width < 0 || n < 1)
                throw ParseError("@grammar bounds must be nonnegative", line_no, 1);
            CharacterizationId id;
            try {
                id = CharacterizationId::parse(id_text, n);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no, 1);
            }
            if (!have_actions) {
                if (!alphabet) throw ParseError("@grammar needs actions= or an @actions header", line_no, 1);
                bounds.actions = *alphabet;
            }
            grammar = GrammarSource{id, bounds};
            continue;
        }
        if (line.front() == '@') throw ParseError("unknown directive", line_no, 1);
        formula_lines.emplace_back(line_no, line);
    }

    if (grammar) {
        if (!formula_lines.empty())
            throw ParseError("explicit formulas cannot be mixed with @grammar", formula_lines.front().first, 1);
        return LanguageSpec::from_grammar(grammar->id, grammar->bounds);
    }
    FormulaSet set;
    for (const auto& [no, line] : formula_lines) {
        try {
            set.insert(parse_formula(line, alphabet));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")), no, e.column());
        }
    }
    return LanguageSpec::explicit_set(std::move(set), alphabet);
}

} // namespace hml
