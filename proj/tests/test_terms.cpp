#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hml/errors.hpp"
#include "hml/parse.hpp"
#include "hml/process.hpp"
#include "hml/sat.hpp"
#include "hml/tree_store.hpp"

using namespace hml;

namespace {

using Trace = std::vector<Action>;

// Traces read straight off `step`, including the empty trace.
std::set<Trace> traces(const Term& p)
{
    std::set<Trace> out{{}};
    for (const auto& t : step(p))
        for (auto tail : traces(t.target)) {
            tail.insert(tail.begin(), t.action);
            out.insert(tail);
        }
    return out;
}

// Canonical text of a tree from its serialized children, built without
// TreeStore: children are sorted and deduplicated.
std::string canon(std::vector<std::pair<Action, std::string>> kids)
{
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    std::string s = "(";
    for (const auto& [a, t] : kids) s += a + t + ",";
    return s + ")";
}

// Brute force: all trees of depth <= d, branching <= k, up to set semantics.
std::set<std::string> brute_trees(const std::vector<Action>& alphabet, int d, int k)
{
    if (d == 0) return {canon({})};
    auto smaller = brute_trees(alphabet, d - 1, k);
    std::vector<std::pair<Action, std::string>> options;
    for (const auto& a : alphabet)
        for (const auto& t : smaller) options.emplace_back(a, t);
    std::set<std::string> out;
    std::vector<std::pair<Action, std::string>> chosen;
    // Multisets of size <= k; duplicates collapse inside canon.
    std::function<void(std::size_t)> go = [&](std::size_t from) {
        out.insert(canon(chosen));
        if (static_cast<int>(chosen.size()) == k) return;
        for (std::size_t i = from; i < options.size(); ++i) {
            chosen.push_back(options[i]);
            go(i);
            chosen.pop_back();
        }
    };
    go(0);
    return out;
}

std::string canon_of(const Term& p)
{
    std::vector<std::pair<Action, std::string>> kids;
    for (const auto& t : step(p)) kids.emplace_back(t.action, canon_of(t.target));
    return canon(kids);
}

std::vector<std::pair<Action, std::string>> step_set(const Term& p)
{
    std::vector<std::pair<Action, std::string>> out;
    for (const auto& t : step(p)) out.emplace_back(t.action, canon_of(t.target));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

TEST_SUITE("terms")
{
    TEST_CASE("transition rules")
    {
        Term a0 = Term::prefix("a", Term::nil());
        auto s = step(a0);
        REQUIRE(s.size() == 1);
        CHECK(s[0].action == "a");
        CHECK(s[0].target == Term::nil());

        CHECK(step(Term::proj(0, a0)).empty());

        Term ab = parse_process("theta[a>b](a.0 + b.0)");
        s = step(ab);
        REQUIRE(s.size() == 1);
        CHECK(s[0].action == "a");
        CHECK(s[0].target == Term::priority(parse_priority("a>b"), Term::nil()));

        s = step(parse_process("enc{b}(a.b.0)"));
        REQUIRE(s.size() == 1);
        CHECK(s[0].action == "a");
        CHECK(s[0].target == parse_process("enc{b}(b.0)"));
        CHECK(step(s[0].target).empty());
    }

    TEST_CASE("priority order is a strict partial order")
    {
        PriorityOrder o = parse_priority("a>b,b>c");
        CHECK(o.higher("a", "c"));
        CHECK_FALSE(o.higher("c", "a"));
        CHECK_THROWS_AS((void)parse_priority("a>b,b>a"), ParseError);
        CHECK_THROWS_AS(PriorityOrder(std::vector<std::pair<Action, Action>>{{"a", "b"}, {"b", "a"}}), std::invalid_argument);
        CHECK_THROWS((void)parse_priority("a>a"));
    }

    TEST_CASE("lts construction")
    {
        Lts nil = to_lts(Term::nil());
        CHECK(nil.states.size() == 1);
        CHECK(nil.transitions.empty());

        Lts ab = to_lts(parse_process("a.0 + b.0"));
        CHECK(ab.transitions.size() == 2);
        for (const auto& e : ab.transitions) CHECK(e.source == ab.root);

        // Shuffle oracle for a.a.0 || b.0.
        Term p = parse_process("a.a.0 || b.0");
        std::set<Trace> expected{{}, {"a"}, {"b"}, {"a", "a"}, {"a", "b"}, {"b", "a"},
                                 {"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "a"}};
        CHECK(traces(p) == expected);
        CHECK(lts_depth(to_lts(p)) == 3);

        std::string dot = to_dot(ab);
        CHECK(dot.find("digraph") != std::string::npos);
        CHECK(dot.find("a.0 + b.0") != std::string::npos);
    }

    TEST_CASE("state cap")
    {
        Term p = parse_process("a.a.a.0 || b.b.b.0 || c.c.c.0");
        CHECK_THROWS_AS((void)to_lts(p, 10), CapError);
        CHECK_NOTHROW((void)to_lts(p));
    }

    TEST_CASE("enumeration edge cases")
    {
        auto zero = enumerate_processes({"a"}, 0, 3);
        REQUIRE(zero.size() == 1);
        CHECK(zero[0] == Term::nil());

        auto one = enumerate_processes({"a"}, 1, 1);
        REQUIRE(one.size() == 2);
        CHECK(one[0] == Term::nil());
        CHECK(one[1] == parse_process("a.0"));
    }

    TEST_CASE("enumeration matches brute force")
    {
        // Set semantics: {a,b}, depth 1, branch 2 gives 0, a.0, b.0, a.0 + b.0.
        CHECK(enumerate_processes({"a", "b"}, 1, 2).size() == 4);
        for (auto [alphabet, d, k] : std::vector<std::tuple<std::vector<Action>, int, int>>{
                 {{"a", "b"}, 1, 2}, {{"a", "b"}, 2, 2}, {{"a"}, 3, 2}, {{"a", "b", "c"}, 2, 1}, {{"a", "b"}, 3, 2}}) {
            ActionSet set(alphabet.begin(), alphabet.end());
            auto expected = brute_trees(alphabet, d, k);
            auto terms = enumerate_processes(set, d, k);
            std::set<std::string> got;
            for (const auto& t : terms) got.insert(canon_of(t));
            CHECK(got.size() == terms.size());
            CHECK(got == expected);
        }
    }

    TEST_CASE("tree property and choice symmetry")
    {
        auto terms = enumerate_processes({"a", "b"}, 2, 2);
        for (const auto& p : terms) {
            Lts l = to_lts(p);
            CHECK(lts_depth(l) == p.syntactic_depth());
        }
        for (std::size_t i = 0; i < terms.size(); i += 3)
            for (std::size_t j = 0; j < terms.size(); j += 5) {
                Term l = Term::choice(terms[i], terms[j]), r = Term::choice(terms[j], terms[i]);
                CHECK(canon_of(l) == canon_of(r));
                CHECK(to_lts(l).states.size() == to_lts(r).states.size());
            }
    }

    TEST_CASE("parallel is the sum of left merges")
    {
        auto terms = enumerate_processes({"a", "b"}, 2, 2);
        for (std::size_t i = 0; i < terms.size(); i += 2)
            for (std::size_t j = 0; j < terms.size(); j += 3) {
                const Term &p = terms[i], &q = terms[j];
                auto both = step_set(Term::left_merge(p, q));
                auto other = step_set(Term::left_merge(q, p));
                both.insert(both.end(), other.begin(), other.end());
                std::sort(both.begin(), both.end());
                both.erase(std::unique(both.begin(), both.end()), both.end());
                CHECK(step_set(Term::par(p, q)) == both);
            }
    }

    TEST_CASE("encapsulation and projection on traces")
    {
        auto terms = enumerate_processes({"a", "b"}, 3, 2);
        for (std::size_t i = 0; i < terms.size(); i += 7) {
            const Term& p = terms[i];
            auto tp = traces(p);
            for (const ActionSet& B : std::vector<ActionSet>{{}, {"a"}, {"b"}, {"a", "b"}}) {
                std::set<Trace> expected;
                for (const auto& t : tp)
                    if (std::none_of(t.begin(), t.end(), [&](const Action& a) { return B.count(a) != 0; }))
                        expected.insert(t);
                CHECK(traces(Term::encap(B, p)) == expected);
            }
            for (int n = 0; n <= 3; ++n) {
                std::set<Trace> expected;
                for (const auto& t : tp)
                    if (static_cast<int>(t.size()) <= n) expected.insert(t);
                CHECK(traces(Term::proj(n, p)) == expected);
            }
        }
    }

    TEST_CASE("tree store operators agree with term semantics")
    {
        TreeStore store;
        auto states = enumerate_states(store, {"a", "b"}, 2, 2);
        PriorityOrder order = parse_priority("a>b");
        std::vector<ActionId> blocked{store.action_id("b")};
        for (std::size_t i = 0; i < states.size(); i += 2)
            for (std::size_t j = 0; j < states.size(); j += 5) {
                Term p = store.term(states[i]), q = store.term(states[j]);
                CHECK(store.parallel(states[i], states[j]) == store.from_term(Term::par(p, q)));
                CHECK(store.choice(states[i], states[j]) == store.from_term(Term::choice(p, q)));
            }
        for (auto s : states) {
            Term p = store.term(s);
            CHECK(store.from_term(p) == s);
            CHECK(store.project(1, s) == store.from_term(Term::proj(1, p)));
            CHECK(store.encapsulate(blocked, s) == store.from_term(Term::encap({"b"}, p)));
            CHECK(store.prioritize(order, s) == store.from_term(Term::priority(order, p)));
        }
    }

    TEST_CASE("process parser")
    {
        CHECK(parse_process("a.0 + b.0") == Term::choice(parse_process("a.0"), parse_process("b.0")));
        CHECK(parse_process("pi[1](a.a.0)") == Term::proj(1, Term::prefix("a", Term::prefix("a", Term::nil()))));
        CHECK(parse_process("a.0 + b.0 + c.0") ==
              Term::choice(Term::choice(parse_process("a.0"), parse_process("b.0")), parse_process("c.0")));
        CHECK(parse_process("lmerge(a.0, b.0)") == Term::left_merge(parse_process("a.0"), parse_process("b.0")));
        CHECK_THROWS_AS((void)parse_process("a.("), ParseError);
        CHECK_THROWS_AS((void)parse_process("a.0 +"), ParseError);
        CHECK_THROWS_AS((void)parse_process("c.0", ActionSet{"a", "b"}), ParseError);
        CHECK_THROWS((void)parse_process("theta[a>a](a.0)"));
        try {
            (void)parse_process("a.0 +\n  ?");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() == 3);
        }
    }

    TEST_CASE("process round trip")
    {
        for (const char* text : {"0", "a.0 + b.0", "a.(b.0 + c.0)", "pi[2](a.a.0 || b.0)", "enc{a,b}(a.b.0 + c.0)",
                                 "theta[a>b,b>c](a.0 + b.c.0)", "lmerge(a.0, b.0) + (a.0 || b.0)",
                                 "(a.0 + b.0) || (c.0 + d.0)"}) {
            Term p = parse_process(text);
            CHECK(parse_process(to_string(p)) == p);
        }
        for (const auto& p : enumerate_processes({"a", "b"}, 3, 2)) CHECK(parse_process(to_string(p)) == p);
    }
}
