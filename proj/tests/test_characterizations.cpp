#include <doctest.h>

#include "hml/characterizations.hpp"
#include "hml/errors.hpp"
#include "hml/language.hpp"
#include "hml/parse.hpp"

using namespace hml;

namespace {

Formula f(const char* text) { return parse_formula(text); }
const ActionSet ab{"a", "b"};

CharacterizationId id(CharKind k, int n = 2) { return CharacterizationId{k, n}; }

} // namespace

TEST_SUITE("characterizations")
{
    TEST_CASE("names")
    {
        std::vector<std::string> names;
        for (const auto& c : standard_characterizations()) names.push_back(c.name());
        CHECK(names == std::vector<std::string>{"T", "CT", "CT*", "F", "R", "FT", "RT", "1S", "RS", "2S", "B"});
        CHECK(CharacterizationId::parse("CTstar") == id(CharKind::CTStar));
        CHECK(CharacterizationId::parse("3S") == id(CharKind::NS, 3));
        CHECK(CharacterizationId::parse("nS", 4) == id(CharKind::NS, 4));
        CHECK_THROWS_AS((void)CharacterizationId::parse("XYZ"), std::invalid_argument);
    }

    TEST_CASE("recognizers")
    {
        CHECK(recognize(id(CharKind::T), f("<a><b>T"), ab));
        CHECK(recognize(id(CharKind::CT), f("~<a>T & ~<b>T"), ab));
        CHECK(recognize(id(CharKind::CT), f("<a>(~<b>T & ~<a>T)"), ab));
        CHECK_FALSE(recognize(id(CharKind::CT), f("~<a>T"), ab));
        CHECK(recognize(id(CharKind::CTStar), f("~<a>T"), ab));
        CHECK_FALSE(recognize(id(CharKind::CTStar), f("<a>~<a>T"), ab));
        CHECK(recognize(id(CharKind::RS), f("~<a>T"), ab));
        CHECK_FALSE(recognize(id(CharKind::S1), f("~<a>T"), ab));
        CHECK(recognize(id(CharKind::S1), f("<a>(<a>T & <b>T)"), ab));
        CHECK(recognize(id(CharKind::F), f("<a>(~<a>T & ~<b>T)"), ab));
        CHECK_FALSE(recognize(id(CharKind::F), f("<a>(<a>T & ~<b>T)"), ab));
        CHECK(recognize(id(CharKind::R), f("<a>(<a>T & ~<b>T)"), ab));
        CHECK(recognize(id(CharKind::FT), f("~<a>T & <b>~<a>T"), ab));
        CHECK_FALSE(recognize(id(CharKind::FT), f("<a>T & <b>T"), ab));
        CHECK(recognize(id(CharKind::RT), f("<a>T & <b>~<a>T"), ab));
        CHECK(recognize(id(CharKind::NS), f("~<a><b>T"), ab));
        CHECK_FALSE(recognize(id(CharKind::NS), f("~<a>~<b>T"), ab));
        CHECK(recognize(id(CharKind::NS, 3), f("~<a>~<b>T"), ab));
        CHECK(recognize(id(CharKind::B), f("~<a>~<b>T & <a>T"), ab));
    }

    TEST_CASE("enumeration examples")
    {
        auto t = enumerate(id(CharKind::T), {{"a"}, 2, 2});
        CHECK(t == FormulaSet{f("T"), f("<a>T"), f("<a><a>T")});

        auto ct = enumerate(id(CharKind::CT), {ab, 1, 2});
        CHECK(ct.contains(f("~<a>T & ~<b>T")));
        CHECK(ct.contains(f("<a>T")));

        auto b = enumerate(id(CharKind::B), {{"a"}, 1, 1});
        for (const char* x : {"T", "<a>T", "~<a>T", "~~<a>T"}) CHECK(b.contains(f(x)));
        CHECK_THROWS_AS((void)enumerate(id(CharKind::B), {{"a", "b", "c", "d"}, 3, 3}), CapError);
    }

    TEST_CASE("soundness, bounded completeness and monotone growth")
    {
        auto pool = enumerate_hml(ab, 2, 2, 8, true);
        for (const auto& c : standard_characterizations()) {
            CAPTURE(c.name());
            auto small = enumerate(c, {ab, 1, 2});
            auto big = enumerate(c, {ab, 2, 2});
            for (const auto& [k, x] : big) CHECK(recognize(c, x, ab));
            for (const auto& [k, x] : small) CHECK(big.contains_key(k));
            if (c.kind == CharKind::B) continue;  // B enumeration is a fragment
            for (const auto& x : pool)
                if (recognize(c, x, ab) && widest_conjunction(x) <= 2) CHECK(big.contains(x));
        }
    }

    TEST_CASE("spectrum refinement")
    {
        CHECK(spectrum_refinement_check(id(CharKind::T), id(CharKind::B), {ab, 2, 2}, 2, 2).holds);
        CHECK(spectrum_refinement_check(id(CharKind::F), id(CharKind::R), {ab, 2, 2}, 2, 2).holds);
        auto r = spectrum_refinement_check(id(CharKind::CT), id(CharKind::T), {ab, 2, 2}, 2, 2);
        CHECK_FALSE(r.holds);
        REQUIRE(r.witness.has_value());
        // The witness is trace equivalent but not completed-trace equivalent;
        // so is the textbook pair a.0 + a.b.0 / a.b.0.
        Language t{LanguageSpec::from_grammar(id(CharKind::T), {ab, 2, 2})};
        Language ct{LanguageSpec::from_grammar(id(CharKind::CT), {ab, 2, 2})};
        for (auto [x, y] : {*r.witness, std::pair{parse_process("a.0 + a.b.0"), parse_process("a.b.0")}}) {
            CHECK_FALSE(equiv_under(x, y, t).has_value());
            CHECK(equiv_under(x, y, ct).has_value());
        }
        REQUIRE(r.distinguishing.has_value());
        CHECK(recognize(id(CharKind::CT), *r.distinguishing, ab));
        auto again = spectrum_refinement_check(id(CharKind::CT), id(CharKind::T), {ab, 2, 2}, 2, 2);
        CHECK(again.witness == r.witness);
    }

    TEST_CASE("completed trace star is conservative")
    {
        auto ct = enumerate(id(CharKind::CT), {ab, 2, 2});
        auto cts = enumerate(id(CharKind::CTStar), {ab, 2, 2});
        CHECK(cts.size() > ct.size());
        auto r = spectrum_refinement_check(id(CharKind::CTStar), id(CharKind::CT), {ab, 2, 2}, 2, 2);
        CHECK(r.holds);
        auto s = spectrum_refinement_check(id(CharKind::CT), id(CharKind::CTStar), {ab, 2, 2}, 2, 2);
        CHECK(s.holds);
    }
}
