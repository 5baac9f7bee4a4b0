#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "cdx/repair.hpp"
#include "cdx/slg.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdx;
namespace th = cdx::testhelpers;

TEST_CASE("fixture grammar expands to the expected text") {
    Grammar g = th::fixture_grammar();
    CHECK(expand(g) == th::kFixtureText);
    CHECK(g.text_length() == 16);
    CHECK(g.total_size() == 13);
    CHECK(g.rule_count() == 4);
    CHECK(g.start_production().size() == 7);
    // terminals sit at depth 0; S -> rule1 -> rule3 is the deepest chain
    CHECK(g.height() == 2);
}

TEST_CASE("expansion lengths are memoized per symbol") {
    Grammar g = th::fixture_grammar();
    CHECK(g.expansion_length('A') == 1);
    CHECK(g.expansion_length(rule_symbol(1)) == 4);  // "GAGC"
    CHECK(g.expansion_length(rule_symbol(2)) == 2);
    CHECK(g.expansion_length(rule_symbol(0)) == 16);
}

TEST_CASE("from_text wraps raw bytes and appends the terminator") {
    Grammar g = Grammar::from_text("abc");
    CHECK(expand(g) == "abc$");
    CHECK(g.height() == 0);
    CHECK(g.rule_count() == 1);
    CHECK(expand(Grammar::from_text("")) == "$");
    CHECK(expand(Grammar::from_text("xyz$")) == "xyz$");
    CHECK_THROWS_AS(Grammar::from_text("ab$c"), TerminatorError);
}

TEST_CASE("from_rules rejects malformed tables") {
    using Rules = std::vector<std::vector<SymbolId>>;
    CHECK_THROWS_AS(Grammar::from_rules(Rules{}, 0), ValidationError);
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{'a', '$'}}, 5),
                    ValidationError);  // bad start id
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{}, {'a', '$'}}, 1),
                    ValidationError);  // empty production
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{rule_symbol(7), '$'}}, 0),
                    ValidationError);  // dangling reference
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{rule_symbol(0), '$'}}, 0),
                    CycleError);  // self-reference
    CHECK_THROWS_AS(
        Grammar::from_rules(Rules{{rule_symbol(1), '$'}, {rule_symbol(2)},
                                  {rule_symbol(1)}},
                            0),
        CycleError);  // two-rule cycle
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{'a', '$'}, {'b'}}, 0),
                    ValidationError);  // unreachable rule
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{'a', 'b'}}, 0),
                    TerminatorError);  // missing terminator
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{'$', 'a', '$'}}, 0),
                    TerminatorError);  // interior terminator
    CHECK_THROWS_AS(Grammar::from_rules(Rules{{'$', '$'}}, 0),
                    TerminatorError);
}

TEST_CASE("streamed expansion matches full expansion and supports early stop") {
    Grammar g = repair_compress(th::make_dna(5000, 1));
    std::string full = expand(g);
    ExpandStream stream(g);
    std::string streamed;
    std::uint8_t c;
    while (stream.next(c)) streamed.push_back(static_cast<char>(c));
    CHECK(streamed == full);
    CHECK(stream.produced() == full.size());

    ExpandStream partial(g);
    for (int i = 0; i < 10; ++i) CHECK(partial.next(c));
    CHECK(partial.produced() == 10);
}

TEST_CASE("binary and text round trips preserve the grammar") {
    for (Grammar g : {th::fixture_grammar(), Grammar::from_text("mississippi"),
                      repair_compress(th::fibonacci_word(15))}) {
        for (GrammarFormat f : {GrammarFormat::binary, GrammarFormat::text}) {
            std::stringstream buf;
            save_grammar(g, buf, f);
            Grammar back = load_grammar(buf, f);
            CHECK(back == g);
            CHECK(expand(back) == expand(g));
        }
    }
}

TEST_CASE("binary loader rejects malformed streams") {
    std::stringstream good;
    save_grammar(th::fixture_grammar(), good, GrammarFormat::binary);
    std::string bytes = good.str();

    std::stringstream bad_magic(std::string("XXXX") + bytes.substr(4));
    CHECK_THROWS_AS(load_grammar(bad_magic, GrammarFormat::binary),
                    FormatError);

    std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(load_grammar(truncated, GrammarFormat::binary),
                    FormatError);

    std::string zero = bytes.substr(0, 4);
    zero += std::string(4, '\0');  // rule_count = 0
    std::stringstream empty_table(zero);
    CHECK_THROWS_AS(load_grammar(empty_table, GrammarFormat::binary),
                    FormatError);
}

TEST_CASE("text loader rejects malformed streams") {
    std::stringstream junk("not a grammar\n");
    CHECK_THROWS_AS(load_grammar(junk, GrammarFormat::text), FormatError);
    std::stringstream bad_symbol("SLG 1\n1 0\nq13\n");
    CHECK_THROWS_AS(load_grammar(bad_symbol, GrammarFormat::text), FormatError);
}

namespace {

void put_i32(std::string& out, std::int32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

}  // namespace

TEST_CASE("external .C/.R pair imports into an equivalent grammar") {
    // alphabet {a, b}; rule 2 -> ab, rule 3 -> (2)(2); sequence (3)(2)b
    std::string r_bytes;
    put_i32(r_bytes, 2);
    r_bytes += "ab";
    put_i32(r_bytes, 0);
    put_i32(r_bytes, 1);
    put_i32(r_bytes, 2);
    put_i32(r_bytes, 2);
    std::string c_bytes;
    put_i32(c_bytes, 3);
    put_i32(c_bytes, 2);
    put_i32(c_bytes, 1);
    std::stringstream c_in(c_bytes), r_in(r_bytes);
    Grammar g = import_navarro(c_in, r_in);
    CHECK(expand(g) == "abababb$");
}
