#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cdx/matcher.hpp"
#include "cdx/oracle.hpp"
#include "cdx/repair.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdx;
namespace th = cdx::testhelpers;

namespace {

void check_queries(const th::Indexed& ix, const std::string& full,
                   const std::vector<std::string>& patterns) {
    AccessCounters counters;
    RandomAccessContext ctx{ix.grammar, ix.index, counters};
    for (const auto& pattern : patterns) {
        CAPTURE(pattern);
        auto expected = naive_search(full, pattern);
        CHECK(exists(ix.cdawg, ctx, pattern) == !expected.empty());
        CHECK(count(ix.cdawg, ctx, pattern) == expected.size());
        CHECK(locate(ix.cdawg, ctx, pattern) == expected);
    }
}

std::vector<std::string> sample_patterns(const std::string& full,
                                         std::mt19937_64& rng, int n) {
    std::vector<std::string> patterns;
    for (int i = 0; i < n; ++i) {
        std::size_t len = 1 + rng() % std::min<std::size_t>(12, full.size());
        std::size_t pos = rng() % (full.size() - len + 1);
        std::string p = full.substr(pos, len);
        switch (rng() % 3) {
            case 0: break;  // present substring
            case 1: p[rng() % p.size()] = static_cast<char>('a' + rng() % 4);
                    break;  // mutated
            default: p = th::random_text(len, 4, rng());  // random
        }
        patterns.push_back(std::move(p));
    }
    return patterns;
}

}  // namespace

TEST_CASE("fixture queries match the worked example") {
    th::Indexed ix = th::make_indexed(th::fixture_grammar());
    AccessCounters counters;
    RandomAccessContext ctx{ix.grammar, ix.index, counters};
    CHECK(count(ix.cdawg, ctx, "GC") == 4);
    CHECK(locate(ix.cdawg, ctx, "AGAGCG") ==
          std::vector<std::uint64_t>{0, 6});
    CHECK(exists(ix.cdawg, ctx, "GAGC"));
    CHECK_FALSE(exists(ix.cdawg, ctx, "TT"));
    CHECK(count(ix.cdawg, ctx, "ZZZ") == 0);
    CHECK(locate(ix.cdawg, ctx, "CC").empty());
}

TEST_CASE("whole-text and terminator-crossing patterns") {
    th::Indexed ix = th::make_indexed(th::fixture_grammar());
    AccessCounters counters;
    RandomAccessContext ctx{ix.grammar, ix.index, counters};
    CHECK(locate(ix.cdawg, ctx, th::kFixtureText) ==
          std::vector<std::uint64_t>{0});
    CHECK(locate(ix.cdawg, ctx, "C$") == std::vector<std::uint64_t>{14});
    CHECK(locate(ix.cdawg, ctx, "$") == std::vector<std::uint64_t>{15});
}

TEST_CASE("empty patterns are rejected") {
    th::Indexed ix = th::make_indexed(th::fixture_grammar());
    AccessCounters counters;
    RandomAccessContext ctx{ix.grammar, ix.index, counters};
    CHECK_THROWS_AS(exists(ix.cdawg, ctx, ""), EmptyPatternError);
    CHECK_THROWS_AS(count(ix.cdawg, ctx, ""), EmptyPatternError);
    CHECK_THROWS_AS(locate(ix.cdawg, ctx, ""), EmptyPatternError);
}

TEST_CASE("queries agree with direct scanning on random texts") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t len = 1 + rng() % 150;
        std::size_t alphabet = 1 + rng() % 4;
        std::string text = th::random_text(len, alphabet, rng());
        th::Indexed ix = th::make_indexed(Grammar::from_text(text));
        std::string full = text + "$";
        check_queries(ix, full, sample_patterns(full, rng, 25));
    }
}

TEST_CASE("queries agree with direct scanning on compressed corpora") {
    std::mt19937_64 rng(7);
    for (std::string text :
         {th::make_dna(4000, 1), th::make_english(4000, 2),
          th::periodic_text("abcab", 2000), th::fibonacci_word(16)}) {
        th::Indexed ix = th::make_indexed(repair_compress(text));
        std::string full = text + "$";
        check_queries(ix, full, sample_patterns(full, rng, 40));
    }
}

TEST_CASE("matching fetches at most the pattern length and locate none") {
    std::mt19937_64 rng(31);
    std::string text = th::make_dna(3000, 9);
    th::Indexed ix = th::make_indexed(repair_compress(text));
    std::string full = text + "$";
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t len = 1 + rng() % 40;
        std::size_t pos = rng() % (full.size() - len + 1);
        std::string pattern = full.substr(pos, len);

        AccessCounters counters;
        RandomAccessContext ctx{ix.grammar, ix.index, counters};
        MatchPoint mp;
        REQUIRE(find_point(ix.cdawg, ctx, pattern, mp));
        CHECK(counters.chars_decoded <= pattern.size());
        CHECK(mp.matched_len == pattern.size());

        // the traversal that enumerates occurrences must not touch the grammar
        std::uint64_t calls_after_find = counters.ra_calls;
        std::uint64_t decoded_after_find = counters.chars_decoded;
        auto occ = locate(ix.cdawg, ctx, pattern);
        CHECK(counters.ra_calls == 2 * calls_after_find);
        CHECK(counters.chars_decoded == 2 * decoded_after_find);
        CHECK(occ == naive_search(full, pattern));
    }
}

TEST_CASE("match points are normalized to nodes at edge boundaries") {
    th::Indexed ix = th::make_indexed(th::fixture_grammar());
    AccessCounters counters;
    RandomAccessContext ctx{ix.grammar, ix.index, counters};
    MatchPoint mp;
    REQUIRE(find_point(ix.cdawg, ctx, "GC", mp));  // "GC" is a maximal repeat
    CHECK(mp.at_node());
    // "AGA" always extends right with G, so it ends inside an edge
    REQUIRE(find_point(ix.cdawg, ctx, "AGA", mp));
    CHECK_FALSE(mp.at_node());
    CHECK(mp.offset > 0);
}
