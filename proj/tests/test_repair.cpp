#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>
#include <sstream>

#include "cdx/repair.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdx;
namespace th = cdx::testhelpers;

namespace {

/** Non-overlapping left-to-right pair counts, recomputed from scratch. */
std::map<std::pair<SymbolId, SymbolId>, std::uint64_t> recount(
    const std::vector<SymbolId>& s) {
    std::map<std::pair<SymbolId, SymbolId>, std::uint64_t> counts;
    for (std::size_t i = 0; i + 1 < s.size();) {
        ++counts[{s[i], s[i + 1]}];
        if (s[i] == s[i + 1] && i + 2 < s.size() && s[i + 2] == s[i]) {
            i += 2;
        } else {
            i += 1;
        }
    }
    return counts;
}

void roundtrip(const std::string& text) {
    CAPTURE(text);
    Grammar g = repair_compress(text);
    CHECK(expand(g) == text + "$");
}

}  // namespace

TEST_CASE("compression inverts to the original text") {
    roundtrip("");
    roundtrip("a");
    roundtrip("ab");
    roundtrip("aa");
    roundtrip("aaa");
    roundtrip("aaaa");
    roundtrip("aaaaaaaaaaaaaaaaa");
    roundtrip("abababababab");
    roundtrip("aabaab");
    roundtrip("baaa");
    roundtrip("mississippi");
    roundtrip(th::fibonacci_word(17));
    roundtrip(th::periodic_text("xyz", 1000));
    roundtrip(th::make_dna(5000, 3));
    roundtrip(th::make_english(5000, 4));
    roundtrip(th::with_runs(th::make_dna(2000, 5), 100, 5, 'N', 6));
}

TEST_CASE("compression inverts on random texts") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t len = rng() % 400;
        std::size_t alphabet = 1 + rng() % 5;
        roundtrip(th::random_text(len, alphabet, rng()));
    }
}

TEST_CASE("terminator in the input is rejected") {
    CHECK_THROWS_AS(repair_compress("ab$cd"), TerminatorError);
    CHECK_THROWS_AS(repair_compress("$"), TerminatorError);
}

TEST_CASE("internal pair counts stay exact after every pass") {
    RepairHooks hooks;
    std::uint32_t passes = 0;
    hooks.after_pass = [&](std::uint32_t, SymbolId,
                           const std::vector<SymbolId>& sequence,
                           const std::map<std::pair<SymbolId, SymbolId>,
                                          std::uint64_t>& counts) {
        ++passes;
        CHECK(counts == recount(sequence));
    };
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t len = 20 + rng() % 300;
        std::size_t alphabet = 1 + rng() % 3;
        repair_compress(th::random_text(len, alphabet, rng()), hooks);
    }
    repair_compress(th::fibonacci_word(15), hooks);
    repair_compress(th::periodic_text("aab", 500), hooks);
    repair_compress(std::string(300, 'a'), hooks);
    CHECK(passes > 50);
}

TEST_CASE("every replaced pair occurred at least twice") {
    RepairHooks hooks;
    hooks.after_pass = [&](std::uint32_t, SymbolId new_symbol,
                           const std::vector<SymbolId>& sequence,
                           const std::map<std::pair<SymbolId, SymbolId>,
                                          std::uint64_t>&) {
        std::uint64_t uses = 0;
        for (SymbolId s : sequence) uses += (s == new_symbol);
        CHECK(uses >= 2);  // still present: later passes have not run yet
    };
    repair_compress(th::make_dna(2000, 21), hooks);
}

TEST_CASE("compression is deterministic") {
    std::string text = th::make_english(3000, 8);
    Grammar a = repair_compress(text);
    Grammar b = repair_compress(text);
    CHECK(a == b);
    std::stringstream sa, sb;
    save_grammar(a, sa, GrammarFormat::binary);
    save_grammar(b, sb, GrammarFormat::binary);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("repetitive input compresses well") {
    std::string text = th::periodic_text("abcdefgh", 8192);
    Grammar g = repair_compress(text);
    CHECK(g.total_size() < text.size() / 10);
    CHECK(g.height() >= 3);
}
