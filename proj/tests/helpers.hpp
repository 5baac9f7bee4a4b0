#ifndef INCLUDED_CDX_TEST_HELPERS
#define INCLUDED_CDX_TEST_HELPERS

#include <random>
#include <string>
#include <vector>

#include "cdx/cdawg.hpp"
#include "cdx/random_access.hpp"
#include "cdx/slg.hpp"

namespace cdx::testhelpers {

/** The four-rule grammar for "AGAGCGAGAGCGCGC$": S -> A a b a g g $,
 * a -> b g, b -> G A, g -> G C. */
inline Grammar fixture_grammar() {
    std::vector<std::vector<SymbolId>> rules = {
        {'A', 257, 258, 257, 259, 259, '$'},  // S (rule 0)
        {258, 259},                           // rule 1
        {'G', 'A'},                           // rule 2
        {'G', 'C'},                           // rule 3
    };
    return Grammar::from_rules(std::move(rules), 0);
}

inline const std::string kFixtureText = "AGAGCGAGAGCGCGC$";

/** Fibonacci words: f_1 = "b", f_2 = "a", f_k = f_{k-1} f_{k-2}. */
inline std::string fibonacci_word(int k) {
    std::string prev = "b", cur = "a";
    if (k == 1) return prev;
    for (int i = 2; i < k; ++i) {
        std::string next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline std::string random_text(std::size_t len, std::size_t alphabet,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(static_cast<char>('a' + rng() % alphabet));
    }
    return out;
}

/** Repetitive DNA-like text: a fixed block copied with point mutations. */
inline std::string make_dna(std::size_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const char alpha[] = {'A', 'C', 'G', 'T'};
    std::string block;
    for (int i = 0; i < 211; ++i) block.push_back(alpha[rng() % 4]);
    std::string out;
    out.reserve(len + block.size());
    while (out.size() < len) {
        std::string copy = block;
        if (rng() % 3 == 0) copy[rng() % copy.size()] = alpha[rng() % 4];
        out += copy;
    }
    out.resize(len);
    return out;
}

/** English-like text: words sampled from a small vocabulary. */
inline std::string make_english(std::size_t len, std::uint64_t seed) {
    static const char* kWords[] = {"the",  "quick", "brown", "fox",  "jumps",
                                   "over", "a",     "lazy",  "dog",  "and",
                                   "then", "sleeps", "under", "warm", "sun"};
    std::mt19937_64 rng(seed);
    std::string out;
    out.reserve(len + 8);
    while (out.size() < len) {
        out += kWords[rng() % (sizeof(kWords) / sizeof(kWords[0]))];
        out.push_back(' ');
    }
    out.resize(len);
    return out;
}

inline std::string periodic_text(const std::string& unit, std::size_t len) {
    std::string out;
    out.reserve(len + unit.size());
    while (out.size() < len) out += unit;
    out.resize(len);
    return out;
}

/** Inserts `count` runs, each `run_len` copies of `ch`, at random offsets. */
inline std::string with_runs(std::string text, std::size_t run_len,
                             std::size_t count, char ch, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        text.insert(rng() % (text.size() + 1), std::string(run_len, ch));
    }
    return text;
}

/** A grammar with its query-side structures built. */
struct Indexed {
    Grammar grammar;
    PositionIndex index;
    FifoCache cache;
    AccessCounters build_counters;
    Cdawg cdawg;
};

inline Indexed make_indexed(Grammar g,
                            std::size_t cache_capacity =
                                FifoCache::kDefaultCapacity) {
    Indexed out{std::move(g), {}, FifoCache(cache_capacity), {}, {}};
    out.index = build_position_index(out.grammar);
    out.cdawg =
        build_cdawg(out.grammar, out.index, out.cache, out.build_counters);
    return out;
}

}

#endif
