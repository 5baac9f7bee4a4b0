#ifndef INCLUDED_CDX_ORACLE
#define INCLUDED_CDX_ORACLE

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cdx/cdawg.hpp"

namespace cdx {

/** All occurrence positions of `pattern` in `text`, ascending, by direct
 * O(nm) scanning. Throws EmptyPatternError on an empty pattern. */
std::vector<std::uint64_t> naive_search(std::string_view text,
                                        std::string_view pattern);

struct RepeatReport {
    std::vector<std::string> maximal_repeats;  // sorted, includes "" when maximal
    std::uint64_t er = 0;  // total right-extensions of maximal repeats
    std::uint64_t el = 0;  // total left-extensions of maximal repeats
};

/** Enumerates the maximal repeats of `text` by brute force, counting each
 * one's distinct right and left extensions (text boundaries count as unique
 * virtual contexts). Capped at 4096 characters; longer input throws
 * ScaleError. */
RepeatReport maximal_repeats(std::string_view text);

/** The CDAWG of `text` built the slow, obviously-correct way: suffix trie,
 * minimized by structural hashing, then unary chains compacted. Capped at
 * 512 characters; longer input throws ScaleError. */
Cdawg reference_cdawg(std::string_view text);

/** True when the two automata recognize identical edge-label trees: same
 * shape and same spelled labels under a canonical (label-ordered)
 * traversal. `text_a`/`text_b` spell out the interval labels. */
bool cdawg_isomorphic(const Cdawg& a, std::string_view text_a, const Cdawg& b,
                      std::string_view text_b);

}

#endif
