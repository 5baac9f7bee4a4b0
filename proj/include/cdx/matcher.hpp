#ifndef INCLUDED_CDX_MATCHER
#define INCLUDED_CDX_MATCHER

#include <cstdint>
#include <string_view>
#include <vector>

#include "cdx/cdawg.hpp"
#include "cdx/random_access.hpp"

namespace cdx {

/** Where a matched pattern ends inside the automaton. A match that consumes
 * an edge completely is normalized to its target node (edge == kNoNode,
 * offset == 0). */
struct MatchPoint {
    std::uint32_t edge = kNoNode;  // id of the edge matched into, if partial
    std::uint32_t node = kNoNode;  // current node, or the partial edge's target
    std::uint64_t offset = 0;      // label characters consumed on that edge
    std::uint64_t matched_len = 0;

    bool at_node() const { return edge == kNoNode; }
};

/** Walks the pattern from the source. Branching is decided by the memoized
 * first character of each edge; the rest of an edge's label is fetched with
 * a single range access, and only when the pattern still has characters to
 * compare against it. Returns false when the pattern does not occur. */
bool find_point(const Cdawg& c, const RandomAccessContext& ctx,
                std::string_view pattern, MatchPoint& out);

bool exists(const Cdawg& c, const RandomAccessContext& ctx,
            std::string_view pattern);

/** Number of occurrences, from the precomputed path counts: zero grammar
 * access beyond what find_point itself needs. */
std::uint64_t count(const Cdawg& c, const RandomAccessContext& ctx,
                    std::string_view pattern);

/** All starting positions, sorted ascending. Enumerates the paths from the
 * match point to the sink; a path with r label characters left places the
 * occurrence at n - m - r. No grammar access past find_point. */
std::vector<std::uint64_t> locate(const Cdawg& c,
                                  const RandomAccessContext& ctx,
                                  std::string_view pattern);

}

#endif
