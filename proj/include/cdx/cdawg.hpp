#ifndef INCLUDED_CDX_CDAWG
#define INCLUDED_CDX_CDAWG

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cdx/random_access.hpp"
#include "cdx/slg.hpp"

namespace cdx {

constexpr std::uint32_t kNoNode = 0xFFFFFFFFu;

struct CdawgEdge {
    std::uint32_t target;
    std::uint64_t start;  // label = T[start..end], inclusive
    std::uint64_t end;
    std::uint8_t first_char;  // memoized T[start]

    std::uint64_t label_length() const { return end - start + 1; }
};

struct CdawgNode {
    std::uint64_t len;    // length of the longest string in the class
    std::uint64_t count;  // paths to the sink, filled by compute_counts
    std::vector<std::uint32_t> edges;  // edge ids, sorted by first_char
};

struct CdawgStats {
    std::uint64_t nodes;
    std::uint64_t edges;  // = er(T)
    std::uint64_t source_out_degree;
};

/** The compact DAWG of a string, with edge labels stored as position
 * intervals into the produced text. Immutable after construction. */
struct Cdawg {
    std::vector<CdawgNode> nodes;  // ids dense, in creation order
    std::vector<CdawgEdge> edges;
    std::uint32_t source = 0;
    std::uint32_t sink = 0;
    std::uint64_t text_len = 0;

    /** The out-edge of `node` whose label starts with `c`, or nullptr.
     * Distinct by CDAWG determinism. */
    const CdawgEdge* find_edge(std::uint32_t node, std::uint8_t c) const;

    CdawgStats stats() const {
        return {nodes.size(), edges.size(), nodes[source].edges.size()};
    }
};

/** Incremental CDAWG construction: push one character at a time, in text
 * order. Comparisons against characters already pushed go through the
 * supplied callback, which is only ever invoked for positions strictly
 * below the number of characters consumed so far. */
class CdawgBuilder {
public:
    using CharAt = std::function<std::uint8_t(std::uint64_t)>;

    explicit CdawgBuilder(CharAt char_at);
    ~CdawgBuilder();
    CdawgBuilder(const CdawgBuilder&) = delete;
    CdawgBuilder& operator=(const CdawgBuilder&) = delete;

    void push(std::uint8_t c);
    std::uint64_t consumed() const;

    /** Closes open edges, drops suffix links and unreachable nodes,
     * renumbers nodes in creation order, and computes path counts. */
    Cdawg finish();

private:
    struct Impl;
    Impl* impl_;
};

/** Builds the CDAWG of the grammar's produced string by consuming its
 * expansion left to right; already-indexed characters are re-read through
 * access_char with the given cache. The expansion must end in a single
 * terminator (guaranteed for validated grammars). */
Cdawg build_cdawg(const Grammar& g, const PositionIndex& idx,
                  FifoCache& cache, AccessCounters& counters);

/** Fills per-node path-to-sink counts in one reverse-topological pass;
 * count(source) equals the text length. */
void compute_counts(Cdawg& c);

/** CDG1 binary round trip. */
void serialize_cdawg(const Cdawg& c, std::ostream& out);
Cdawg deserialize_cdawg(std::istream& in);

}

#endif
