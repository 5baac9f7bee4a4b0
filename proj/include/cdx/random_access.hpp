#ifndef INCLUDED_CDX_RANDOM_ACCESS
#define INCLUDED_CDX_RANDOM_ACCESS

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdx/slg.hpp"

namespace cdx {

/** Sorted (text position -> start-rule symbol) map: positions[k] is where
 * the expansion of the k-th start-rule symbol begins. Immutable after
 * build; safe for concurrent readers. */
struct PositionIndex {
    std::vector<std::uint64_t> positions;  // strictly increasing, first is 0
    std::vector<SymbolId> symbols;         // parallel start-rule symbols
    std::uint64_t text_len = 0;

    /** Index of the start-rule symbol whose expansion covers position i. */
    std::size_t covering(std::uint64_t i) const;
};

PositionIndex build_position_index(const Grammar& g);

/** Single-character cache with first-in-first-out eviction; a hit does not
 * refresh an entry's age. Capacity 0 disables caching. */
class FifoCache {
public:
    static constexpr std::size_t kDefaultCapacity = 65536;

    explicit FifoCache(std::size_t capacity = kDefaultCapacity)
        : capacity_(capacity) {}

    bool lookup(std::uint64_t pos, std::uint8_t& out) const {
        auto it = map_.find(pos);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }

    void insert(std::uint64_t pos, std::uint8_t c) {
        if (capacity_ == 0 || map_.count(pos)) return;
        if (map_.size() == capacity_) {
            map_.erase(queue_.front());
            queue_.pop_front();
        }
        map_.emplace(pos, c);
        queue_.push_back(pos);
    }

    std::size_t size() const { return map_.size(); }
    std::size_t capacity() const { return capacity_; }

private:
    std::size_t capacity_;
    std::unordered_map<std::uint64_t, std::uint8_t> map_;
    std::deque<std::uint64_t> queue_;
};

/** Per-session instrumentation; resettable between queries. */
struct AccessCounters {
    std::uint64_t ra_calls = 0;       // public access operations issued
    std::uint64_t chars_decoded = 0;  // characters materialized from the grammar
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;

    void reset() { *this = AccessCounters{}; }
};

/** T[i..j], both bounds inclusive. Binary-searches the covering start-rule
 * symbol, descends by memoized expansion lengths past the characters before
 * i, then streams j - i + 1 characters. */
std::string access_range(const PositionIndex& idx, const Grammar& g,
                         std::uint64_t i, std::uint64_t j,
                         AccessCounters& counters);

/** Appending variant of access_range, for callers reusing a buffer. */
void access_range(const PositionIndex& idx, const Grammar& g,
                  std::uint64_t i, std::uint64_t j, AccessCounters& counters,
                  std::string& out);

/** T[i] through the cache; a miss decodes the character and inserts it. */
std::uint8_t access_char(const PositionIndex& idx, const Grammar& g,
                         std::uint64_t i, FifoCache& cache,
                         AccessCounters& counters);

/** Grammar + index + counters bundled for query-side callers that need
 * random access but no cache. */
struct RandomAccessContext {
    const Grammar& grammar;
    const PositionIndex& index;
    AccessCounters& counters;

    void range(std::uint64_t i, std::uint64_t j, std::string& out) const {
        access_range(index, grammar, i, j, counters, out);
    }
};

}

#endif
