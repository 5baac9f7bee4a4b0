#include "cdx/random_access.hpp"

#include <algorithm>
#include <cassert>

namespace cdx {

std::size_t PositionIndex::covering(std::uint64_t i) const {
    assert(i < text_len);
    auto it = std::upper_bound(positions.begin(), positions.end(), i);
    return static_cast<std::size_t>(it - positions.begin()) - 1;
}

PositionIndex build_position_index(const Grammar& g) {
    PositionIndex idx;
    const auto& start = g.start_production();
    idx.positions.reserve(start.size());
    idx.symbols.reserve(start.size());
    std::uint64_t pos = 0;
    for (SymbolId s : start) {
        idx.positions.push_back(pos);
        idx.symbols.push_back(s);
        pos += g.expansion_length(s);
    }
    idx.text_len = pos;
    return idx;
}

namespace {

/** Emits the expansion of symbol s, minus the first `skip` characters,
 * until `remaining` hits zero. Subtrees wholly inside the skipped prefix
 * are stepped over by expansion length and never decoded. */
void emit_symbol(const Grammar& g, SymbolId s, std::uint64_t& skip,
                 std::uint64_t& remaining, std::string& out,
                 std::uint64_t& decoded,
                 std::vector<std::pair<std::uint32_t, std::uint64_t>>& stack) {
    if (remaining == 0) return;
    if (is_terminal(s)) {
        if (skip > 0) {
            --skip;
        } else {
            out.push_back(static_cast<char>(terminal_byte(s)));
            ++decoded;
            --remaining;
        }
        return;
    }
    stack.clear();
    stack.emplace_back(rule_id(s), 0);
    while (!stack.empty() && remaining > 0) {
        auto& [rule, pos] = stack.back();
        const auto& production = g.rule(rule);
        if (pos == production.size()) {
            stack.pop_back();
            continue;
        }
        SymbolId child = production[pos++];
        if (is_terminal(child)) {
            if (skip > 0) {
                --skip;
            } else {
                out.push_back(static_cast<char>(terminal_byte(child)));
                ++decoded;
                --remaining;
            }
            continue;
        }
        std::uint64_t len = g.expansion_length(child);
        if (skip >= len) {
            skip -= len;
            continue;
        }
        stack.emplace_back(rule_id(child), 0);
    }
}

}  // namespace

void access_range(const PositionIndex& idx, const Grammar& g,
                  std::uint64_t i, std::uint64_t j, AccessCounters& counters,
                  std::string& out) {
    if (i > j || j >= idx.text_len) {
        throw OutOfBoundsError("access_range(" + std::to_string(i) + ", " +
                               std::to_string(j) + ") outside text of length " +
                               std::to_string(idx.text_len));
    }
    ++counters.ra_calls;
    std::size_t k = idx.covering(i);
    std::uint64_t skip = i - idx.positions[k];
    std::uint64_t remaining = j - i + 1;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> stack;
    stack.reserve(g.height() + 1);
    while (remaining > 0) {
        emit_symbol(g, idx.symbols[k], skip, remaining, out,
                    counters.chars_decoded, stack);
        ++k;
    }
}

std::string access_range(const PositionIndex& idx, const Grammar& g,
                         std::uint64_t i, std::uint64_t j,
                         AccessCounters& counters) {
    std::string out;
    out.reserve(j >= i ? j - i + 1 : 0);
    access_range(idx, g, i, j, counters, out);
    return out;
}

std::uint8_t access_char(const PositionIndex& idx, const Grammar& g,
                         std::uint64_t i, FifoCache& cache,
                         AccessCounters& counters) {
    if (i >= idx.text_len) {
        throw OutOfBoundsError("access_char(" + std::to_string(i) +
                               ") outside text of length " +
                               std::to_string(idx.text_len));
    }
    std::uint8_t c;
    if (cache.lookup(i, c)) {
        ++counters.ra_calls;
        ++counters.cache_hits;
        return c;
    }
    ++counters.cache_misses;
    std::string buf;
    access_range(idx, g, i, i, counters, buf);
    c = static_cast<std::uint8_t>(buf[0]);
    cache.insert(i, c);
    return c;
}

}
