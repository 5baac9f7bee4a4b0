#ifndef INCLUDED_CDX_REPAIR
#define INCLUDED_CDX_REPAIR

#include <cstdint>
#include <functional>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "cdx/slg.hpp"

namespace cdx {

/** Test instrumentation for the compressor. `after_pass` (when set) runs
 * after each replacement round with the pass number, the symbol the round
 * introduced, the surviving sequence, and the compressor's live pair
 * counts, so callers can recount from scratch and compare. */
struct RepairHooks {
    std::function<void(
        std::uint32_t pass, SymbolId new_symbol,
        const std::vector<SymbolId>& sequence,
        const std::map<std::pair<SymbolId, SymbolId>, std::uint64_t>& counts)>
        after_pass;
};

/** Grammar compression by recursive pairing: repeatedly replaces the most
 * frequent adjacent symbol pair (ties broken toward the smaller pair) with
 * a fresh rule until no pair occurs twice. Occurrences of a pair of equal
 * symbols are counted left to right without overlap. The text must not
 * contain the terminator; one is appended. */
Grammar repair_compress(std::string_view text, const RepairHooks& hooks = {});

}

#endif
