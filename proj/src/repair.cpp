#include "cdx/repair.hpp"

#include <queue>
#include <set>
#include <unordered_map>

namespace cdx {

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;
constexpr SymbolId kGone = 0xFFFFFFFFu;

std::uint64_t pair_key(SymbolId a, SymbolId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct HeapEntry {
    std::uint64_t count;
    std::uint64_t key;
};

struct HeapLess {  // max-heap on count, then smallest pair first
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.count != b.count) return a.count < b.count;
        return a.key > b.key;
    }
};

struct Compressor {
    std::vector<SymbolId> seq;
    std::vector<std::uint32_t> prev, next;
    std::unordered_map<std::uint64_t, std::set<std::uint32_t>> pairs;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;

    void add(SymbolId a, SymbolId b, std::uint32_t p) {
        auto& occ = pairs[pair_key(a, b)];
        occ.insert(p);
        heap.push({occ.size(), pair_key(a, b)});
    }

    void drop(SymbolId a, SymbolId b, std::uint32_t p) {
        auto it = pairs.find(pair_key(a, b));
        if (it != pairs.end()) it->second.erase(p);
    }

    /** Recomputes the non-overlapping left-to-right occurrences of (x, x)
     * for the whole equal-symbol run containing `pos`. */
    void renormalize_run(std::uint32_t pos) {
        SymbolId x = seq[pos];
        std::uint32_t start = pos;
        while (prev[start] != kNone && seq[prev[start]] == x) {
            start = prev[start];
        }
        std::vector<std::uint32_t> slots;  // pair positions inside the run
        for (std::uint32_t p = start; next[p] != kNone && seq[next[p]] == x;
             p = next[p]) {
            slots.push_back(p);
        }
        for (std::uint32_t p : slots) drop(x, x, p);
        for (std::size_t i = 0; i < slots.size(); i += 2) add(x, x, slots[i]);
    }

    /** Rewrites the occurrence of the current pair at p to `sym`, fixing
     * the neighbouring pair registrations. The occurrence itself has
     * already been removed from its set. */
    void replace_at(std::uint32_t p, SymbolId sym) {
        std::uint32_t q = next[p];
        std::uint32_t pl = prev[p];
        std::uint32_t qn = next[q];
        SymbolId b = seq[q];
        if (pl != kNone) drop(seq[pl], seq[p], pl);
        if (qn != kNone) drop(b, seq[qn], q);
        bool lost_run_head = (qn != kNone && seq[qn] == b);
        seq[p] = sym;
        seq[q] = kGone;
        next[p] = qn;
        if (qn != kNone) prev[qn] = p;
        if (lost_run_head && seq[qn] != sym) renormalize_run(qn);
        if (pl != kNone) {
            if (seq[pl] == sym) {
                renormalize_run(pl);
            } else {
                add(seq[pl], sym, pl);
            }
        }
        if (qn != kNone) {
            if (seq[qn] == sym) {
                renormalize_run(p);
            } else {
                add(sym, seq[qn], p);
            }
        }
    }
};

}  // namespace

Grammar repair_compress(std::string_view text, const RepairHooks& hooks) {
    for (char ch : text) {
        if (static_cast<std::uint8_t>(ch) == kTerminator) {
            throw TerminatorError("input text contains the terminator");
        }
    }
    Compressor c;
    c.seq.reserve(text.size() + 1);
    for (char ch : text) c.seq.push_back(static_cast<std::uint8_t>(ch));
    c.seq.push_back(kTerminator);
    const std::uint32_t n = static_cast<std::uint32_t>(c.seq.size());
    c.prev.resize(n);
    c.next.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        c.prev[i] = i ? i - 1 : kNone;
        c.next[i] = i + 1 < n ? i + 1 : kNone;
    }
    // initial left-to-right registration, skipping the overlapping middle
    // occurrence inside equal-symbol runs
    for (std::uint32_t p = 0; p + 1 < n;) {
        c.add(c.seq[p], c.seq[p + 1], p);
        if (c.seq[p] == c.seq[p + 1] && p + 2 < n && c.seq[p + 2] == c.seq[p]) {
            p += 2;
        } else {
            p += 1;
        }
    }

    std::vector<std::vector<SymbolId>> rules;
    std::uint32_t pass = 0;
    while (!c.heap.empty()) {
        HeapEntry top = c.heap.top();
        c.heap.pop();
        auto it = c.pairs.find(top.key);
        if (it == c.pairs.end()) continue;
        std::uint64_t size = it->second.size();
        if (size != top.count) {  // stale priority: requeue at the live count
            if (size >= 2) c.heap.push({size, top.key});
            continue;
        }
        if (size < 2) continue;

        SymbolId a = static_cast<SymbolId>(top.key >> 32);
        SymbolId b = static_cast<SymbolId>(top.key & 0xFFFFFFFFu);
        SymbolId sym = kRuleBase + static_cast<SymbolId>(rules.size());
        rules.push_back({a, b});
        auto& occ = it->second;
        while (!occ.empty()) {
            std::uint32_t p = *occ.begin();
            occ.erase(occ.begin());
            c.replace_at(p, sym);
        }
        c.pairs.erase(top.key);

        if (hooks.after_pass) {
            std::vector<SymbolId> alive;
            for (std::uint32_t p = 0; p != kNone; p = c.next[p]) {
                alive.push_back(c.seq[p]);
            }
            std::map<std::pair<SymbolId, SymbolId>, std::uint64_t> counts;
            for (const auto& [key, set] : c.pairs) {
                if (!set.empty()) {
                    counts[{static_cast<SymbolId>(key >> 32),
                            static_cast<SymbolId>(key & 0xFFFFFFFFu)}] =
                        set.size();
                }
            }
            hooks.after_pass(pass, sym, alive, counts);
        }
        ++pass;
    }

    std::vector<SymbolId> start;
    for (std::uint32_t p = 0; p != kNone; p = c.next[p]) {
        start.push_back(c.seq[p]);
    }
    rules.push_back(std::move(start));
    std::uint32_t start_id = static_cast<std::uint32_t>(rules.size() - 1);
    return Grammar::from_rules(std::move(rules), start_id);
}

}
