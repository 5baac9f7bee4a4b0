#include "cdx/matcher.hpp"

#include <algorithm>

namespace cdx {

bool find_point(const Cdawg& c, const RandomAccessContext& ctx,
                std::string_view pattern, MatchPoint& out) {
    if (pattern.empty()) throw EmptyPatternError("empty pattern");
    std::uint32_t node = c.source;
    std::uint64_t matched = 0;
    std::string tail;
    while (matched < pattern.size()) {
        const CdawgEdge* ed =
            c.find_edge(node, static_cast<std::uint8_t>(pattern[matched]));
        if (ed == nullptr) return false;
        ++matched;  // the memoized first character
        std::uint64_t remaining = pattern.size() - matched;
        std::uint64_t in_label = ed->label_length() - 1;
        std::uint64_t take = std::min(remaining, in_label);
        if (take > 0) {
            tail.clear();
            ctx.range(ed->start + 1, ed->start + take, tail);
            if (std::string_view(tail) != pattern.substr(matched, take)) {
                return false;
            }
            matched += take;
        }
        if (take < in_label) {  // the pattern ends inside this edge
            out.edge = static_cast<std::uint32_t>(ed - c.edges.data());
            out.node = ed->target;
            out.offset = 1 + take;
            out.matched_len = matched;
            return true;
        }
        node = ed->target;
    }
    out.edge = kNoNode;
    out.node = node;
    out.offset = 0;
    out.matched_len = matched;
    return true;
}

bool exists(const Cdawg& c, const RandomAccessContext& ctx,
            std::string_view pattern) {
    MatchPoint mp;
    return find_point(c, ctx, pattern, mp);
}

std::uint64_t count(const Cdawg& c, const RandomAccessContext& ctx,
                    std::string_view pattern) {
    MatchPoint mp;
    if (!find_point(c, ctx, pattern, mp)) return 0;
    return c.nodes[mp.node].count;
}

std::vector<std::uint64_t> locate(const Cdawg& c,
                                  const RandomAccessContext& ctx,
                                  std::string_view pattern) {
    std::vector<std::uint64_t> result;
    MatchPoint mp;
    if (!find_point(c, ctx, pattern, mp)) return result;
    const std::uint64_t n = c.text_len;
    const std::uint64_t m = mp.matched_len;
    // (node, label characters between the match point and that node)
    std::vector<std::pair<std::uint32_t, std::uint64_t>> stack;
    if (mp.at_node()) {
        stack.emplace_back(mp.node, 0);
    } else {
        stack.emplace_back(mp.node, c.edges[mp.edge].label_length() - mp.offset);
    }
    while (!stack.empty()) {
        auto [v, r] = stack.back();
        stack.pop_back();
        if (v == c.sink) {
            result.push_back(n - m - r);
            continue;
        }
        for (std::uint32_t eid : c.nodes[v].edges) {
            stack.emplace_back(c.edges[eid].target,
                               r + c.edges[eid].label_length());
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

}
