#include "cdx/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

namespace cdx {

std::vector<std::uint64_t> naive_search(std::string_view text,
                                        std::string_view pattern) {
    if (pattern.empty()) throw EmptyPatternError("empty pattern");
    std::vector<std::uint64_t> out;
    if (pattern.size() > text.size()) return out;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
        if (text.compare(i, pattern.size(), pattern) == 0) out.push_back(i);
    }
    return out;
}

RepeatReport maximal_repeats(std::string_view text) {
    constexpr std::size_t kCap = 4096;
    if (text.size() > kCap) {
        throw ScaleError("maximal_repeats oracle capped at " +
                         std::to_string(kCap) + " characters, got " +
                         std::to_string(text.size()));
    }
    RepeatReport report;
    const std::size_t n = text.size();
    if (n == 0) return report;

    // the empty string: always maximal for nonempty text, and its extension
    // sets are exactly the distinct characters
    std::set<char> alphabet(text.begin(), text.end());
    report.maximal_repeats.emplace_back("");
    report.er += alphabet.size();
    report.el += alphabet.size();

    // level-by-level refinement: a group at level l holds all start
    // positions of one length-l substring that occurs at least twice
    std::vector<std::vector<std::uint32_t>> groups;
    {
        std::vector<std::uint32_t> all(n);
        for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
        groups.push_back(std::move(all));
    }
    for (std::size_t len = 1; !groups.empty(); ++len) {
        std::vector<std::vector<std::uint32_t>> next;
        for (const auto& group : groups) {
            std::array<std::vector<std::uint32_t>, 256> buckets;
            for (std::uint32_t p : group) {
                if (p + len <= n) {
                    buckets[static_cast<std::uint8_t>(text[p + len - 1])]
                        .push_back(p);
                }
            }
            for (auto& bucket : buckets) {
                if (bucket.size() < 2) continue;
                // maximality: boundaries act as distinct virtual contexts
                std::set<int> right, left;
                for (std::uint32_t p : bucket) {
                    right.insert(p + len < n
                                     ? static_cast<std::uint8_t>(text[p + len])
                                     : -1);
                    left.insert(p > 0 ? static_cast<std::uint8_t>(text[p - 1])
                                      : -1);
                }
                if (right.size() >= 2 && left.size() >= 2) {
                    report.maximal_repeats.emplace_back(
                        text.substr(bucket.front(), len));
                    report.er += right.size() - right.count(-1);
                    report.el += left.size() - left.count(-1);
                }
                next.push_back(std::move(bucket));
            }
        }
        groups = std::move(next);
    }
    std::sort(report.maximal_repeats.begin(), report.maximal_repeats.end());
    return report;
}

// ---------- reference construction ----------

namespace {

struct Trie {
    // children[node][c]; 0 is the root, -1 means absent
    std::vector<std::array<std::int32_t, 256>> children;

    Trie() { children.emplace_back(); children[0].fill(-1); }

    std::int32_t step(std::int32_t v, std::uint8_t c) {
        if (children[v][c] < 0) {
            std::int32_t fresh = static_cast<std::int32_t>(children.size());
            children.emplace_back();  // may invalidate references into children
            children.back().fill(-1);
            children[v][c] = fresh;
        }
        return children[v][c];
    }
};

struct Dawg {
    // minimized suffix trie: merged subtrees, edges one character each
    std::vector<std::map<std::uint8_t, std::uint32_t>> nodes;
    std::uint32_t source = 0;
};

Dawg minimize(const Trie& trie) {
    // bottom-up structural hashing: equal subtrees (equal right-extension
    // sets) collapse to one node
    std::vector<std::int32_t> canon(trie.children.size(), -1);
    std::map<std::vector<std::pair<std::uint8_t, std::uint32_t>>, std::uint32_t>
        interned;
    Dawg d;
    // iterative post-order over the trie
    std::vector<std::pair<std::int32_t, std::size_t>> stack = {{0, 0}};
    while (!stack.empty()) {
        auto& [v, idx] = stack.back();
        bool descended = false;
        while (idx < 256) {
            std::int32_t child = trie.children[v][idx++];
            if (child >= 0 && canon[child] < 0) {
                stack.emplace_back(child, 0);
                descended = true;
                break;
            }
        }
        if (descended) continue;
        std::vector<std::pair<std::uint8_t, std::uint32_t>> sig;
        for (int c = 0; c < 256; ++c) {
            std::int32_t child = trie.children[v][c];
            if (child >= 0) {
                sig.emplace_back(static_cast<std::uint8_t>(c),
                                 static_cast<std::uint32_t>(canon[child]));
            }
        }
        auto it = interned.find(sig);
        if (it == interned.end()) {
            std::uint32_t id = static_cast<std::uint32_t>(d.nodes.size());
            d.nodes.emplace_back(sig.begin(), sig.end());
            it = interned.emplace(std::move(sig), id).first;
        }
        canon[v] = static_cast<std::int32_t>(it->second);
        stack.pop_back();
    }
    d.source = static_cast<std::uint32_t>(canon[0]);
    return d;
}

}  // namespace

Cdawg reference_cdawg(std::string_view text) {
    constexpr std::size_t kCap = 512;
    if (text.size() > kCap) {
        throw ScaleError("reference_cdawg oracle capped at " +
                         std::to_string(kCap) + " characters, got " +
                         std::to_string(text.size()));
    }
    if (text.empty()) throw ValidationError("reference_cdawg of empty text");

    Trie trie;
    for (std::size_t i = 0; i < text.size(); ++i) {
        std::int32_t v = 0;
        for (std::size_t j = i; j < text.size(); ++j) {
            v = trie.step(v, static_cast<std::uint8_t>(text[j]));
        }
    }
    Dawg d = minimize(trie);

    // compact: keep the source, the sink, and every branching node; unary
    // chains in between fold into one labeled edge
    Cdawg c;
    c.text_len = text.size();
    std::unordered_map<std::uint32_t, std::uint32_t> id_of;
    auto keep = [&](std::uint32_t v) {
        return v == d.source || d.nodes[v].size() != 1;
    };
    auto cdawg_id = [&](std::uint32_t v) {
        auto it = id_of.find(v);
        if (it != id_of.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(c.nodes.size());
        c.nodes.push_back(CdawgNode{0, 0, {}});
        id_of.emplace(v, id);
        return id;
    };
    c.source = cdawg_id(d.source);
    std::vector<std::uint32_t> todo = {d.source};
    std::set<std::uint32_t> queued = {d.source};
    while (!todo.empty()) {
        std::uint32_t v = todo.back();
        todo.pop_back();
        for (auto [first, child] : d.nodes[v]) {
            std::string label(1, static_cast<char>(first));
            std::uint32_t t = child;
            while (!keep(t)) {
                auto [ch, next] = *d.nodes[t].begin();
                label.push_back(static_cast<char>(ch));
                t = next;
            }
            CdawgEdge ed;
            ed.target = cdawg_id(t);
            ed.start = naive_search(text, label).front();
            ed.end = ed.start + label.size() - 1;
            ed.first_char = first;
            c.nodes[id_of[v]].edges.push_back(
                static_cast<std::uint32_t>(c.edges.size()));
            c.edges.push_back(ed);
            if (queued.insert(t).second) todo.push_back(t);
        }
    }
    for (std::uint32_t v = 0; v < c.nodes.size(); ++v) {
        if (c.nodes[v].edges.empty()) c.sink = v;
        std::sort(c.nodes[v].edges.begin(), c.nodes[v].edges.end(),
                  [&](std::uint32_t a, std::uint32_t b) {
                      return c.edges[a].first_char < c.edges[b].first_char;
                  });
    }
    // node depth = longest source-to-node path, in label characters
    {
        std::vector<std::uint32_t> order = {c.source};
        for (std::size_t i = 0; i < order.size(); ++i) {  // BFS relaxation
            std::uint32_t v = order[i];
            for (std::uint32_t eid : c.nodes[v].edges) {
                const auto& ed = c.edges[eid];
                std::uint64_t cand = c.nodes[v].len + ed.label_length();
                if (cand > c.nodes[ed.target].len) {
                    c.nodes[ed.target].len = cand;
                    order.push_back(ed.target);
                }
            }
        }
    }
    compute_counts(c);
    return c;
}

bool cdawg_isomorphic(const Cdawg& a, std::string_view text_a, const Cdawg& b,
                      std::string_view text_b) {
    std::unordered_map<std::uint32_t, std::uint32_t> mapping;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> todo = {
        {a.source, b.source}};
    while (!todo.empty()) {
        auto [va, vb] = todo.back();
        todo.pop_back();
        auto it = mapping.find(va);
        if (it != mapping.end()) {
            if (it->second != vb) return false;
            continue;
        }
        mapping.emplace(va, vb);
        const auto& na = a.nodes[va];
        const auto& nb = b.nodes[vb];
        if (na.edges.size() != nb.edges.size()) return false;
        if (na.count != nb.count) return false;
        for (std::size_t i = 0; i < na.edges.size(); ++i) {
            const auto& ea = a.edges[na.edges[i]];
            const auto& eb = b.edges[nb.edges[i]];
            std::string_view la = text_a.substr(ea.start, ea.label_length());
            std::string_view lb = text_b.substr(eb.start, eb.label_length());
            if (la != lb) return false;
            todo.emplace_back(ea.target, eb.target);
        }
    }
    return true;
}

}
