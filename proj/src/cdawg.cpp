#include "cdx/cdawg.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <utility>

namespace cdx {

const CdawgEdge* Cdawg::find_edge(std::uint32_t node, std::uint8_t c) const {
    for (std::uint32_t eid : nodes[node].edges) {
        if (edges[eid].first_char == c) return &edges[eid];
    }
    return nullptr;
}

// ---------- online construction ----------
//
// Classic online CDAWG construction: an active point maintained as a
// canonical reference pair (node, interval), extended by one character per
// push, with edge splitting and node cloning along suffix links. Positions
// are 1-based inside the builder; an interval end of 0 marks an edge that
// grows with the text until finish().

struct CdawgBuilder::Impl {
    struct BEdge {
        std::uint64_t k = 0, p = 0;  // label = w[k..p], 1-based; p == 0 is open
        std::uint32_t target = kNoNode;
        std::uint8_t first = 0;
    };
    struct BNode {
        std::int64_t len = 0;
        std::uint32_t suf = kNoNode;
        std::vector<BEdge> edges;
    };

    static constexpr std::uint32_t kBot = 0, kSource = 1, kSink = 2;

    CharAt char_at;
    std::vector<BNode> nodes;
    std::uint64_t e = 0;  // characters consumed; also the open-edge end
    std::uint32_t active_node = kSource;
    std::uint64_t active_k = 1;

    explicit Impl(CharAt fn) : char_at(std::move(fn)) {
        nodes.resize(3);
        nodes[kBot].len = -1;
        nodes[kSource].len = 0;
        nodes[kSource].suf = kBot;
        nodes[kSink].len = 0;
    }

    std::uint8_t at(std::uint64_t i) {  // 1-based, only already-consumed text
        if (i == 0 || i > e) {
            throw std::logic_error("construction accessed position " +
                                   std::to_string(i) + " beyond consumed " +
                                   std::to_string(e));
        }
        return char_at(i - 1);
    }

    BEdge* edge_from(std::uint32_t s, std::uint8_t c) {
        for (BEdge& ed : nodes[s].edges) {
            if (ed.first == c) return &ed;
        }
        return nullptr;
    }

    std::uint64_t edge_end(const BEdge& ed) const { return ed.p ? ed.p : e; }

    std::uint32_t new_node(std::int64_t len) {
        nodes.push_back(BNode{len, kNoNode, {}});
        return static_cast<std::uint32_t>(nodes.size() - 1);
    }

    bool check_end_point(std::uint32_t s, std::uint64_t k, std::uint64_t p,
                         std::uint8_t c) {
        if (s == kBot) return true;
        if (k <= p) {
            BEdge* ed = edge_from(s, at(k));
            return at(ed->k + (p - k + 1)) == c;
        }
        return edge_from(s, c) != nullptr;
    }

    std::uint32_t extension(std::uint32_t s, std::uint64_t k, std::uint64_t p) {
        if (k > p) return s;
        return edge_from(s, at(k))->target;
    }

    std::pair<std::uint32_t, std::uint64_t> canonize(std::uint32_t s,
                                                     std::uint64_t k,
                                                     std::uint64_t p) {
        if (k > p) return {s, k};
        if (s == kBot) {  // the virtual bot->source edge consumes one character
            s = kSource;
            ++k;
            if (k > p) return {s, k};
        }
        BEdge* ed = edge_from(s, at(k));
        std::uint64_t end = edge_end(*ed);
        while (end - ed->k <= p - k) {
            k += end - ed->k + 1;
            s = ed->target;
            if (k <= p) {
                ed = edge_from(s, at(k));
                end = edge_end(*ed);
            } else {
                break;
            }
        }
        return {s, k};
    }

    void redirect_edge(std::uint32_t s, std::uint64_t k, std::uint64_t p,
                       std::uint32_t r) {
        BEdge* ed = edge_from(s, at(k));
        ed->p = ed->k + (p - k);
        ed->target = r;
    }

    std::uint32_t split_edge(std::uint32_t s, std::uint64_t k, std::uint64_t p) {
        BEdge* ed = edge_from(s, at(k));
        std::uint64_t k2 = ed->k, p2 = ed->p;
        std::uint32_t target = ed->target;
        std::uint32_t r = new_node(nodes[s].len + static_cast<std::int64_t>(p - k + 1));
        ed = edge_from(s, at(k));  // nodes may have reallocated
        ed->p = k2 + (p - k);
        ed->target = r;
        BEdge tail;
        tail.k = k2 + (p - k) + 1;
        tail.p = p2;
        tail.target = target;
        tail.first = at(tail.k);
        nodes[r].edges.push_back(tail);
        return r;
    }

    std::pair<std::uint32_t, std::uint64_t> separate_node(std::uint32_t s,
                                                          std::uint64_t k,
                                                          std::uint64_t p) {
        auto [s1, k1] = canonize(s, k, p);
        if (k1 <= p) return {s1, k1};  // still inside an edge
        std::int64_t depth = nodes[s].len + static_cast<std::int64_t>(p - k + 1);
        if (nodes[s1].len == depth) return {s1, k1};
        // non-solid arrival: clone s1 at the shorter depth
        std::uint32_t r1 = new_node(depth);
        nodes[r1].edges = nodes[s1].edges;
        nodes[r1].suf = nodes[s1].suf;
        nodes[s1].suf = r1;
        for (;;) {
            BEdge* ed = edge_from(s, at(k));
            ed->k = k;
            ed->p = p;
            ed->target = r1;
            std::tie(s, k) = canonize(nodes[s].suf, k, p - 1);
            if (std::make_pair(s1, k1) != canonize(s, k, p)) break;
        }
        return {r1, p + 1};
    }

    void update(std::uint8_t c) {
        // e has already been advanced; the new character is w[i], i = e
        const std::uint64_t i = e;
        std::uint32_t s = active_node;
        std::uint64_t k = active_k;
        std::uint32_t oldr = kNoNode;
        std::uint32_t s1 = kNoNode;
        std::uint32_t r = kNoNode;
        while (!check_end_point(s, k, i - 1, c)) {
            if (k <= i - 1) {  // the active point is inside an edge
                if (s1 != kNoNode && s1 == extension(s, k, i - 1)) {
                    redirect_edge(s, k, i - 1, r);
                    std::tie(s, k) = canonize(nodes[s].suf, k, i - 1);
                    continue;
                }
                s1 = extension(s, k, i - 1);
                r = split_edge(s, k, i - 1);
            } else {  // the active point is a node
                r = s;
            }
            BEdge to_sink;
            to_sink.k = i;
            to_sink.p = 0;  // open
            to_sink.target = kSink;
            to_sink.first = c;
            nodes[r].edges.push_back(to_sink);
            if (oldr != kNoNode) nodes[oldr].suf = r;
            oldr = r;
            std::tie(s, k) = canonize(nodes[s].suf, k, i - 1);
        }
        if (oldr != kNoNode) nodes[oldr].suf = s;
        std::tie(active_node, active_k) = separate_node(s, k, i);
    }
};

CdawgBuilder::CdawgBuilder(CharAt char_at) : impl_(new Impl(std::move(char_at))) {}

CdawgBuilder::~CdawgBuilder() { delete impl_; }

std::uint64_t CdawgBuilder::consumed() const { return impl_->e; }

void CdawgBuilder::push(std::uint8_t c) {
    ++impl_->e;
    impl_->nodes[Impl::kSink].len = static_cast<std::int64_t>(impl_->e);
    impl_->update(c);
}

Cdawg CdawgBuilder::finish() {
    Impl& b = *impl_;
    // reachable builder nodes, renumbered in creation (id) order
    std::vector<std::uint32_t> remap(b.nodes.size(), kNoNode);
    {
        std::vector<std::uint32_t> stack = {Impl::kSource};
        std::vector<bool> seen(b.nodes.size(), false);
        seen[Impl::kSource] = true;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (const auto& ed : b.nodes[v].edges) {
                if (!seen[ed.target]) {
                    seen[ed.target] = true;
                    stack.push_back(ed.target);
                }
            }
        }
        std::uint32_t next_id = 0;
        for (std::uint32_t v = 0; v < b.nodes.size(); ++v) {
            if (seen[v]) remap[v] = next_id++;
        }
    }

    Cdawg c;
    c.text_len = b.e;
    c.source = remap[Impl::kSource];
    c.sink = remap[Impl::kSink];
    for (std::uint32_t v = 0; v < b.nodes.size(); ++v) {
        if (remap[v] == kNoNode) continue;
        auto bedges = b.nodes[v].edges;
        std::sort(bedges.begin(), bedges.end(),
                  [](const Impl::BEdge& a, const Impl::BEdge& x) {
                      return a.first < x.first;
                  });
        CdawgNode node;
        node.len = static_cast<std::uint64_t>(b.nodes[v].len);
        node.count = 0;
        for (const auto& ed : bedges) {
            CdawgEdge out;
            out.target = remap[ed.target];
            out.start = ed.k - 1;  // to 0-based
            out.end = (ed.p ? ed.p : b.e) - 1;
            out.first_char = ed.first;
            node.edges.push_back(static_cast<std::uint32_t>(c.edges.size()));
            c.edges.push_back(out);
        }
        c.nodes.push_back(std::move(node));
    }
    compute_counts(c);
    return c;
}

void compute_counts(Cdawg& c) {
    enum : std::uint8_t { white, grey, black };
    std::vector<std::uint8_t> mark(c.nodes.size(), white);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    stack.emplace_back(c.source, 0);
    mark[c.source] = grey;
    while (!stack.empty()) {
        auto& [v, idx] = stack.back();
        if (c.nodes[v].edges.empty()) {
            c.nodes[v].count = 1;  // sink
            mark[v] = black;
            stack.pop_back();
            continue;
        }
        if (idx == c.nodes[v].edges.size()) {
            std::uint64_t total = 0;
            for (std::uint32_t eid : c.nodes[v].edges) {
                total += c.nodes[c.edges[eid].target].count;
            }
            c.nodes[v].count = total;
            mark[v] = black;
            stack.pop_back();
            continue;
        }
        std::uint32_t t = c.edges[c.nodes[v].edges[idx++]].target;
        if (mark[t] == grey) throw CycleError("cycle in CDAWG");
        if (mark[t] == white) {
            mark[t] = grey;
            stack.emplace_back(t, 0);
        }
    }
}

Cdawg build_cdawg(const Grammar& g, const PositionIndex& idx,
                  FifoCache& cache, AccessCounters& counters) {
    const std::uint64_t n = g.text_length();
    CdawgBuilder builder([&](std::uint64_t pos) {
        return access_char(idx, g, pos, cache, counters);
    });
    ExpandStream stream(g);
    std::uint8_t c = 0;
    while (stream.next(c)) {
        if (c == kTerminator && stream.produced() != n) {
            throw TerminatorError("terminator before end of stream");
        }
        builder.push(c);
    }
    if (builder.consumed() == 0 || c != kTerminator) {
        throw TerminatorError("stream does not end with the terminator");
    }
    Cdawg out = builder.finish();
    if (out.nodes[out.source].count != n) {
        throw Error("CDAWG construction self-check failed: " +
                    std::to_string(out.nodes[out.source].count) +
                    " paths for text of length " + std::to_string(n));
    }
    return out;
}

// ---------- serialization ----------

namespace {

constexpr std::array<std::uint8_t, 4> kCdgMagic = {0x43, 0x44, 0x47, 0x31};  // "CDG1"
constexpr std::uint32_t kCdgVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    std::uint8_t buf[4] = {static_cast<std::uint8_t>(v),
                           static_cast<std::uint8_t>(v >> 8),
                           static_cast<std::uint8_t>(v >> 16),
                           static_cast<std::uint8_t>(v >> 24)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::istream& in) {
    std::uint8_t buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4)) {
        throw FormatError("unexpected end of CDAWG stream");
    }
    return static_cast<std::uint32_t>(buf[0]) |
           (static_cast<std::uint32_t>(buf[1]) << 8) |
           (static_cast<std::uint32_t>(buf[2]) << 16) |
           (static_cast<std::uint32_t>(buf[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t lo = get_u32(in);
    std::uint64_t hi = get_u32(in);
    return lo | (hi << 32);
}

}  // namespace

void serialize_cdawg(const Cdawg& c, std::ostream& out) {
    out.write(reinterpret_cast<const char*>(kCdgMagic.data()), 4);
    put_u32(out, kCdgVersion);
    put_u64(out, c.text_len);
    put_u32(out, static_cast<std::uint32_t>(c.nodes.size()));
    put_u32(out, static_cast<std::uint32_t>(c.edges.size()));
    put_u32(out, c.source);
    put_u32(out, c.sink);
    for (const auto& node : c.nodes) {
        put_u64(out, node.len);
        put_u64(out, node.count);
        put_u32(out, static_cast<std::uint32_t>(node.edges.size()));
        for (std::uint32_t eid : node.edges) put_u32(out, eid);
    }
    for (const auto& ed : c.edges) {
        put_u32(out, ed.target);
        put_u64(out, ed.start);
        put_u64(out, ed.end);
        out.put(static_cast<char>(ed.first_char));
    }
    if (!out) throw Error("CDAWG write failed");
}

Cdawg deserialize_cdawg(std::istream& in) {
    std::uint8_t magic[4];
    if (!in.read(reinterpret_cast<char*>(magic), 4)) {
        throw FormatError("truncated CDAWG stream");
    }
    if (!std::equal(std::begin(magic), std::end(magic), kCdgMagic.begin())) {
        throw FormatError("bad CDAWG magic");
    }
    std::uint32_t version = get_u32(in);
    if (version != kCdgVersion) {
        throw VersionError("unsupported CDAWG version " + std::to_string(version));
    }
    Cdawg c;
    c.text_len = get_u64(in);
    std::uint32_t node_count = get_u32(in);
    std::uint32_t edge_count = get_u32(in);
    if (node_count == 0) throw FormatError("CDAWG stream declares no nodes");
    c.source = get_u32(in);
    c.sink = get_u32(in);
    if (c.source >= node_count || c.sink >= node_count) {
        throw FormatError("source/sink id out of range");
    }
    c.nodes.resize(node_count);
    for (auto& node : c.nodes) {
        node.len = get_u64(in);
        node.count = get_u64(in);
        std::uint32_t degree = get_u32(in);
        node.edges.resize(degree);
        for (auto& eid : node.edges) {
            eid = get_u32(in);
            if (eid >= edge_count) throw FormatError("edge id out of range");
        }
    }
    c.edges.resize(edge_count);
    for (auto& ed : c.edges) {
        ed.target = get_u32(in);
        if (ed.target >= node_count) throw FormatError("edge target out of range");
        ed.start = get_u64(in);
        ed.end = get_u64(in);
        int ch = in.get();
        if (ch == std::char_traits<char>::eof()) {
            throw FormatError("unexpected end of CDAWG stream");
        }
        ed.first_char = static_cast<std::uint8_t>(ch);
        if (ed.start > ed.end || ed.end >= c.text_len) {
            throw FormatError("edge interval out of range");
        }
    }
    return c;
}

}
