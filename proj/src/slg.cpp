#include "cdx/slg.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>

namespace cdx {

namespace {

enum class Mark : std::uint8_t { white, grey, black };

void check_symbol(SymbolId s, std::size_t rule_count) {
    if (!is_terminal(s) && rule_id(s) >= rule_count) {
        throw ValidationError("symbol references nonexistent rule " +
                              std::to_string(rule_id(s)));
    }
}

}  // namespace

Grammar Grammar::from_rules(std::vector<std::vector<SymbolId>> rules,
                            std::uint32_t start) {
    if (rules.empty()) {
        throw ValidationError("grammar has no rules");
    }
    if (start >= rules.size()) {
        throw ValidationError("start rule id out of range");
    }
    for (const auto& production : rules) {
        if (production.empty()) {
            throw ValidationError("empty production");
        }
        for (SymbolId s : production) {
            check_symbol(s, rules.size());
        }
    }

    const std::uint32_t nrules = static_cast<std::uint32_t>(rules.size());
    std::vector<std::uint64_t> lengths(nrules, 0);
    std::vector<std::uint32_t> heights(nrules, 0);
    std::vector<std::uint8_t> dollars(nrules, 0);  // saturated at 2
    std::vector<Mark> mark(nrules, Mark::white);

    // one DFS pass: cycle check, reachability, and bottom-up memos
    std::vector<std::pair<std::uint32_t, std::uint64_t>> stack;
    stack.emplace_back(start, 0);
    mark[start] = Mark::grey;
    while (!stack.empty()) {
        auto& [v, idx] = stack.back();
        const auto& production = rules[v];
        if (idx == production.size()) {
            std::uint64_t len = 0;
            std::uint32_t height = 0;
            std::uint32_t dc = 0;
            for (SymbolId s : production) {
                if (is_terminal(s)) {
                    len += 1;
                    if (terminal_byte(s) == kTerminator) dc += 1;
                } else {
                    std::uint32_t r = rule_id(s);
                    len += lengths[r];
                    height = std::max(height, heights[r] + 1);
                    dc += dollars[r];
                }
                if (dc > 2) dc = 2;
            }
            lengths[v] = len;
            heights[v] = height;
            dollars[v] = static_cast<std::uint8_t>(dc);
            mark[v] = Mark::black;
            stack.pop_back();
            continue;
        }
        SymbolId s = production[idx++];
        if (is_terminal(s)) continue;
        std::uint32_t r = rule_id(s);
        if (mark[r] == Mark::grey) {
            throw CycleError("cycle through rule " + std::to_string(r));
        }
        if (mark[r] == Mark::white) {
            mark[r] = Mark::grey;
            stack.emplace_back(r, 0);
        }
    }
    for (std::uint32_t v = 0; v < nrules; ++v) {
        if (mark[v] != Mark::black) {
            throw ValidationError("rule " + std::to_string(v) +
                                  " unreachable from start rule");
        }
    }

    if (dollars[start] != 1) {
        throw TerminatorError("expansion must contain exactly one terminator");
    }
    SymbolId last = rules[start].back();
    while (!is_terminal(last)) last = rules[rule_id(last)].back();
    if (terminal_byte(last) != kTerminator) {
        throw TerminatorError("expansion must end with the terminator");
    }

    Grammar g;
    g.rules_ = std::move(rules);
    g.rule_lengths_ = std::move(lengths);
    g.start_ = start;
    g.text_len_ = g.rule_lengths_[start];
    g.height_ = heights[start];
    g.total_size_ = 0;
    for (const auto& production : g.rules_) g.total_size_ += production.size();
    return g;
}

Grammar Grammar::from_text(std::string_view text) {
    std::vector<SymbolId> production;
    production.reserve(text.size() + 1);
    for (std::size_t i = 0; i < text.size(); ++i) {
        std::uint8_t b = static_cast<std::uint8_t>(text[i]);
        if (b == kTerminator && i + 1 != text.size()) {
            throw TerminatorError("text contains an interior terminator");
        }
        production.push_back(b);
    }
    if (production.empty() || production.back() != kTerminator) {
        production.push_back(kTerminator);
    }
    return from_rules({std::move(production)}, 0);
}

GrammarStats Grammar::stats() const {
    return GrammarStats{rule_count(), total_size_, height_,
                        start_production().size(), text_len_};
}

ExpandStream::ExpandStream(const Grammar& g) : grammar_(&g) {
    stack_.reserve(g.height() + 1);
    stack_.push_back({g.start_rule(), 0});
}

bool ExpandStream::next(std::uint8_t& out) {
    while (!stack_.empty()) {
        Frame& f = stack_.back();
        const auto& production = grammar_->rule(f.rule);
        if (f.pos == production.size()) {
            stack_.pop_back();
            continue;
        }
        SymbolId s = production[f.pos++];
        if (is_terminal(s)) {
            out = terminal_byte(s);
            ++produced_;
            return true;
        }
        stack_.push_back({rule_id(s), 0});
    }
    return false;
}

std::string expand(const Grammar& g) {
    std::string out;
    out.reserve(g.text_length());
    ExpandStream stream(g);
    std::uint8_t c;
    while (stream.next(c)) out.push_back(static_cast<char>(c));
    return out;
}

// ---------- serialization ----------

namespace {

constexpr std::array<std::uint8_t, 4> kSlgMagic = {0x53, 0x4C, 0x47, 0x31};  // "SLG1"

void write_u32(std::ostream& out, std::uint32_t v) {
    std::uint8_t buf[4] = {static_cast<std::uint8_t>(v),
                           static_cast<std::uint8_t>(v >> 8),
                           static_cast<std::uint8_t>(v >> 16),
                           static_cast<std::uint8_t>(v >> 24)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

std::uint32_t read_u32(std::istream& in) {
    std::uint8_t buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4)) {
        throw FormatError("unexpected end of stream");
    }
    return static_cast<std::uint32_t>(buf[0]) |
           (static_cast<std::uint32_t>(buf[1]) << 8) |
           (static_cast<std::uint32_t>(buf[2]) << 16) |
           (static_cast<std::uint32_t>(buf[3]) << 24);
}

Grammar load_binary(std::istream& in) {
    std::uint8_t magic[4];
    if (!in.read(reinterpret_cast<char*>(magic), 4)) {
        throw FormatError("truncated grammar stream");
    }
    if (!std::equal(std::begin(magic), std::end(magic), kSlgMagic.begin())) {
        throw FormatError("bad grammar magic");
    }
    std::uint32_t rule_count = read_u32(in);
    std::uint32_t start = read_u32(in);
    if (rule_count == 0) {
        throw FormatError("grammar stream declares no rules");
    }
    std::vector<std::vector<SymbolId>> rules(rule_count);
    for (auto& production : rules) {
        std::uint32_t len = read_u32(in);
        production.resize(len);
        for (auto& s : production) s = read_u32(in);
    }
    return Grammar::from_rules(std::move(rules), start);
}

Grammar load_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "SLG 1") {
        throw FormatError("bad grammar header");
    }
    if (!std::getline(in, line)) {
        throw FormatError("missing rule count line");
    }
    std::istringstream counts(line);
    std::uint64_t rule_count = 0, start = 0;
    if (!(counts >> rule_count >> start) || rule_count == 0) {
        throw FormatError("bad rule count line");
    }
    std::vector<std::vector<SymbolId>> rules;
    rules.reserve(rule_count);
    for (std::uint64_t i = 0; i < rule_count; ++i) {
        if (!std::getline(in, line)) {
            throw FormatError("missing rule line " + std::to_string(i));
        }
        std::istringstream tokens(line);
        std::string tok;
        std::vector<SymbolId> production;
        while (tokens >> tok) {
            if (tok.size() < 2 || (tok[0] != 'b' && tok[0] != 'r')) {
                throw FormatError("bad symbol token '" + tok + "'");
            }
            std::uint64_t value = 0;
            try {
                value = std::stoull(tok.substr(1));
            } catch (const std::exception&) {
                throw FormatError("bad symbol token '" + tok + "'");
            }
            if (tok[0] == 'b') {
                if (value > 255) throw FormatError("terminal byte out of range");
                production.push_back(static_cast<SymbolId>(value));
            } else {
                production.push_back(rule_symbol(static_cast<std::uint32_t>(value)));
            }
        }
        rules.push_back(std::move(production));
    }
    return Grammar::from_rules(std::move(rules), static_cast<std::uint32_t>(start));
}

}  // namespace

Grammar load_grammar(std::istream& in, GrammarFormat format) {
    return format == GrammarFormat::binary ? load_binary(in) : load_text(in);
}

void save_grammar(const Grammar& g, std::ostream& out, GrammarFormat format) {
    if (g.rule_count() == 0) {
        throw FormatError("refusing to serialize an empty grammar");
    }
    if (format == GrammarFormat::binary) {
        out.write(reinterpret_cast<const char*>(kSlgMagic.data()), 4);
        write_u32(out, g.rule_count());
        write_u32(out, g.start_rule());
        for (std::uint32_t v = 0; v < g.rule_count(); ++v) {
            const auto& production = g.rule(v);
            write_u32(out, static_cast<std::uint32_t>(production.size()));
            for (SymbolId s : production) write_u32(out, s);
        }
    } else {
        out << "SLG 1\n" << g.rule_count() << ' ' << g.start_rule() << '\n';
        for (std::uint32_t v = 0; v < g.rule_count(); ++v) {
            const auto& production = g.rule(v);
            for (std::size_t i = 0; i < production.size(); ++i) {
                if (i) out << ' ';
                SymbolId s = production[i];
                if (is_terminal(s)) {
                    out << 'b' << static_cast<std::uint32_t>(s);
                } else {
                    out << 'r' << rule_id(s);
                }
            }
            out << '\n';
        }
    }
    if (!out) throw Error("grammar write failed");
}

Grammar import_navarro(std::istream& c_stream, std::istream& r_stream) {
    auto read_i32 = [](std::istream& in, bool& ok) {
        std::uint8_t buf[4];
        ok = static_cast<bool>(in.read(reinterpret_cast<char*>(buf), 4));
        return static_cast<std::uint32_t>(buf[0]) |
               (static_cast<std::uint32_t>(buf[1]) << 8) |
               (static_cast<std::uint32_t>(buf[2]) << 16) |
               (static_cast<std::uint32_t>(buf[3]) << 24);
    };
    bool ok = false;
    std::uint32_t alpha = read_i32(r_stream, ok);
    if (!ok || alpha == 0 || alpha > 256) {
        throw FormatError("bad alphabet size in R stream");
    }
    std::vector<std::uint8_t> char_map(alpha);
    if (!r_stream.read(reinterpret_cast<char*>(char_map.data()), alpha)) {
        throw FormatError("truncated character map in R stream");
    }
    // pair rules; symbol s < alpha is terminal char_map[s], else rule s - alpha
    std::vector<std::vector<SymbolId>> rules;
    auto map_symbol = [&](std::uint32_t s) -> SymbolId {
        if (s < alpha) return char_map[s];
        return rule_symbol(s - alpha);
    };
    for (;;) {
        std::uint32_t left = read_i32(r_stream, ok);
        if (!ok) break;
        std::uint32_t right = read_i32(r_stream, ok);
        if (!ok) throw FormatError("odd symbol count in R stream");
        rules.push_back({map_symbol(left), map_symbol(right)});
    }
    std::vector<SymbolId> start;
    for (;;) {
        std::uint32_t s = read_i32(c_stream, ok);
        if (!ok) break;
        start.push_back(map_symbol(s));
    }
    if (start.empty()) throw FormatError("empty C stream");

    // append the terminator if the produced string does not already end in it
    std::vector<std::vector<SymbolId>> all = rules;
    SymbolId last = start.back();
    while (!is_terminal(last)) {
        const auto& production = all[rule_id(last)];
        last = production.back();
    }
    if (terminal_byte(last) != kTerminator) {
        start.push_back(kTerminator);
    }
    all.push_back(std::move(start));
    const std::uint32_t start_id = static_cast<std::uint32_t>(all.size() - 1);
    return Grammar::from_rules(std::move(all), start_id);
}

}
