#ifndef INCLUDED_CDX_SLG
#define INCLUDED_CDX_SLG

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cdx/errors.hpp"

namespace cdx {

/** A grammar symbol packed into one integer: values below 256 are terminal
 * bytes, values at or above 256 reference rule (value - 256). */
using SymbolId = std::uint32_t;

constexpr SymbolId kRuleBase = 256;
constexpr std::uint8_t kTerminator = 0x24;  // '$'

inline bool is_terminal(SymbolId s) { return s < kRuleBase; }
inline std::uint8_t terminal_byte(SymbolId s) { return static_cast<std::uint8_t>(s); }
inline std::uint32_t rule_id(SymbolId s) { return s - kRuleBase; }
inline SymbolId rule_symbol(std::uint32_t id) { return id + kRuleBase; }

enum class GrammarFormat { binary, text };

struct GrammarStats {
    std::uint32_t rules;       // number of rules
    std::uint64_t size;        // N, sum of production lengths
    std::uint32_t height;      // H, terminals at depth 0
    std::uint64_t start_len;   // |R[S]|
    std::uint64_t text_len;    // n
};

/** A validated straight-line grammar producing exactly one '$'-terminated
 * string. Immutable after construction; safe for concurrent readers. */
class Grammar {
public:
    /** Validates and adopts a rule table. Rejects cycles, empty productions,
     * dangling references, rules unreachable from the start rule, and
     * expansions that do not end in a single unique terminator. */
    static Grammar from_rules(std::vector<std::vector<SymbolId>> rules,
                              std::uint32_t start);

    /** Wraps raw text in a terminal-only start rule, appending the
     * terminator if absent. Rejects text with an interior terminator. */
    static Grammar from_text(std::string_view text);

    std::uint32_t rule_count() const { return static_cast<std::uint32_t>(rules_.size()); }
    std::uint32_t start_rule() const { return start_; }
    const std::vector<SymbolId>& rule(std::uint32_t id) const { return rules_[id]; }
    const std::vector<SymbolId>& start_production() const { return rules_[start_]; }

    std::uint64_t text_length() const { return text_len_; }   // n
    std::uint64_t total_size() const { return total_size_; }  // N
    std::uint32_t height() const { return height_; }          // H

    /** Expanded length of a symbol; O(1) via the per-rule memo. */
    std::uint64_t expansion_length(SymbolId s) const {
        return is_terminal(s) ? 1 : rule_lengths_[rule_id(s)];
    }

    GrammarStats stats() const;

    bool operator==(const Grammar& other) const {
        return rules_ == other.rules_ && start_ == other.start_;
    }

private:
    Grammar() = default;

    std::vector<std::vector<SymbolId>> rules_;
    std::vector<std::uint64_t> rule_lengths_;
    std::uint32_t start_ = 0;
    std::uint64_t text_len_ = 0;
    std::uint64_t total_size_ = 0;
    std::uint32_t height_ = 0;
};

/** Pull-based left-to-right expansion of the produced string. Keeps an
 * explicit rule-position stack, so working memory is O(H) and a consumer
 * may stop early. Each stream owns private cursor state. */
class ExpandStream {
public:
    explicit ExpandStream(const Grammar& g);

    /** Produces the next character, or false at end of text. */
    bool next(std::uint8_t& out);

    std::uint64_t produced() const { return produced_; }

private:
    const Grammar* grammar_;
    struct Frame { std::uint32_t rule; std::uint64_t pos; };
    std::vector<Frame> stack_;
    std::uint64_t produced_ = 0;
};

/** Convenience: the full produced string. */
std::string expand(const Grammar& g);

/** Reads a grammar in the SLG1 binary format or the one-rule-per-line
 * text format; the result is validated. */
Grammar load_grammar(std::istream& in, GrammarFormat format);

void save_grammar(const Grammar& g, std::ostream& out, GrammarFormat format);

/** Reads the .C/.R output pair of Navarro's Re-Pair tool: R holds an i32
 * alphabet size followed by i32 pairs (one rule each), C holds the i32
 * compressed sequence that becomes the start rule. */
Grammar import_navarro(std::istream& c_stream, std::istream& r_stream);

}

#endif
