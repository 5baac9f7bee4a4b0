#include "cdx/bench.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "cdx/matcher.hpp"
#include "json.hpp"

namespace cdx {

BenchReport run_bench(const Grammar& g, const PositionIndex& idx,
                      const Cdawg& c, const BenchConfig& config) {
    BenchReport report;
    report.text_len = g.text_length();
    report.grammar = g.stats();
    report.automaton = c.stats();
    report.seed = config.seed;

    std::mt19937_64 rng(config.seed);
    AccessCounters extract_counters;  // pattern extraction is not measured
    const std::uint64_t n = g.text_length();
    if (config.reps == 0) throw LengthError("reps must be positive");
    for (std::uint64_t len : config.lengths) {
        if (len == 0 || len > n) {
            throw LengthError("pattern length " + std::to_string(len) +
                              " outside text of length " + std::to_string(n));
        }
    }

    for (std::uint64_t len : config.lengths) {
        std::vector<std::string> patterns;
        patterns.reserve(config.reps);
        for (std::uint64_t r = 0; r < config.reps; ++r) {
            std::uint64_t pos = rng() % (n - len + 1);
            patterns.push_back(
                access_range(idx, g, pos, pos + len - 1, extract_counters));
        }

        BenchRow row;
        row.pattern_len = len;
        row.reps = config.reps;
        AccessCounters counters;
        RandomAccessContext ctx{g, idx, counters};
        std::uint64_t total_occ = 0;
        auto t0 = std::chrono::steady_clock::now();
        for (const auto& pattern : patterns) {
            total_occ += locate(c, ctx, pattern).size();
        }
        auto t1 = std::chrono::steady_clock::now();
        double total_us =
            std::chrono::duration<double, std::micro>(t1 - t0).count();
        row.avg_query_us = total_us / static_cast<double>(config.reps);
        row.avg_occurrences =
            static_cast<double>(total_occ) / static_cast<double>(config.reps);
        row.ra_calls = counters.ra_calls;
        row.chars_decoded = counters.chars_decoded;
        report.rows.push_back(row);
    }
    return report;
}

std::string format_report(const BenchReport& report, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["text_len"] = report.text_len;
        j["seed"] = report.seed;
        j["grammar"] = {{"rules", report.grammar.rules},
                        {"size", report.grammar.size},
                        {"height", report.grammar.height},
                        {"start_len", report.grammar.start_len}};
        j["cdawg"] = {{"nodes", report.automaton.nodes},
                      {"edges", report.automaton.edges},
                      {"source_out_degree", report.automaton.source_out_degree}};
        j["rows"] = nlohmann::json::array();
        for (const auto& row : report.rows) {
            j["rows"].push_back({{"pattern_len", row.pattern_len},
                                 {"reps", row.reps},
                                 {"avg_query_us", row.avg_query_us},
                                 {"avg_occurrences", row.avg_occurrences},
                                 {"ra_calls", row.ra_calls},
                                 {"chars_decoded", row.chars_decoded}});
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "text_len=" << report.text_len << " rules=" << report.grammar.rules
        << " grammar_size=" << report.grammar.size
        << " height=" << report.grammar.height
        << " cdawg_nodes=" << report.automaton.nodes
        << " cdawg_edges=" << report.automaton.edges
        << " seed=" << report.seed << "\n";
    out << "len\treps\tavg_us\tavg_occ\tra_calls\tchars_decoded\n";
    for (const auto& row : report.rows) {
        out << row.pattern_len << "\t" << row.reps << "\t" << row.avg_query_us
            << "\t" << row.avg_occurrences << "\t" << row.ra_calls << "\t"
            << row.chars_decoded << "\n";
    }
    return out.str();
}

}
