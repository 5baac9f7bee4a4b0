#ifndef INCLUDED_CDX_BENCH
#define INCLUDED_CDX_BENCH

#include <cstdint>
#include <string>
#include <vector>

#include "cdx/cdawg.hpp"
#include "cdx/random_access.hpp"
#include "cdx/slg.hpp"

namespace cdx {

struct BenchConfig {
    std::vector<std::uint64_t> lengths = {10, 100, 1000, 10000};
    std::uint64_t reps = 1000;
    std::uint64_t seed = 0;
};

struct BenchRow {
    std::uint64_t pattern_len = 0;
    std::uint64_t reps = 0;
    double avg_query_us = 0.0;        // locate, averaged per query
    double avg_occurrences = 0.0;
    std::uint64_t ra_calls = 0;       // across all queries of this row
    std::uint64_t chars_decoded = 0;
};

struct BenchReport {
    std::uint64_t text_len = 0;
    GrammarStats grammar;
    CdawgStats automaton;
    std::uint64_t seed = 0;
    std::vector<BenchRow> rows;
};

/** Times locate queries for patterns sampled uniformly from the text
 * (terminator excluded; deterministic given the seed — a 64-bit Mersenne
 * Twister with modulo reduction, whose bias is negligible at these
 * ranges). Pattern extraction happens before the clock starts; lengths
 * that do not fit in the text are skipped. */
BenchReport run_bench(const Grammar& g, const PositionIndex& idx,
                      const Cdawg& c, const BenchConfig& config);

std::string format_report(const BenchReport& report, bool as_json);

}

#endif
