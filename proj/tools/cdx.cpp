#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cdx/bench.hpp"
#include "cdx/cdawg.hpp"
#include "cdx/matcher.hpp"
#include "cdx/oracle.hpp"
#include "cdx/repair.hpp"
#include "cdx/slg.hpp"

namespace {

constexpr int kExitNotFound = 1;
constexpr int kExitError = 2;

cdx::GrammarFormat parse_format(const std::string& name) {
    if (name == "binary") return cdx::GrammarFormat::binary;
    if (name == "text") return cdx::GrammarFormat::text;
    throw cdx::FormatError("unknown grammar format: " + name);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cdx::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

cdx::Grammar load_grammar_file(const std::string& path,
                               const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cdx::Error("cannot open " + path);
    return cdx::load_grammar(in, parse_format(format));
}

void save_grammar_file(const cdx::Grammar& g, const std::string& path,
                       const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cdx::Error("cannot open " + path + " for writing");
    cdx::save_grammar(g, out, parse_format(format));
}

void print_stats(const cdx::Grammar& g) {
    cdx::GrammarStats s = g.stats();
    std::cout << "text_len=" << s.text_len << " rules=" << s.rules
              << " size=" << s.size << " height=" << s.height
              << " start_len=" << s.start_len << "\n";
}

cdx::Cdawg obtain_cdawg(const cdx::Grammar& g, const cdx::PositionIndex& idx,
                        const std::string& index_path,
                        std::size_t cache_capacity) {
    if (!index_path.empty()) {
        std::ifstream in(index_path, std::ios::binary);
        if (!in) throw cdx::Error("cannot open " + index_path);
        return cdx::deserialize_cdawg(in);
    }
    cdx::FifoCache cache(cache_capacity);
    cdx::AccessCounters counters;
    return cdx::build_cdawg(g, idx, cache, counters);
}

int run(int argc, char** argv) {
    CLI::App app{"grammar-compressed full-text index"};
    app.require_subcommand(1);

    std::string in_path, out_path, grammar_path, index_path;
    std::string format = "binary";
    std::string c_path, r_path;
    std::string pattern, op = "locate";
    std::size_t cache_capacity = cdx::FifoCache::kDefaultCapacity;
    bool run_oracle = false, as_json = false;
    cdx::BenchConfig bench_config;

    auto* compress = app.add_subcommand(
        "compress", "build a grammar from raw text by recursive pairing");
    compress->add_option("-i,--input", in_path, "input text file")->required();
    compress->add_option("-o,--output", out_path, "grammar output file")
        ->required();
    compress->add_option("--format", format, "grammar format: binary|text");

    auto* import = app.add_subcommand(
        "import", "convert a .C/.R compressor output pair into a grammar");
    import->add_option("--c", c_path, ".C sequence file")->required();
    import->add_option("--r", r_path, ".R rules file")->required();
    import->add_option("-o,--output", out_path, "grammar output file")
        ->required();
    import->add_option("--format", format, "grammar format: binary|text");

    auto* index = app.add_subcommand(
        "index", "build the pattern-matching automaton for a grammar");
    index->add_option("-g,--grammar", grammar_path, "grammar file")->required();
    index->add_option("-o,--output", out_path, "index output file")->required();
    index->add_option("--format", format, "grammar format: binary|text");
    index->add_option("--cache-capacity", cache_capacity,
                      "construction character cache size (0 disables)");

    auto* query = app.add_subcommand("query", "run a pattern query");
    query->add_option("-g,--grammar", grammar_path, "grammar file")->required();
    query->add_option("--index", index_path,
                      "prebuilt index file (built on the fly when omitted)");
    query->add_option("-p,--pattern", pattern, "pattern string")->required();
    query->add_option("--op", op, "exists|count|locate")
        ->check(CLI::IsMember({"exists", "count", "locate"}));
    query->add_option("--format", format, "grammar format: binary|text");
    query->add_option("--cache-capacity", cache_capacity,
                      "construction character cache size (0 disables)");

    auto* stats = app.add_subcommand("stats", "print grammar and index sizes");
    stats->add_option("-g,--grammar", grammar_path, "grammar file")->required();
    stats->add_option("--index", index_path,
                      "prebuilt index file (built on the fly with --oracle "
                      "when omitted)");
    stats->add_option("--format", format, "grammar format: binary|text");
    stats->add_flag("--oracle", run_oracle,
                    "cross-check automaton sizes against a brute-force "
                    "repeat enumeration (small texts only)");

    auto* bench = app.add_subcommand("bench", "time pattern queries");
    bench->add_option("-g,--grammar", grammar_path, "grammar file")->required();
    bench->add_option("--index", index_path,
                      "prebuilt index file (built on the fly when omitted)");
    bench->add_option("--format", format, "grammar format: binary|text");
    bench->add_option("--lengths", bench_config.lengths, "pattern lengths");
    bench->add_option("--reps", bench_config.reps, "queries per length");
    bench->add_option("--seed", bench_config.seed, "random seed");
    bench->add_flag("--json", as_json, "emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    if (compress->parsed()) {
        cdx::Grammar g = cdx::repair_compress(read_file(in_path));
        save_grammar_file(g, out_path, format);
        print_stats(g);
        return 0;
    }
    if (import->parsed()) {
        std::ifstream c_in(c_path, std::ios::binary);
        std::ifstream r_in(r_path, std::ios::binary);
        if (!c_in) throw cdx::Error("cannot open " + c_path);
        if (!r_in) throw cdx::Error("cannot open " + r_path);
        cdx::Grammar g = cdx::import_navarro(c_in, r_in);
        save_grammar_file(g, out_path, format);
        print_stats(g);
        return 0;
    }
    if (index->parsed()) {
        cdx::Grammar g = load_grammar_file(grammar_path, format);
        cdx::PositionIndex idx = cdx::build_position_index(g);
        cdx::FifoCache cache(cache_capacity);
        cdx::AccessCounters counters;
        cdx::Cdawg c = cdx::build_cdawg(g, idx, cache, counters);
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw cdx::Error("cannot open " + out_path + " for writing");
        cdx::serialize_cdawg(c, out);
        cdx::CdawgStats cs = c.stats();
        std::cout << "nodes=" << cs.nodes << " edges=" << cs.edges
                  << " ra_calls=" << counters.ra_calls
                  << " cache_hits=" << counters.cache_hits << "\n";
        return 0;
    }
    if (query->parsed()) {
        cdx::Grammar g = load_grammar_file(grammar_path, format);
        cdx::PositionIndex idx = cdx::build_position_index(g);
        cdx::Cdawg c = obtain_cdawg(g, idx, index_path, cache_capacity);
        cdx::AccessCounters counters;
        cdx::RandomAccessContext ctx{g, idx, counters};
        if (op == "exists") {
            bool found = cdx::exists(c, ctx, pattern);
            std::cout << (found ? "true" : "false") << "\n";
            return found ? 0 : kExitNotFound;
        }
        if (op == "count") {
            std::cout << cdx::count(c, ctx, pattern) << "\n";
            return 0;
        }
        for (std::uint64_t pos : cdx::locate(c, ctx, pattern)) {
            std::cout << pos << "\n";
        }
        return 0;
    }
    if (stats->parsed()) {
        cdx::Grammar g = load_grammar_file(grammar_path, format);
        print_stats(g);
        if (index_path.empty() && !run_oracle) return 0;
        cdx::PositionIndex idx = cdx::build_position_index(g);
        cdx::Cdawg c = obtain_cdawg(g, idx, index_path, cache_capacity);
        cdx::CdawgStats cs = c.stats();
        std::cout << "cdawg_nodes=" << cs.nodes << " cdawg_edges=" << cs.edges
                  << " source_out_degree=" << cs.source_out_degree << "\n";
        std::cout << "size_report: N=" << g.total_size() << " er=" << cs.edges
                  << " verdict="
                  << (g.total_size() < cs.edges ? "grammar-smaller"
                                                : "index-smaller-or-equal")
                  << "\n";
        if (run_oracle) {
            cdx::RepeatReport report = cdx::maximal_repeats(cdx::expand(g));
            std::cout << "oracle_maximal_repeats="
                      << report.maximal_repeats.size()
                      << " oracle_er=" << report.er
                      << " node_match="
                      << (cs.nodes == report.maximal_repeats.size() + 1
                              ? "yes" : "no")
                      << " edge_match=" << (cs.edges == report.er ? "yes" : "no")
                      << "\n";
        }
        return 0;
    }
    if (bench->parsed()) {
        cdx::Grammar g = load_grammar_file(grammar_path, format);
        cdx::PositionIndex idx = cdx::build_position_index(g);
        cdx::Cdawg c = obtain_cdawg(g, idx, index_path,
                                    cdx::FifoCache::kDefaultCapacity);
        cdx::BenchReport report = cdx::run_bench(g, idx, c, bench_config);
        std::cout << cdx::format_report(report, as_json);
        return 0;
    }
    return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
