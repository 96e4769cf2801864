// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

// sdglab command line: every pipeline stage as its own subcommand, plus the
// full pipeline driven by a JSON config.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sdglab/clustering.hpp"
#include "sdglab/corpus.hpp"
#include "sdglab/index.hpp"
#include "sdglab/io.hpp"
#include "sdglab/overlap.hpp"
#include "sdglab/pipeline.hpp"
#include "sdglab/query.hpp"
#include "sdglab/result_set.hpp"
#include "sdglab/strategy.hpp"
#include "sdglab/synthetic.hpp"
#include "sdglab/termmap.hpp"

namespace {

using namespace sdglab;

// Usage errors map to the config exit code.
class UsageError : public LoadError {
public:
    using LoadError::LoadError;
};

std::optional<YearWindow> parse_window(const std::string& text) {
    if (text.empty()) return std::nullopt;
    int a = 0, b = 0;
    char dash = 0;
    std::istringstream in(text);
    if (!(in >> a >> dash >> b) || dash != '-' || !in.eof()) throw UsageError("window must look like 2015-2019");
    return YearWindow(a, b);
}

Corpus load_corpus(const std::string& path, const std::string& name, const std::string& coverage) {
    DoiSet extra;
    if (!coverage.empty()) extra = load_coverage_file(coverage);
    return ingest_corpus_file(path, name.empty() ? std::filesystem::path(path).stem().string() : name, std::move(extra));
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-")
        std::cout << content;
    else
        write_file_atomic(out, content);
}

std::string result_text(const ResultSet& r) {
    std::ostringstream s;
    save_result(s, r);
    return s.str();
}

DoiSet coverage_of(const std::string& corpus_file, const std::string& coverage_file) {
    DoiSet cov;
    if (!corpus_file.empty()) cov = load_corpus(corpus_file, "", "").coverage();
    if (!coverage_file.empty()) cov = set_union(cov, load_coverage_file(coverage_file));
    return cov;
}

}  // namespace

int main(int argc, char** argv) {
    init_logging_from_env();

    CLI::App app{"sdglab: search-strategy evaluation for bibliographic corpora"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(library_version()));

    // ingest
    std::string in_path, name, coverage_path, out_path;
    auto* ingest = app.add_subcommand("ingest", "validate a JSONL corpus and print a summary");
    ingest->add_option("input", in_path, "corpus JSONL")->required();
    ingest->add_option("--name", name, "corpus name (default: file stem)");
    ingest->add_option("--coverage", coverage_path, "extra coverage DOIs, one per line");
    ingest->add_option("--out", out_path, "write the normalized corpus here");
    ingest->callback([&] {
        auto c = load_corpus(in_path, name, coverage_path);
        std::size_t with_doi = 0;
        for (const auto& r : c.records()) with_doi += r.doi ? 1 : 0;
        fmt::print("corpus {}: {} records, {} with DOI, {} coverage DOIs\n", c.name(), c.size(), with_doi,
                   c.coverage().size());
        for (const auto& [year, n] : c.year_counts()) fmt::print("  {}: {}\n", year, n);
        if (!out_path.empty()) {
            std::ostringstream s;
            serialize_corpus(s, c);
            write_file_atomic(out_path, s.str());
        }
    });

    // index
    auto* index = app.add_subcommand("index", "build a positional index");
    index->add_option("corpus", in_path, "corpus JSONL")->required();
    index->add_option("--out", out_path, "index file")->required();
    index->callback([&] {
        auto c = load_corpus(in_path, "", "");
        auto idx = PositionalIndex::build(c);
        std::ostringstream s;
        idx.save(s);
        write_file_atomic(out_path, s.str());
        fmt::print("{} documents, {} terms, {} positions\n", idx.doc_count(), idx.terms().size(), idx.total_positions());
    });

    // parse
    std::string query_text;
    bool show_tree = false;
    auto* parse = app.add_subcommand("parse", "parse a query and print its canonical form");
    parse->add_option("query", query_text, "query text")->required();
    parse->add_flag("--explain", show_tree, "print the operator tree");
    parse->callback([&] {
        auto q = parse_query(query_text);
        fmt::print("{}\n", to_string(q));
        if (show_tree) fmt::print("{}", explain(q));
    });

    // run
    std::string strategy_path, window_text;
    auto* run = app.add_subcommand("run", "run a strategy's seed and exclusion queries over a corpus");
    run->add_option("--strategy", strategy_path, "strategy JSON")->required();
    run->add_option("--corpus", in_path, "corpus JSONL")->required();
    run->add_option("--name", name, "corpus name");
    run->add_option("--window", window_text, "override the strategy window, e.g. 2015-2019");
    run->add_option("--out", out_path, "result JSON (default stdout)");
    run->callback([&] {
        auto s = load_strategy_file(strategy_path);
        if (auto w = parse_window(window_text)) s.window = *w;
        auto c = load_corpus(in_path, name, "");
        auto idx = PositionalIndex::build(c);
        auto r = run_strategy_detailed(s, idx, c);
        spdlog::info("{}: {} members, {} excluded, {} outside window", s.name, r.result.members.size(), r.excluded,
                     r.outside_window);
        emit(out_path, result_text(r.result));
    });

    // cluster
    double resolution = 1.0;
    std::uint64_t seed = 42;
    auto* cluster = app.add_subcommand("cluster", "partition a corpus citation graph");
    cluster->add_option("corpus", in_path, "corpus JSONL")->required();
    cluster->add_option("--resolution", resolution, "modularity resolution");
    cluster->add_option("--seed", seed, "random seed");
    cluster->add_option("--out", out_path, "assignment TSV (default stdout)");
    cluster->callback([&] {
        auto c = load_corpus(in_path, "", "");
        auto g = build_citation_graph(c);
        auto a = cluster_citation_graph(g, resolution, seed);
        spdlog::info("{} nodes, {} edges, {} clusters", g.nodes.size(), g.edges.size(), a.cluster_count());
        std::ostringstream s;
        a.save(s);
        emit(out_path, s.str());
    });

    // enhance
    std::string result_path, assignment_path;
    double threshold = 0.15;
    auto* enhance = app.add_subcommand("enhance", "add whole citation clusters above a seed-share threshold");
    enhance->add_option("--result", result_path, "seed result JSON")->required();
    enhance->add_option("--corpus", in_path, "corpus JSONL")->required();
    enhance->add_option("--assignment", assignment_path, "cluster assignment TSV (default: cluster the corpus)");
    enhance->add_option("--threshold", threshold, "minimum seed share")->check(CLI::Range(0.0, 1.0));
    enhance->add_option("--resolution", resolution, "modularity resolution when clustering");
    enhance->add_option("--seed", seed, "random seed when clustering");
    enhance->add_option("--window", window_text, "year window, e.g. 2015-2019")->required();
    enhance->add_option("--out", out_path, "result JSON (default stdout)");
    enhance->callback([&] {
        auto seeds = load_result_file(result_path);
        auto c = load_corpus(in_path, seeds.corpus_name, "");
        EnhancementSpec spec;
        spec.threshold = threshold;
        spec.resolution = resolution;
        spec.seed = seed;
        if (!assignment_path.empty()) {
            spec.source = EnhancementSpec::Source::external;
            spec.assignment_file = std::filesystem::absolute(assignment_path).string();
        }
        ClusterThresholdEnhancer enhancer(spec);
        auto outcome = enhancer.enhance(seeds, c, *parse_window(window_text));
        spdlog::info("{} clusters included, {} excluded, {} seeds lost, {} added", outcome.report.clusters_included,
                     outcome.report.clusters_excluded, outcome.report.seeds_lost, outcome.report.members_added);
        emit(out_path, result_text(outcome.result));
    });

    // compare
    std::string a_path, b_path, cov_a, cov_b, corpus_a, corpus_b, out_dir;
    std::size_t sample = 25;
    auto* compare = app.add_subcommand("compare", "overlap and surplus decomposition of two results");
    compare->add_option("--a", a_path, "result JSON A")->required();
    compare->add_option("--b", b_path, "result JSON B")->required();
    compare->add_option("--coverage-a", cov_a, "DOIs indexed by A's database");
    compare->add_option("--coverage-b", cov_b, "DOIs indexed by B's database");
    compare->add_option("--corpus-a", corpus_a, "A's corpus; its record DOIs join A's coverage");
    compare->add_option("--corpus-b", corpus_b, "B's corpus; its record DOIs join B's coverage");
    compare->add_option("--out-dir", out_dir, "write overlap.svg, overlap.json and detail.json here");
    compare->add_option("--sample", sample, "DOIs listed per segment in detail.json (0: all)");
    compare->callback([&] {
        if (cov_a.empty() && corpus_a.empty()) throw UsageError("compare needs --coverage-a or --corpus-a");
        if (cov_b.empty() && corpus_b.empty()) throw UsageError("compare needs --coverage-b or --corpus-b");
        auto a = load_result_file(a_path);
        auto b = load_result_file(b_path);
        auto cmp = pairwise_compare(a, coverage_of(corpus_b, cov_b), b, coverage_of(corpus_a, cov_a));
        fmt::print("{}\n{}\n", overlap_csv_header(), overlap_csv_row(cmp.name_a, cmp.name_b, cmp.counts()));
        if (!out_dir.empty()) {
            auto fig = render_overlap_bar(cmp);
            write_file_atomic(std::filesystem::path(out_dir) / "overlap.svg", fig.svg);
            write_file_atomic(std::filesystem::path(out_dir) / "overlap.json", fig.json);
            write_file_atomic(std::filesystem::path(out_dir) / "detail.json", comparison_detail_json(cmp, sample));
        }
    });

    // termmap
    std::size_t min_occ = 70, max_ngram = 3;
    std::string format = "html";
    auto* termmap = app.add_subcommand("termmap", "contrast term map of two results");
    termmap->add_option("--a", a_path, "result JSON A")->required();
    termmap->add_option("--b", b_path, "result JSON B")->required();
    termmap->add_option("--corpus-a", corpus_a, "A's corpus")->required();
    termmap->add_option("--corpus-b", corpus_b, "B's corpus (default: A's)");
    termmap->add_option("--min-occurrences", min_occ, "minimum occ_a + occ_b");
    termmap->add_option("--max-ngram", max_ngram, "longest term in tokens");
    termmap->add_option("--seed", seed, "layout seed");
    termmap->add_option("--format", format, "json, graphml or html")->check(CLI::IsMember({"json", "graphml", "html"}));
    termmap->add_option("--out", out_path, "output file")->required();
    termmap->callback([&] {
        auto a = load_result_file(a_path);
        auto b = load_result_file(b_path);
        auto ca = load_corpus(corpus_a, a.corpus_name, "");
        auto cb = corpus_b.empty() ? ca : load_corpus(corpus_b, b.corpus_name, "");
        auto config = TermMapConfig::with_default_stoplist();
        config.min_occurrences = min_occ;
        config.max_ngram = max_ngram;
        if (termmap->count("--seed")) config.layout_seed = seed;
        auto map = build_term_map(a.strategy_name, b.strategy_name, term_documents(a, ca), term_documents(b, cb), config);
        auto f = format == "json" ? TermMapFormat::json : format == "graphml" ? TermMapFormat::graphml : TermMapFormat::html;
        export_term_map(map, f, out_path);
        fmt::print("{} terms, {} links\n", map.terms.size(), map.edges.size());
    });

    // report
    std::string bundle_path, report_format = "markdown";
    auto* report = app.add_subcommand("report", "re-emit report tables from a bundle.json");
    report->add_option("--bundle", bundle_path, "reports/bundle.json of a pipeline run")->required();
    report->add_option("--format", report_format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
    report->add_option("--out-dir", out_dir, "directory that receives reports/")->required();
    report->callback([&] {
        auto bundle = load_report_bundle(read_file(bundle_path));
        auto files = emit_report(bundle, report_format == "csv" ? ReportFormat::csv : ReportFormat::markdown, out_dir);
        for (const auto& [rel, hash] : files) fmt::print("{}  {}\n", hash, rel);
    });

    // pipeline
    std::string config_path;
    auto* pipeline = app.add_subcommand("pipeline", "run every stage from a JSON config");
    pipeline->add_option("--config", config_path, "pipeline config")->required();
    pipeline->callback([&] {
        PipelineConfig config;
        try {
            config = load_pipeline_config(config_path);
        } catch (const std::exception& e) {
            throw StageError("config", e);
        }
        auto bundle = run_pipeline(config);
        fmt::print("{} strategies, {} comparisons, {} files written to {}\n", bundle.table3.size(), bundle.table5.size(),
                   bundle.files.size() + 1, config.output_dir.string());
    });

    // strategy summarize
    auto* strategy = app.add_subcommand("strategy", "inspect strategy files");
    strategy->require_subcommand(1);
    auto* summarize = strategy->add_subcommand("summarize", "term-class counts of a strategy");
    summarize->add_option("file", strategy_path, "strategy JSON")->required();
    summarize->callback([&] {
        auto s = load_strategy_file(strategy_path);
        auto t = term_class_summary(s);
        fmt::print("{}\n{}\n", term_class_csv_header(), term_class_csv_row(t));
    });

    // generate
    SyntheticSpec spec;
    auto* generate = app.add_subcommand("generate", "write the synthetic demo corpora");
    generate->add_option("--out-dir", out_dir, "output directory")->required();
    generate->add_option("--seed", spec.seed, "generator seed");
    generate->add_option("--topics", spec.topics, "number of topics");
    generate->add_option("--docs-per-topic", spec.docs_per_topic, "records per topic");
    generate->callback([&] {
        auto g = generate_corpora(spec);
        auto dir = std::filesystem::path(out_dir);
        for (const auto* c : {&g.broad, &g.selective}) {
            std::ostringstream s;
            serialize_corpus(s, *c);
            write_file_atomic(dir / (c->name() + ".jsonl"), s.str());
        }
        for (const auto& [file, cov] : {std::pair{"broad_coverage.txt", &g.broad_extra},
                                        std::pair{"selective_coverage.txt", &g.selective_extra}}) {
            std::ostringstream s;
            save_coverage(s, *cov);
            write_file_atomic(dir / file, s.str());
        }
        fmt::print("broad: {} records, selective: {} records\n", g.broad.size(), g.selective.size());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::config);
    } catch (const std::exception& e) {
        fmt::print(stderr, "sdglab: {}\n", e.what());
        return static_cast<int>(exit_code_for(e));
    }
    return 0;
}
