// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include <benchmark/benchmark.h>

#include <random>

#include "sdglab/clustering.hpp"
#include "sdglab/index.hpp"
#include "sdglab/overlap.hpp"
#include "sdglab/query.hpp"
#include "sdglab/synthetic.hpp"
#include "sdglab/termmap.hpp"

using namespace sdglab;

namespace {

const Corpus& random_corpus(std::size_t n) {
    static std::map<std::size_t, Corpus> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        RandomCorpusSpec spec;
        spec.documents = n;
        it = cache.emplace(n, generate_random_corpus(spec)).first;
    }
    return it->second;
}

const SyntheticCorpora& demo() {
    static const SyntheticCorpora c = generate_corpora(SyntheticSpec{});
    return c;
}

}  // namespace

static void BM_IndexBuild(benchmark::State& state) {
    const auto& c = random_corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(PositionalIndex::build(c));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndexBuild)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_Evaluate(benchmark::State& state) {
    const auto& c = random_corpus(10000);
    static const auto idx = PositionalIndex::build(c);
    const char* queries[] = {"flood", "\"climate change\"", "\"climate impact\"~3", "mod* AND NOT ocean",
                             "(\"crop breed*\" OR drought) AND TITLE(risk)"};
    auto query = parse_query(queries[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(query, idx, FieldSet::all()));
    state.SetLabel(queries[state.range(0)]);
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

static void BM_ParseQuery(benchmark::State& state) {
    const std::string text = "\"climate change\" AND (\"policies\" OR \"education\" OR \"impact\") AND NOT "
                             "(\"prehistoric climate\" OR blood OR \"organizational climate\")";
    for (auto _ : state) benchmark::DoNotOptimize(parse_query(text));
}
BENCHMARK(BM_ParseQuery);

static void BM_ClusterDemo(benchmark::State& state) {
    auto graph = build_citation_graph(demo().broad);
    for (auto _ : state) benchmark::DoNotOptimize(cluster_citation_graph(graph, 1.0, 42));
    state.counters["nodes"] = static_cast<double>(graph.nodes.size());
    state.counters["edges"] = static_cast<double>(graph.edges.size());
}
BENCHMARK(BM_ClusterDemo)->Unit(benchmark::kMillisecond);

static void BM_PairwiseCompare(benchmark::State& state) {
    std::mt19937_64 rng(1);
    auto n = static_cast<std::size_t>(state.range(0));
    auto draw = [&] {
        std::vector<std::string> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back("10.1/" + std::to_string(rng() % (2 * n)));
        return DoiSet(v);
    };
    ResultSet a, b;
    a.doi_members = draw();
    b.doi_members = draw();
    auto cov_a = set_union(a.doi_members, draw()), cov_b = set_union(b.doi_members, draw());
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_compare(a, cov_b, b, cov_a));
}
BENCHMARK(BM_PairwiseCompare)->Arg(10000)->Arg(200000)->Unit(benchmark::kMillisecond);

static void BM_ExtractTerms(benchmark::State& state) {
    std::vector<TermDocument> docs;
    for (const auto& r : demo().broad.records()) docs.push_back({r.id, r.title, r.abstract_text});
    std::span<const TermDocument> all(docs);
    auto half = all.size() / 2;
    auto cfg = TermMapConfig::with_default_stoplist();
    for (auto _ : state) benchmark::DoNotOptimize(extract_terms(all.first(half), all.subspan(half), cfg));
}
BENCHMARK(BM_ExtractTerms)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
