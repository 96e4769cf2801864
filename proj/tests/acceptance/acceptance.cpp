// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

// Acceptance suite. One PASS/FAIL line per criterion.
//
// Exit status is 0 only when the set of failing criteria equals
// kKnownUnattainable exactly; an unexpected failure or an unexpected pass
// both exit 1, so the known list cannot silently go stale.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "sdglab/clustering.hpp"
#include "sdglab/io.hpp"
#include "sdglab/overlap.hpp"
#include "sdglab/pipeline.hpp"
#include "sdglab/query.hpp"
#include "sdglab/strategy.hpp"
#include "sdglab/synthetic.hpp"
#include "sdglab/termmap.hpp"

using namespace sdglab;

namespace {

// Pinned tolerances, in percentage points.
constexpr double kDoiShareTol = 0.05;
constexpr double kSegmentShareTol = 0.1;
constexpr double kRowSumTol = 0.2;

// The published STRINGS share (83.7%) is not what its own counts give
// (156,010 / 166,528 = 93.68%), so this criterion cannot pass honestly.
const std::set<std::string> kKnownUnattainable = {"table3-doi-shares"};

const std::filesystem::path kData = SDGLAB_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

// ---- published figures ----

Outcome table3_doi_shares() {
    struct Row {
        const char* name;
        std::uint64_t total, with_doi;
        double printed;
    };
    const Row rows[] = {{"Elsevier 2021", 214369, 195734, 91.3},
                        {"STRINGS", 166528, 156010, 83.7},
                        {"SIRIS", 177154, 164800, 93.0},
                        {"Dimensions", 205190, 203447, 99.2}};
    Outcome o;
    std::string shown;
    for (const auto& r : rows) {
        double pct = 100.0 * doi_share(r.with_doi, r.total);
        shown += fmt::format("{}{} {:.2f}", shown.empty() ? "" : ", ", r.name, pct);
        if (std::fabs(pct - r.printed) > kDoiShareTol)
            o.fail(fmt::format("{} computes {:.2f}, printed {:.1f}", r.name, pct, r.printed));
    }
    if (o.pass) o.detail = shown;
    return o;
}

Outcome table5_segment_shares() {
    struct Row {
        const char* pair;
        std::uint64_t n[5];
        double printed[5];
    };
    const Row rows[] = {
        {"Elsevier-STRINGS", {44764, 102702, 48269, 104792, 2949}, {14.8, 33.8, 15.9, 34.5, 1.0}},
        {"Elsevier-SIRIS", {44764, 69502, 81469, 80421, 2910}, {16.0, 24.9, 29.2, 28.8, 1.0}},
        {"Elsevier-Dimensions", {7103, 104613, 84019, 82587, 36831}, {2.3, 33.2, 26.7, 26.2, 11.7}},
        {"STRINGS-SIRIS", {0, 102564, 53446, 111354, 0}, {0.0, 38.4, 20.0, 41.6, 0.0}},
        {"Dimensions-STRINGS", {76389, 84629, 42429, 112522, 1059}, {24.1, 26.7, 13.4, 35.5, 0.3}},
        {"Dimensions-SIRIS", {76389, 68933, 58125, 105494, 1181}, {24.6, 22.2, 18.7, 34.0, 0.4}},
    };
    Outcome o;
    std::size_t cells = 0;
    double worst = 0;
    for (const auto& r : rows) {
        SegmentCounts c;
        std::copy(std::begin(r.n), std::end(r.n), c.counts.begin());
        double row_sum = 0;
        for (std::size_t k = 0; k < 5; ++k) {
            double pct = 100.0 * c.share(kSegments[k]);
            double reported = static_cast<double>(c.percent_tenths(kSegments[k])) / 10.0;
            worst = std::max(worst, std::fabs(pct - r.printed[k]));
            if (std::fabs(pct - r.printed[k]) > kSegmentShareTol)
                o.fail(fmt::format("{} segment {} computes {:.2f}, printed {:.1f}", r.pair, k, pct, r.printed[k]));
            if (std::fabs(reported - r.printed[k]) > kSegmentShareTol)
                o.fail(fmt::format("{} segment {} reports {:.1f}", r.pair, k, reported));
            row_sum += reported;
            ++cells;
        }
        if (std::fabs(row_sum - 100.0) > kRowSumTol) o.fail(fmt::format("{} sums to {:.1f}", r.pair, row_sum));
    }
    if (o.pass) o.detail = fmt::format("{} cells, max deviation {:.3f} pp", cells, worst);
    return o;
}

Outcome table4_term_classes() {
    struct Row {
        const char* file;
        std::size_t g, p, t, total;
        std::int64_t gp, pp, tp;
    };
    const Row rows[] = {{"elsevier.json", 210, 62, 186, 458, 46, 14, 41},
                        {"strings.json", 70, 24, 4, 98, 71, 24, 4},
                        {"siris.json", 119, 55, 54, 228, 52, 24, 24},
                        {"dimensions.json", 34, 9, 2, 45, 76, 20, 4}};
    Outcome o;
    for (const auto& r : rows) {
        auto s = term_class_summary(load_strategy_file((kData / "strategies" / r.file).string()));
        if (s.general != r.g || s.policy != r.p || s.technical != r.t || s.total != r.total)
            o.fail(fmt::format("{}: {}/{}/{}={}", r.file, s.general, s.policy, s.technical, s.total));
        if (s.general_pct() != r.gp || s.policy_pct() != r.pp || s.technical_pct() != r.tp)
            o.fail(fmt::format("{}: shares {}/{}/{}", r.file, s.general_pct(), s.policy_pct(), s.technical_pct()));
    }
    if (o.pass) o.detail = "458, 98, 228, 45 with all twelve whole-percent shares";
    return o;
}

// ---- query engine ----

Outcome query_oracle() {
    RandomCorpusSpec spec;
    spec.documents = 500;
    spec.seed = 2015;
    auto corpus = generate_random_corpus(spec);
    auto idx = PositionalIndex::build(corpus);
    oracle::QueryGenerator gen(default_random_vocabulary(), 13);
    std::size_t mismatches = 0, nonempty = 0;
    std::set<std::size_t> kinds;
    for (int i = 0; i < 200; ++i) {
        auto query = gen.next(3);
        kinds.insert(query.node.index());
        auto want = oracle::scan(query, corpus, FieldSet::all());
        if (evaluate_ids(query, idx, FieldSet::all()).values() != want) ++mismatches;
        nonempty += !want.empty();
    }
    Outcome o;
    if (mismatches) o.fail(fmt::format("{} of 200 queries disagree", mismatches));
    if (kinds.size() < 8) o.fail("generator did not produce every node kind at the root");
    if (o.pass) o.detail = fmt::format("200 queries, 0 mismatches, {} with hits", nonempty);
    return o;
}

PublicationRecord text_doc(std::string id, std::string abstract_text) {
    PublicationRecord r;
    r.id = std::move(id);
    r.title = "untitled";
    r.abstract_text = std::move(abstract_text);
    r.year = 2017;
    return r;
}

Outcome proximity_fidelity() {
    Corpus c("c", {text_doc("hazards", "hazards related to climate change"),
                   text_doc("cci", "climate change impact"),
                   text_doc("changing", "changing climate and its impact on health"),
                   text_doc("far", "climate models rarely if ever capture this impact")});
    auto idx = PositionalIndex::build(c);
    Outcome o;
    auto hits = [&](const char* q) { return evaluate_ids(parse_query(q), idx, FieldSet::all()); };
    auto crh = hits("'Climate related hazards'~3");
    if (!crh.contains("hazards")) o.fail("'Climate related hazards'~3 misses 'hazards related to climate change'");
    auto ci = hits("'climate impact'~3");
    if (!ci.contains("cci")) o.fail("'climate impact'~3 misses 'climate change impact'");
    if (!ci.contains("changing")) o.fail("'climate impact'~3 misses 'changing climate and its impact on health'");
    if (ci.contains("far")) o.fail("'climate impact'~3 matches a span of 7");
    if (o.pass) o.detail = "all three worked examples match; span 7 rejected";
    return o;
}

Outcome exclusion_behavior() {
    PublicationRecord pre = text_doc("pre", "Prehistoric climate reconstructed from lake sediments");
    pre.title = "Climate variability";
    PublicationRecord keep = text_doc("keep", "Climate adaptation in coastal cities");
    keep.title = "Climate adaptation";
    Corpus c("c", {pre, keep});
    auto idx = PositionalIndex::build(c);
    std::istringstream in(R"({"name":"E","window":{"start":2015,"end":2019},
        "seeds":[{"query":"climat*","class":"general"}],
        "exclusions":["\"Prehistoric Climate\""]})");
    auto run = run_strategy_detailed(load_strategy(in), idx, c);
    Outcome o;
    if (run.result.members.contains("pre")) o.fail("excluded document retained");
    if (!run.result.members.contains("keep")) o.fail("unrelated seed match lost");
    if (run.excluded != 1) o.fail(fmt::format("excluded count {}", run.excluded));

    // the shipped broad strategy carries the same exclusion
    auto shipped = load_strategy_file((kData / "strategies" / "elsevier.json").string());
    bool listed = false;
    for (const auto& e : shipped.exclusions)
        listed = listed || e.query == parse_query("\"prehistoric climate\"");
    if (!listed) o.fail("shipped strategy lacks the prehistoric climate exclusion");
    if (o.pass) o.detail = "seed match with 'prehistoric climate' removed";
    return o;
}

// ---- clustering ----

std::string nid(int i) { return fmt::format("n{:04d}", i); }

Outcome cluster_threshold_laws() {
    Outcome o;
    std::mt19937_64 rng(42);
    const double thetas[] = {0.0, 0.05, 0.15, 0.5, 1.0};
    std::size_t fixtures = 0;
    for (int round = 0; round < 500 && o.pass; ++round, ++fixtures) {
        int n = 10 + static_cast<int>(rng() % 400);
        int k = 1 + static_cast<int>(rng() % 50);
        std::map<std::string, std::string> m;
        for (int i = 0; i < n; ++i) m[nid(i)] = fmt::format("k{}", rng() % k);
        ClusterAssignment a(m);
        std::vector<std::string> sv;
        double p = static_cast<double>(rng() % 60) / 100.0;
        for (int i = 0; i < n; ++i)
            if (static_cast<double>(rng() % 1000) < p * 1000) sv.push_back(nid(i));
        IdSet seeds(sv);

        IdSet prev;
        for (std::size_t t = 0; t < std::size(thetas); ++t) {
            auto out = enhance_by_cluster_threshold(seeds, a, thetas[t]).members;
            for (const auto& [label, members] : a.clusters()) {
                std::size_t in = 0;
                for (const auto& id : members) in += out.contains(id);
                if (in != 0 && in != members.size()) o.fail("output splits cluster " + label);
            }
            if (t == 0 && out.size() != a.size()) o.fail("theta 0 does not return every assigned publication");
            if (t > 0 && !set_difference(out, prev).empty()) o.fail("theta monotonicity violated");
            prev = out;
        }
    }

    // boundary and the two anecdotes
    std::map<std::string, std::string> m;
    for (int i = 0; i < 20; ++i) m[nid(i)] = "qualifying";  // 3 of 20 seeded: exactly 0.15
    for (int i = 20; i < 40; ++i) m[nid(i)] = "weak";       // 2 of 20 seeded: 0.10
    ClusterAssignment a(m);
    IdSet seeds{nid(0), nid(1), nid(2), nid(20), nid(21)};
    auto out = enhance_by_cluster_threshold(seeds, a, 0.15).members;
    if (!out.contains(nid(0))) o.fail("share exactly 0.15 does not qualify");
    if (!out.contains(nid(19))) o.fail("keyword-free member of qualifying cluster missing");
    if (out.contains(nid(20))) o.fail("seeded member of sub-threshold cluster kept");
    if (o.pass) o.detail = fmt::format("{} random fixtures, 5 thresholds; boundary and anecdotes hold", fixtures);
    return o;
}

// ---- overlap ----

Outcome decomposition_identity() {
    Outcome o;
    std::mt19937_64 rng(1000);
    auto draw = [&](std::size_t universe, unsigned per_mille) {
        std::vector<std::string> v;
        for (std::size_t i = 0; i < universe; ++i)
            if (rng() % 1000 < per_mille) v.push_back(fmt::format("10.9/{}", i));
        return DoiSet(v);
    };
    auto result = [](const DoiSet& d) {
        ResultSet r;
        r.doi_members = d;
        r.members_with_doi = d.size();
        return r;
    };
    for (int i = 0; i < 1000; ++i) {
        auto a = draw(300, 200 + rng() % 400), b = draw(300, 200 + rng() % 400);
        auto cov_a = set_union(a, draw(300, rng() % 1000));
        auto cov_b = set_union(b, draw(300, rng() % 1000));
        auto cmp = pairwise_compare(result(a), cov_b, result(b), cov_a);
        auto only_a = set_difference(a, b), only_b = set_difference(b, a);
        if (only_a.size() != cmp.surplus_a_method.size() + cmp.surplus_a_coverage.size() ||
            only_b.size() != cmp.surplus_b_method.size() + cmp.surplus_b_coverage.size())
            o.fail(fmt::format("fixture {}: partition sizes differ", i));
        if (!set_intersection(cmp.surplus_a_method, cmp.surplus_a_coverage).empty() ||
            !set_intersection(cmp.surplus_b_method, cmp.surplus_b_coverage).empty())
            o.fail(fmt::format("fixture {}: surplus parts overlap", i));
        if (cmp.counts().denominator() != set_union(a, b).size())
            o.fail(fmt::format("fixture {}: denominator is not the union", i));

        auto shared = set_union(cov_a, cov_b);
        auto eq = pairwise_compare(result(a), shared, result(b), shared);
        if (!eq.surplus_a_coverage.empty() || !eq.surplus_b_coverage.empty())
            o.fail(fmt::format("fixture {}: equal coverage leaves a coverage surplus", i));
        if (!o.pass) break;
    }
    if (o.pass) o.detail = "1000 fixtures; equal coverage gives empty coverage surpluses";
    return o;
}

// ---- term maps ----

std::vector<TermDocument> docs_with(const std::string& prefix, const std::string& title, std::size_t n) {
    std::vector<TermDocument> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({prefix + std::to_string(i), title, ""});
    return out;
}

Outcome term_map_properties() {
    Outcome o;
    TermMapConfig cfg;
    cfg.min_occurrences = 70;
    cfg.max_ngram = 1;
    auto a = docs_with("a", "drought", 50);
    auto b = docs_with("b", "drought", 19);
    auto a2 = docs_with("c", "wildfire", 21);
    auto b2 = docs_with("d", "wildfire", 49);
    a.insert(a.end(), a2.begin(), a2.end());
    b.insert(b.end(), b2.begin(), b2.end());
    auto kept = extract_terms(a, b, cfg);
    if (kept.size() != 1 || kept[0].term != "wildfire") o.fail("69/70 retention boundary");

    // tally oracle, antisymmetry and bounds on 100 generated documents
    std::mt19937_64 rng(77);
    const auto& vocab = default_random_vocabulary();
    const std::vector<std::string> fillers = {"the", "of", "and", "in", "to"};
    auto sentence = [&](std::size_t len) {
        std::string s;
        for (std::size_t k = 0; k < len; ++k) {
            const auto& w = rng() % 4 == 0 ? fillers[rng() % fillers.size()] : vocab[rng() % vocab.size()];
            s += (k ? " " : "") + w;
        }
        return s;
    };
    std::vector<TermDocument> da, db;
    for (int i = 0; i < 100; ++i)
        (i % 5 < 3 ? da : db).push_back({fmt::format("t{}", i), sentence(6 + rng() % 6), sentence(20 + rng() % 20)});
    auto full = TermMapConfig::with_default_stoplist();
    full.min_occurrences = 5;
    full.max_ngram = 3;

    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    for (int side = 0; side < 2; ++side)
        for (const auto& d : side ? db : da) {
            auto g = oracle::ngrams(oracle::ascii_words(d.title), 3, full.stoplist);
            auto h = oracle::ngrams(oracle::ascii_words(d.abstract_text), 3, full.stoplist);
            g.insert(h.begin(), h.end());
            for (const auto& t : g) (side ? tally[t].second : tally[t].first)++;
        }
    std::map<std::string, std::pair<std::size_t, std::size_t>> want;
    for (const auto& [t, n] : tally)
        if (n.first + n.second >= 5) want[t] = n;

    auto ab = extract_terms(da, db, full);
    auto ba = extract_terms(db, da, full);
    std::map<std::string, std::pair<std::size_t, std::size_t>> got;
    for (const auto& t : ab) got[t.term] = {t.occ_a, t.occ_b};
    if (got != want) o.fail(fmt::format("tally differs: {} terms vs oracle {}", got.size(), want.size()));
    if (ab.size() != ba.size()) {
        o.fail("swap changes the term list");
    } else {
        for (std::size_t i = 0; i < ab.size(); ++i) {
            if (ab[i].term != ba[i].term || ab[i].score != -ba[i].score) o.fail("antisymmetry fails for " + ab[i].term);
            if (ab[i].score < -1.0 || ab[i].score > 1.0) o.fail("score out of bounds for " + ab[i].term);
        }
    }
    if (o.pass) o.detail = fmt::format("boundary 69/70; {} terms match the oracle; antisymmetric and bounded", ab.size());
    return o;
}

// ---- end to end ----

std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files[std::filesystem::relative(e.path(), dir).generic_string()] = read_file(e.path());
    return files;
}

Outcome determinism() {
    init_logging_from_env();
    auto base = std::filesystem::temp_directory_path() / "sdglab-acceptance";
    std::filesystem::remove_all(base);
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* name : {"run1", "run2"}) {
        auto cfg = load_pipeline_config(kData / "demo" / "pipeline.json");
        cfg.output_dir = base / name;
        run_pipeline(cfg);
        runs.push_back(snapshot(cfg.output_dir));
    }
    std::filesystem::remove_all(base);
    Outcome o;
    std::size_t svg = 0, html = 0, reports = 0;
    for (const auto& [path, bytes] : runs[0]) {
        svg += path.ends_with(".svg");
        html += path.ends_with(".html");
        reports += path.starts_with("reports/");
        auto it = runs[1].find(path);
        if (it == runs[1].end())
            o.fail(path + " missing from second run");
        else if (it->second != bytes)
            o.fail(path + " differs");
    }
    if (runs[0].size() != runs[1].size()) o.fail("file lists differ");
    if (svg != 6 || html != 2 || reports == 0) o.fail(fmt::format("unexpected outputs: {} svg, {} html", svg, html));
    if (o.pass)
        o.detail = fmt::format("{} files identical ({} reports, {} SVG, {} HTML)", runs[0].size(), reports, svg, html);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table3-doi-shares", table3_doi_shares},
        {"table5-segment-shares", table5_segment_shares},
        {"table4-term-classes", table4_term_classes},
        {"query-oracle", query_oracle},
        {"proximity-fidelity", proximity_fidelity},
        {"exclusion", exclusion_behavior},
        {"cluster-threshold-laws", cluster_threshold_laws},
        {"decomposition-identity", decomposition_identity},
        {"term-map-properties", term_map_properties},
        {"determinism", determinism},
    };
    std::set<std::string> failed;
    for (const auto& [id, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(std::string("threw: ") + e.what());
        }
        if (!o.pass) failed.insert(id);
        std::printf("%s %s: %s%s\n", o.pass ? "PASS" : "FAIL", id.c_str(), o.detail.c_str(),
                    !o.pass && kKnownUnattainable.count(id) ? " [known unattainable]" : "");
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
    if (failed != kKnownUnattainable) {
        for (const auto& id : failed)
            if (!kKnownUnattainable.count(id)) std::printf("unexpected failure: %s\n", id.c_str());
        for (const auto& id : kKnownUnattainable)
            if (!failed.count(id)) std::printf("known-unattainable criterion now passes: %s\n", id.c_str());
        return 1;
    }
    return 0;
}
