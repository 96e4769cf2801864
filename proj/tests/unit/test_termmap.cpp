// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sdglab/io.hpp"
#include "sdglab/termmap.hpp"

using namespace sdglab;

namespace {

std::vector<TermDocument> repeat(const std::string& key, const std::string& title, std::size_t n) {
    std::vector<TermDocument> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({key + std::to_string(i), title, ""});
    return out;
}

const TermStats* find(const std::vector<TermStats>& ts, const std::string& term) {
    for (const auto& t : ts)
        if (t.term == term) return &t;
    return nullptr;
}

std::vector<TermDocument> random_docs(std::mt19937_64& rng, std::size_t n, const std::string& prefix) {
    static const std::vector<std::string> words = {"climate", "change", "the",    "of",    "flood",  "risk",
                                                   "and",     "carbon", "policy", "heat",  "energy", "in",
                                                   "crop",    "yield",  "model",  "ocean", "water",  "a"};
    std::vector<TermDocument> out;
    for (std::size_t i = 0; i < n; ++i) {
        auto sentence = [&](std::size_t len) {
            std::string s;
            for (std::size_t k = 0; k < len; ++k) s += (k ? " " : "") + words[rng() % words.size()];
            return s;
        };
        out.push_back({prefix + std::to_string(i), sentence(4 + rng() % 6), sentence(10 + rng() % 20)});
    }
    return out;
}

}  // namespace

TEST_CASE("retention boundary at min_occurrences") {
    TermMapConfig cfg;
    cfg.min_occurrences = 70;
    cfg.max_ngram = 1;
    auto a = repeat("a", "alpha", 40);
    auto b = repeat("b", "alpha", 29);  // 69 in total
    auto more_a = repeat("c", "beta", 35);
    auto more_b = repeat("d", "beta", 35);  // 70 in total
    a.insert(a.end(), more_a.begin(), more_a.end());
    b.insert(b.end(), more_b.begin(), more_b.end());
    auto terms = extract_terms(a, b, cfg);
    CHECK(find(terms, "alpha") == nullptr);
    REQUIRE(find(terms, "beta") != nullptr);
    CHECK(find(terms, "beta")->occ_a == 35);
    CHECK(find(terms, "beta")->score == 0.0);
}

TEST_CASE("contrast score") {
    CHECK(contrast_score(10, 0) == -1.0);
    CHECK(contrast_score(0, 4) == 1.0);
    CHECK(contrast_score(3, 1) == doctest::Approx(-0.5));
    CHECK_THROWS_WITH_AS(contrast_score(0, 0), "term unobserved", ComputeError);
}

TEST_CASE("documents count once per term") {
    TermMapConfig cfg;
    cfg.min_occurrences = 1;
    cfg.max_ngram = 2;
    std::vector<TermDocument> a{{"k", "flood flood flood", "flood risk flood risk"}};
    auto terms = extract_terms(a, {}, cfg);
    CHECK(find(terms, "flood")->occ_a == 1);
    CHECK(find(terms, "flood risk")->occ_a == 1);
    // n-grams never cross the title/abstract boundary
    std::vector<TermDocument> c{{"k", "heat", "wave"}};
    CHECK(find(extract_terms(c, {}, cfg), "heat wave") == nullptr);
}

TEST_CASE("stopwords may sit inside but never at the edges") {
    auto cfg = TermMapConfig::with_default_stoplist();
    cfg.max_ngram = 3;
    auto terms = document_terms({"k", "impact of climate", ""}, cfg);
    CHECK(terms.count("impact of climate") == 1);
    CHECK(terms.count("impact of") == 0);
    CHECK(terms.count("of") == 0);
    std::istringstream in("The\n\nAND\n");
    CHECK(load_stoplist(in) == std::set<std::string>{"the", "and"});
}

TEST_CASE("antisymmetry, bounds and the n-gram tally oracle on 100 documents") {
    std::mt19937_64 rng(100);
    auto a = random_docs(rng, 60, "a");
    auto b = random_docs(rng, 40, "b");
    auto cfg = TermMapConfig::with_default_stoplist();
    cfg.min_occurrences = 5;
    cfg.max_ngram = 3;

    std::set<std::string> stop = cfg.stoplist;
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    auto count = [&](const std::vector<TermDocument>& docs, bool side_b) {
        for (const auto& d : docs) {
            auto grams = oracle::ngrams(oracle::ascii_words(d.title), 3, stop);
            auto more = oracle::ngrams(oracle::ascii_words(d.abstract_text), 3, stop);
            grams.insert(more.begin(), more.end());
            for (const auto& g : grams) (side_b ? tally[g].second : tally[g].first)++;
        }
    };
    count(a, false);
    count(b, true);
    std::vector<TermStats> want;
    for (const auto& [g, n] : tally)
        if (n.first + n.second >= 5)
            want.push_back({g, n.first, n.second,
                            (static_cast<double>(n.second) - static_cast<double>(n.first)) /
                                static_cast<double>(n.first + n.second)});

    auto ab = extract_terms(a, b, cfg);
    CHECK(ab.size() == want.size());
    CHECK(ab == want);
    auto ba = extract_terms(b, a, cfg);
    REQUIRE(ba.size() == ab.size());
    for (std::size_t i = 0; i < ab.size(); ++i) {
        CHECK(ba[i].term == ab[i].term);
        CHECK(ba[i].score == -ab[i].score);
        CHECK(ab[i].score >= -1.0);
        CHECK(ab[i].score <= 1.0);
    }
}

TEST_CASE("co-occurrence edges equal a pairwise document count") {
    std::mt19937_64 rng(7);
    auto docs = random_docs(rng, 80, "d");
    auto cfg = TermMapConfig::with_default_stoplist();
    cfg.min_occurrences = 10;
    cfg.max_ngram = 1;
    auto terms = extract_terms(docs, {}, cfg);
    auto edges = cooccurrence_edges(terms, docs, cfg);
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> want;
    for (const auto& d : docs) {
        auto words = oracle::ascii_words(d.title + " " + d.abstract_text);
        std::set<std::string> present(words.begin(), words.end());
        for (std::uint32_t i = 0; i < terms.size(); ++i)
            for (std::uint32_t j = i + 1; j < terms.size(); ++j)
                if (present.count(terms[i].term) && present.count(terms[j].term)) ++want[{i, j}];
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> got;
    for (const auto& e : edges) got[{e.source, e.target}] = e.weight;
    CHECK(got == want);
}

TEST_CASE("layout separates two cliques and stays in the unit square") {
    std::vector<TermEdge> edges;
    for (std::uint32_t i = 0; i < 5; ++i)
        for (std::uint32_t j = i + 1; j < 5; ++j) {
            edges.push_back({i, j, 10});
            edges.push_back({i + 5, j + 5, 10});
        }
    edges.push_back({0, 5, 1});
    TermMapConfig cfg;
    auto pts = layout_map(edges, 10, cfg);
    auto dist = [&](std::size_t i, std::size_t j) { return std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y); };
    double intra = 0, inter = 0;
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = i + 1; j < 10; ++j) ((i < 5) == (j < 5) ? intra : inter) += dist(i, j);
    CHECK(intra / 20 < inter / 25);
    for (const auto& p : pts) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 1.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 1.0);
    }
    CHECK(layout_map(edges, 10, cfg) == pts);
    CHECK(layout_map({}, 1, cfg) == std::vector<Point>{Point{0.5, 0.5}});
}

TEST_CASE("exports") {
    std::mt19937_64 rng(3);
    auto a = random_docs(rng, 50, "a");
    auto b = random_docs(rng, 50, "b");
    auto cfg = TermMapConfig::with_default_stoplist();
    cfg.min_occurrences = 15;
    cfg.max_ngram = 2;
    cfg.layout_iterations = 50;
    auto map = build_term_map("A", "B", a, b, cfg);
    REQUIRE_FALSE(map.terms.empty());

    auto json = term_map_json(map);
    auto back = load_term_map_json(json);
    CHECK(back == map);
    CHECK(term_map_json(back) == json);

    auto graphml = term_map_graphml(map);
    std::size_t nodes = 0;
    for (auto p = graphml.find("<node "); p != std::string::npos; p = graphml.find("<node ", p + 1)) ++nodes;
    CHECK(nodes == map.terms.size());

    CHECK(score_color(-1.0) == "#2166ac");
    CHECK(score_color(1.0) == "#b2182b");
    CHECK(score_color(0.0) == "#f7f7f7");
    auto html = term_map_html(map);
    CHECK(html.find("<svg") != std::string::npos);
    CHECK(html == term_map_html(map));

    auto dir = oracle::temp_dir("termmap");
    export_term_map(map, TermMapFormat::graphml, (dir / "m.graphml").string());
    CHECK(read_file(dir / "m.graphml") == graphml);
    CHECK_THROWS_AS(export_term_map(map, TermMapFormat::json, "/proc/no/such/dir/m.json"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("a term mostly in the first set renders blue") {
    TermMapConfig cfg;
    cfg.min_occurrences = 1;
    cfg.max_ngram = 1;
    auto a = repeat("a", "glacier", 9);
    auto b = repeat("b", "glacier", 1);
    auto map = build_term_map("A", "B", a, b, cfg);
    REQUIRE(map.terms.size() == 1);
    CHECK(map.terms[0].score < 0);
    auto color = score_color(map.terms[0].score);
    // blue channel dominates red
    CHECK(std::stoi(color.substr(5, 2), nullptr, 16) > std::stoi(color.substr(1, 2), nullptr, 16));
    CHECK(term_map_html(map).find(color) != std::string::npos);
}

TEST_CASE("shared documents count once for co-occurrence") {
    TermMapConfig cfg;
    cfg.min_occurrences = 1;
    cfg.max_ngram = 1;
    std::vector<TermDocument> a{{"10.1/x", "heat flood", ""}};
    auto map = build_term_map("A", "B", a, a, cfg);
    REQUIRE(map.edges.size() == 1);
    CHECK(map.edges[0].weight == 1);
    CHECK(map.terms[0].occ_a == 1);
    CHECK(map.terms[0].occ_b == 1);
}
