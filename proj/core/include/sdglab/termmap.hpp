// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sdglab/corpus.hpp"
#include "sdglab/result_set.hpp"

namespace sdglab {

struct TermMapConfig {
    std::size_t min_occurrences = 70;
    std::size_t max_ngram = 3;
    std::set<std::string> stoplist;
    std::uint64_t layout_seed = 1;
    std::size_t layout_iterations = 300;

    /// Defaults with the built-in English stoplist.
    static TermMapConfig with_default_stoplist();

    friend bool operator==(const TermMapConfig&, const TermMapConfig&) = default;
};

std::set<std::string> default_stoplist();
/// One word per line, lowercased; blank lines ignored.
std::set<std::string> load_stoplist(std::istream& in);

/// Title and abstract of one publication. `key` identifies the publication
/// across both sets (its DOI when present).
struct TermDocument {
    std::string key;
    std::string title;
    std::string abstract_text;
};

std::vector<TermDocument> term_documents(const ResultSet& result, const Corpus& corpus);

/// Distinct 1..max_ngram token sequences of the title and of the abstract
/// (n-grams never span the two fields), skipping any n-gram that starts or
/// ends with a stoplist word.
std::set<std::string> document_terms(const TermDocument& doc, const TermMapConfig& config);

struct TermStats {
    std::string term;
    std::size_t occ_a = 0;
    std::size_t occ_b = 0;
    double score = 0.0;

    friend bool operator==(const TermStats&, const TermStats&) = default;
};

/// (occ_b - occ_a) / (occ_a + occ_b). Negative: more frequent in the first
/// set. Throws ComputeError("term unobserved") when both counts are zero.
double contrast_score(std::size_t occ_a, std::size_t occ_b);

/// Document-frequency tallies per set; keeps terms with
/// occ_a + occ_b >= min_occurrences. Sorted by term.
std::vector<TermStats> extract_terms(std::span<const TermDocument> docs_a, std::span<const TermDocument> docs_b,
                                     const TermMapConfig& config);

struct TermEdge {
    std::uint32_t source = 0;  // index into the term list, source < target
    std::uint32_t target = 0;
    std::size_t weight = 0;    // documents containing both terms

    friend bool operator==(const TermEdge&, const TermEdge&) = default;
};

std::vector<TermEdge> cooccurrence_edges(const std::vector<TermStats>& terms, std::span<const TermDocument> docs,
                                         const TermMapConfig& config);

struct Point {
    double x = 0.5;
    double y = 0.5;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Seeded force layout: weighted attraction along edges, repulsion between
/// all pairs, fixed iteration count, result scaled into the unit square.
std::vector<Point> layout_map(const std::vector<TermEdge>& edges, std::size_t term_count, const TermMapConfig& config);

struct TermMap {
    std::string name_a;
    std::string name_b;
    std::vector<TermStats> terms;
    std::vector<TermEdge> edges;
    std::vector<Point> coordinates;
    TermMapConfig config;

    friend bool operator==(const TermMap&, const TermMap&) = default;
};

/// Extracts, scores, links and lays out the terms of two publication sets.
/// Documents present in both sets (same key) count once for co-occurrence.
TermMap build_term_map(std::string name_a, std::string name_b, std::span<const TermDocument> docs_a,
                       std::span<const TermDocument> docs_b, const TermMapConfig& config);

enum class TermMapFormat { json, graphml, html };

std::string term_map_json(const TermMap& map);
TermMap load_term_map_json(std::string_view json);
std::string term_map_graphml(const TermMap& map);
/// Self-contained page: bubbles sized by occ_a + occ_b and coloured from
/// blue (-1) through light grey (0) to red (+1).
std::string term_map_html(const TermMap& map);

/// Hex colour for a contrast score on the blue-grey-red scale.
std::string score_color(double score);

/// Throws IoError when the path cannot be written.
void export_term_map(const TermMap& map, TermMapFormat format, const std::string& path);

}  // namespace sdglab
