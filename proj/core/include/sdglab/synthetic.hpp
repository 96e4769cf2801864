// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdglab/corpus.hpp"

namespace sdglab {

// Desk-scale stand-ins for two bibliographic databases that share part of
// their content. "broad" indexes more sources, "selective" fewer but with a
// handful of records of its own. Records of one topic cite each other, so
// topics show up as citation clusters.
struct SyntheticSpec {
    std::uint64_t seed = 2015;
    std::size_t topics = 28;
    std::size_t docs_per_topic = 55;
    std::size_t off_topic = 260;       // records about unrelated kinds of "climate"
    double doi_rate = 0.9;
    int first_year = 2013;
    int last_year = 2021;
    double selective_share = 0.72;     // broad records also indexed by selective
    std::size_t selective_only = 180;
    std::size_t extra_coverage = 400;  // DOIs indexed but not part of the records
    double keyword_free_rate = 0.12;   // topic records that avoid every topical phrase
};

struct SyntheticCorpora {
    Corpus broad;
    Corpus selective;
    DoiSet broad_extra;      // coverage beyond the record DOIs
    DoiSet selective_extra;
};

SyntheticCorpora generate_corpora(const SyntheticSpec& spec);

// Small-vocabulary corpus for query and index testing: every text field is a
// random word sequence over `vocabulary`.
struct RandomCorpusSpec {
    std::uint64_t seed = 1;
    std::size_t documents = 500;
    std::size_t title_words = 8;
    std::size_t abstract_words = 40;
    std::size_t keywords = 3;
    std::vector<std::string> vocabulary;  // empty: a built-in list
};

Corpus generate_random_corpus(const RandomCorpusSpec& spec);
const std::vector<std::string>& default_random_vocabulary();

}  // namespace sdglab
