// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdglab/clustering.hpp"
#include "sdglab/corpus.hpp"
#include "sdglab/index.hpp"
#include "sdglab/query.hpp"
#include "sdglab/result_set.hpp"

namespace sdglab {

enum class TermClass { general, policy, technical };

std::string_view term_class_name(TermClass c);
std::optional<TermClass> parse_term_class(std::string_view name);

struct NamedQuery {
    std::string name;
    std::string text;
    Query query;
};

struct ClassifiedTerm {
    NamedQuery query;
    TermClass term_class = TermClass::general;
};

struct SearchStrategy {
    std::string name;
    std::string description;
    std::vector<ClassifiedTerm> seeds;
    std::vector<NamedQuery> exclusions;
    FieldSet fields = FieldSet::all();
    YearWindow window{2015, 2019};
    std::optional<EnhancementSpec> enhancement;
    std::vector<std::string> doc_types;  // empty: every document type
    std::string base_dir;                // directory of the strategy file
};

/// Parses a strategy JSON document. Every query is parsed eagerly; a query
/// that fails to parse raises LoadError citing its name ("seeds[3]" unless
/// the entry carries a "name").
SearchStrategy load_strategy(std::istream& in, std::string base_dir = {});
SearchStrategy load_strategy_file(const std::string& path);

/// Per-query hit counts alongside the result, for audit output.
struct StrategyRun {
    ResultSet result;
    std::vector<std::size_t> seed_hits;
    std::vector<std::size_t> exclusion_hits;
    std::size_t excluded = 0;        // seed matches removed by exclusions
    std::size_t outside_window = 0;  // seed matches removed by the window
};

/// members = window((∪ seeds) \ (∪ exclusions)). Enhancement is not applied.
ResultSet run_strategy(const SearchStrategy& strategy, const PositionalIndex& index, const Corpus& corpus);
StrategyRun run_strategy_detailed(const SearchStrategy& strategy, const PositionalIndex& index, const Corpus& corpus);

struct TermClassSummary {
    std::string strategy;
    std::size_t general = 0;
    std::size_t policy = 0;
    std::size_t technical = 0;
    std::size_t total = 0;

    /// Whole-percent shares, rounded half-up; zero when total is zero.
    [[nodiscard]] std::int64_t general_pct() const;
    [[nodiscard]] std::int64_t policy_pct() const;
    [[nodiscard]] std::int64_t technical_pct() const;
};

TermClassSummary term_class_summary(const SearchStrategy& strategy);

/// "strategy,general,policy,technical,total"
std::string term_class_csv_header();
std::string term_class_csv_row(const TermClassSummary& summary);

}  // namespace sdglab
