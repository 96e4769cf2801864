// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdglab/common.hpp"
#include "sdglab/result_set.hpp"

namespace sdglab {

struct DoiMatch {
    DoiSet overlap;
    DoiSet only_a;
    DoiSet only_b;
};

/// Set algebra over the DOI members; records without a DOI take no part.
DoiMatch match_by_doi(const DoiSet& a, const DoiSet& b);
DoiMatch match_by_doi(const ResultSet& a, const ResultSet& b);

struct SurplusSplit {
    DoiSet method;    // the other database indexes the DOI; its method missed it
    DoiSet coverage;  // the other database does not index the DOI at all
};

SurplusSplit decompose_surplus(const DoiSet& only_a, const DoiSet& coverage_b);

/// The five bar segments, left to right.
enum class Segment : std::size_t { coverage_a = 0, method_a, overlap, method_b, coverage_b };

inline constexpr std::array<Segment, 5> kSegments = {Segment::coverage_a, Segment::method_a, Segment::overlap,
                                                     Segment::method_b, Segment::coverage_b};

std::string_view segment_name(Segment s);

/// Segment sizes of one pairwise comparison. Shares use the union of both
/// DOI sets (the sum of all five segments) as denominator.
struct SegmentCounts {
    std::array<std::uint64_t, 5> counts{};

    [[nodiscard]] std::uint64_t operator[](Segment s) const { return counts[static_cast<std::size_t>(s)]; }
    [[nodiscard]] std::uint64_t denominator() const;
    [[nodiscard]] double share(Segment s) const;
    /// Percentage in tenths of a point, half-up; 0 for an empty comparison.
    [[nodiscard]] std::int64_t percent_tenths(Segment s) const;
};

struct PairwiseComparison {
    std::string name_a;
    std::string name_b;
    DoiSet overlap;
    DoiSet surplus_a_method;
    DoiSet surplus_a_coverage;
    DoiSet surplus_b_method;
    DoiSet surplus_b_coverage;

    [[nodiscard]] const DoiSet& segment(Segment s) const;
    [[nodiscard]] SegmentCounts counts() const;
};

PairwiseComparison pairwise_compare(const ResultSet& a, const DoiSet& coverage_b, const ResultSet& b,
                                    const DoiSet& coverage_a);

/// "a,b,cov_a,meth_a,overlap,meth_b,cov_b,cov_a_pct,meth_a_pct,overlap_pct,meth_b_pct,cov_b_pct"
std::string overlap_csv_header();
std::string overlap_csv_row(std::string_view name_a, std::string_view name_b, const SegmentCounts& counts);

struct OverlapFigure {
    std::string svg;   // five-segment stacked bar; zero segments omitted
    std::string json;  // every segment with count and percentage
};

OverlapFigure render_overlap_bar(const PairwiseComparison& comparison);
OverlapFigure render_overlap_bar(std::string_view name_a, std::string_view name_b, const SegmentCounts& counts);

/// JSON detail with the five DOI sets. `sample_limit` > 0 keeps at most that
/// many evenly spaced DOIs per segment.
std::string comparison_detail_json(const PairwiseComparison& comparison, std::size_t sample_limit = 0);

}  // namespace sdglab
