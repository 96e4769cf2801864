// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/overlap.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace sdglab {

DoiMatch match_by_doi(const DoiSet& a, const DoiSet& b) {
    return {set_intersection(a, b), set_difference(a, b), set_difference(b, a)};
}

DoiMatch match_by_doi(const ResultSet& a, const ResultSet& b) { return match_by_doi(a.doi_members, b.doi_members); }

SurplusSplit decompose_surplus(const DoiSet& only_a, const DoiSet& coverage_b) {
    return {set_intersection(only_a, coverage_b), set_difference(only_a, coverage_b)};
}

std::string_view segment_name(Segment s) {
    switch (s) {
        case Segment::coverage_a: return "coverage_a";
        case Segment::method_a: return "method_a";
        case Segment::overlap: return "overlap";
        case Segment::method_b: return "method_b";
        case Segment::coverage_b: return "coverage_b";
    }
    return "?";
}

std::uint64_t SegmentCounts::denominator() const {
    std::uint64_t d = 0;
    for (auto c : counts) d += c;
    return d;
}

double SegmentCounts::share(Segment s) const {
    auto d = denominator();
    return d == 0 ? 0.0 : static_cast<double>((*this)[s]) / static_cast<double>(d);
}

std::int64_t SegmentCounts::percent_tenths(Segment s) const {
    auto d = denominator();
    return d == 0 ? 0 : sdglab::percent_tenths((*this)[s], d);
}

const DoiSet& PairwiseComparison::segment(Segment s) const {
    switch (s) {
        case Segment::coverage_a: return surplus_a_coverage;
        case Segment::method_a: return surplus_a_method;
        case Segment::overlap: return overlap;
        case Segment::method_b: return surplus_b_method;
        case Segment::coverage_b: return surplus_b_coverage;
    }
    return overlap;
}

SegmentCounts PairwiseComparison::counts() const {
    SegmentCounts c;
    for (auto s : kSegments) c.counts[static_cast<std::size_t>(s)] = segment(s).size();
    return c;
}

PairwiseComparison pairwise_compare(const ResultSet& a, const DoiSet& coverage_b, const ResultSet& b,
                                    const DoiSet& coverage_a) {
    auto match = match_by_doi(a, b);
    auto split_a = decompose_surplus(match.only_a, coverage_b);
    auto split_b = decompose_surplus(match.only_b, coverage_a);
    return {a.strategy_name,
            b.strategy_name,
            std::move(match.overlap),
            std::move(split_a.method),
            std::move(split_a.coverage),
            std::move(split_b.method),
            std::move(split_b.coverage)};
}

std::string overlap_csv_header() {
    return "a,b,cov_a,meth_a,overlap,meth_b,cov_b,cov_a_pct,meth_a_pct,overlap_pct,meth_b_pct,cov_b_pct";
}

std::string overlap_csv_row(std::string_view name_a, std::string_view name_b, const SegmentCounts& counts) {
    std::string row = csv_field(name_a) + "," + csv_field(name_b);
    for (auto s : kSegments) row += "," + std::to_string(counts[s]);
    for (auto s : kSegments) row += "," + format_tenths(counts.percent_tenths(s));
    return row;
}

namespace {

constexpr std::array<const char*, 5> kSegmentColors = {"#08519c", "#6baed6", "#969696", "#fc9272", "#cb181d"};
constexpr std::array<const char*, 5> kSegmentLabels = {"surplus (coverage)", "surplus (method)", "overlap",
                                                       "surplus (method)", "surplus (coverage)"};

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

OverlapFigure render_overlap_bar(std::string_view name_a, std::string_view name_b, const SegmentCounts& counts) {
    constexpr double kWidth = 800.0;
    constexpr double kLeft = 20.0;
    constexpr double kBarY = 40.0;
    constexpr double kBarH = 40.0;
    const auto denom = counts.denominator();

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"140\" viewBox=\"0 0 {:.0f} 140\">\n"
        "<style>text{{font-family:sans-serif;font-size:12px}}</style>\n",
        kWidth + 2 * kLeft, kWidth + 2 * kLeft);
    svg += fmt::format("<text x=\"{:.0f}\" y=\"28\">{}</text>\n", kLeft, xml_escape(name_a));
    svg += fmt::format("<text x=\"{:.0f}\" y=\"28\" text-anchor=\"end\">{}</text>\n", kLeft + kWidth, xml_escape(name_b));

    double x = kLeft;
    for (auto s : kSegments) {
        auto i = static_cast<std::size_t>(s);
        auto count = counts[s];
        if (count == 0 || denom == 0) continue;
        double w = kWidth * static_cast<double>(count) / static_cast<double>(denom);
        auto pct = format_tenths(counts.percent_tenths(s));
        svg += fmt::format(
            "<rect x=\"{:.3f}\" y=\"{:.0f}\" width=\"{:.3f}\" height=\"{:.0f}\" fill=\"{}\" data-segment=\"{}\">"
            "<title>{}: {} ({}%)</title></rect>\n",
            x, kBarY, w, kBarH, kSegmentColors[i], segment_name(s), kSegmentLabels[i], count, pct);
        if (w >= 36.0)
            svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.0f}\" text-anchor=\"middle\">{}%</text>\n", x + w / 2,
                               kBarY + kBarH + 16, pct);
        x += w;
    }
    double lx = kLeft;
    for (std::size_t i = 0; i < kSegments.size(); ++i) {
        svg += fmt::format("<rect x=\"{:.0f}\" y=\"112\" width=\"10\" height=\"10\" fill=\"{}\"/>", lx, kSegmentColors[i]);
        svg += fmt::format("<text x=\"{:.0f}\" y=\"121\">{}</text>\n", lx + 14, kSegmentLabels[i]);
        lx += 160;
    }
    svg += "</svg>\n";

    nlohmann::ordered_json j;
    j["a"] = name_a;
    j["b"] = name_b;
    j["denominator"] = denom;
    auto& segs = j["segments"] = nlohmann::ordered_json::array();
    for (auto s : kSegments)
        segs.push_back({{"segment", segment_name(s)},
                        {"count", counts[s]},
                        {"pct", format_tenths(counts.percent_tenths(s))},
                        {"share", counts.share(s)}});
    return {std::move(svg), j.dump(2) + "\n"};
}

OverlapFigure render_overlap_bar(const PairwiseComparison& comparison) {
    return render_overlap_bar(comparison.name_a, comparison.name_b, comparison.counts());
}

std::string comparison_detail_json(const PairwiseComparison& comparison, std::size_t sample_limit) {
    auto counts = comparison.counts();
    nlohmann::ordered_json j;
    j["a"] = comparison.name_a;
    j["b"] = comparison.name_b;
    j["denominator"] = counts.denominator();
    j["sampled"] = sample_limit > 0;
    auto& segs = j["segments"] = nlohmann::ordered_json::object();
    for (auto s : kSegments) {
        const auto& dois = comparison.segment(s).values();
        std::vector<std::string> listed;
        if (sample_limit == 0 || dois.size() <= sample_limit) {
            listed = dois;
        } else {
            for (std::size_t k = 0; k < sample_limit; ++k) listed.push_back(dois[k * dois.size() / sample_limit]);
        }
        segs[std::string(segment_name(s))] = {{"count", dois.size()},
                                              {"pct", format_tenths(counts.percent_tenths(s))},
                                              {"dois", listed}};
    }
    return j.dump(2) + "\n";
}

}  // namespace sdglab
