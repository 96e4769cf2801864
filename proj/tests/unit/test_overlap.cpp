// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include <doctest.h>

#include <algorithm>
#include <random>
#include <regex>

#include "sdglab/overlap.hpp"

using namespace sdglab;

namespace {

DoiSet random_dois(std::mt19937_64& rng, std::size_t universe, double p) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < universe; ++i)
        if (static_cast<double>(rng() % 1000) < p * 1000) v.push_back("10.1/" + std::to_string(i));
    return DoiSet(v);
}

SegmentCounts make_counts(std::uint64_t ca, std::uint64_t ma, std::uint64_t o, std::uint64_t mb, std::uint64_t cb) {
    SegmentCounts c;
    c.counts = {ca, ma, o, mb, cb};
    return c;
}

ResultSet with_dois(const DoiSet& d) {
    ResultSet r;
    r.doi_members = d;
    r.members_with_doi = d.size();
    return r;
}

}  // namespace

TEST_CASE("match_by_doi examples") {
    auto m = match_by_doi(DoiSet{"x", "y", "z"}, DoiSet{"y", "z", "w"});
    CHECK(m.overlap == DoiSet{"y", "z"});
    CHECK(m.only_a == DoiSet{"x"});
    CHECK(m.only_b == DoiSet{"w"});
    auto same = match_by_doi(DoiSet{"x", "y"}, DoiSet{"x", "y"});
    CHECK(same.overlap == DoiSet{"x", "y"});
    CHECK(same.only_a.empty());
    CHECK(same.only_b.empty());
}

TEST_CASE("match_by_doi equals sort-merge set operations on 200-DOI fixtures") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        auto a = random_dois(rng, 200, 0.4), b = random_dois(rng, 200, 0.4);
        std::vector<std::string> av = a.values(), bv = b.values(), in, oa, ob;
        std::set_intersection(av.begin(), av.end(), bv.begin(), bv.end(), std::back_inserter(in));
        std::set_difference(av.begin(), av.end(), bv.begin(), bv.end(), std::back_inserter(oa));
        std::set_difference(bv.begin(), bv.end(), av.begin(), av.end(), std::back_inserter(ob));
        auto m = match_by_doi(a, b);
        CHECK(m.overlap.values() == in);
        CHECK(m.only_a.values() == oa);
        CHECK(m.only_b.values() == ob);
    }
}

TEST_CASE("decompose_surplus examples") {
    auto s = decompose_surplus(DoiSet{"a", "b", "c"}, DoiSet{"b", "q"});
    CHECK(s.method == DoiSet{"b"});
    CHECK(s.coverage == DoiSet{"a", "c"});
    auto none = decompose_surplus(DoiSet{"a"}, DoiSet{});
    CHECK(none.method.empty());
    CHECK(none.coverage == DoiSet{"a"});
}

TEST_CASE("partition identity on 1,000 random fixtures") {
    std::mt19937_64 rng(1000);
    for (int i = 0; i < 1000; ++i) {
        auto a = random_dois(rng, 150, 0.3), b = random_dois(rng, 150, 0.3);
        auto cov_a = set_union(a, random_dois(rng, 150, 0.5));
        auto cov_b = set_union(b, random_dois(rng, 150, 0.5));
        auto cmp = pairwise_compare(with_dois(a), cov_b, with_dois(b), cov_a);
        auto only_a = set_difference(a, b);
        CHECK(cmp.surplus_a_method.size() + cmp.surplus_a_coverage.size() == only_a.size());
        CHECK(set_intersection(cmp.surplus_a_method, cmp.surplus_a_coverage).empty());
        CHECK(set_union(cmp.surplus_a_method, cmp.surplus_a_coverage) == only_a);
        // per-element oracle
        for (const auto& d : only_a) CHECK(cmp.surplus_a_method.contains(d) == cov_b.contains(d));
        auto c = cmp.counts();
        CHECK(c.denominator() == set_union(a, b).size());

        // equal coverage on both sides
        auto shared = set_union(cov_a, cov_b);
        auto eq = pairwise_compare(with_dois(a), shared, with_dois(b), shared);
        CHECK(eq.surplus_a_coverage.empty());
        CHECK(eq.surplus_b_coverage.empty());

        // swapping sides mirrors the bar
        auto sw = pairwise_compare(with_dois(b), cov_a, with_dois(a), cov_b).counts();
        CHECK(sw[Segment::coverage_a] == c[Segment::coverage_b]);
        CHECK(sw[Segment::method_a] == c[Segment::method_b]);
        CHECK(sw[Segment::overlap] == c[Segment::overlap]);
    }
}

TEST_CASE("published comparison rows") {
    struct Row {
        std::uint64_t n[5];
        std::int64_t pct[5];  // tenths
    };
    const Row rows[] = {
        {{44764, 102702, 48269, 104792, 2949}, {148, 338, 159, 345, 10}},
        {{44764, 69502, 81469, 80421, 2910}, {160, 249, 292, 288, 10}},
        {{7103, 104613, 84019, 82587, 36831}, {23, 332, 267, 262, 117}},
        {{0, 102564, 53446, 111354, 0}, {0, 384, 200, 416, 0}},
        {{76389, 84629, 42429, 112522, 1059}, {241, 267, 134, 355, 3}},
        {{76389, 68933, 58125, 105494, 1181}, {246, 222, 187, 340, 4}},
    };
    for (const auto& r : rows) {
        auto c = make_counts(r.n[0], r.n[1], r.n[2], r.n[3], r.n[4]);
        double sum = 0;
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(c.percent_tenths(kSegments[k]) == r.pct[k]);
            CHECK(std::fabs(100.0 * c.share(kSegments[k]) - r.pct[k] / 10.0) <= 0.1);
            sum += r.pct[k] / 10.0;
        }
        CHECK(std::fabs(sum - 100.0) <= 0.2);
    }
    CHECK(make_counts(44764, 102702, 48269, 104792, 2949).denominator() == 303476);
    CHECK(make_counts(0, 0, 0, 0, 0).percent_tenths(Segment::overlap) == 0);
}

TEST_CASE("identical results give a full overlap bar") {
    DoiSet d{"a", "b"};
    auto c = pairwise_compare(with_dois(d), d, with_dois(d), d).counts();
    CHECK(c.percent_tenths(Segment::overlap) == 1000);
    CHECK(c.percent_tenths(Segment::method_a) == 0);
}

TEST_CASE("bar rendering") {
    auto c = make_counts(44764, 102702, 48269, 104792, 2949);
    auto f = render_overlap_bar("Elsevier 2021", "STRINGS", c);
    CHECK(f.svg == render_overlap_bar("Elsevier 2021", "STRINGS", c).svg);
    // segment widths proportional to the shares on an 800-unit bar
    std::regex rect(R"re(width="([0-9.]+)"[^>]*data-segment="([a-z_]+)")re");
    std::vector<double> widths;
    for (std::sregex_iterator it(f.svg.begin(), f.svg.end(), rect), end; it != end; ++it)
        widths.push_back(std::stod((*it)[1]));
    REQUIRE(widths.size() == 5);
    const double shares[] = {14.8, 33.8, 15.9, 34.5, 1.0};
    // printed shares are rounded to 0.1
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::fabs(widths[k] / 8.0 - shares[k]) <= 0.05);

    auto zero = render_overlap_bar("STRINGS", "SIRIS", make_counts(0, 102564, 53446, 111354, 0));
    CHECK(zero.svg.find("data-segment=\"coverage_a\"") == std::string::npos);
    CHECK(zero.svg.find("data-segment=\"coverage_b\"") == std::string::npos);
    CHECK(zero.json.find("\"segment\": \"coverage_a\"") != std::string::npos);
    CHECK(zero.json.find("\"count\": 0") != std::string::npos);
}

TEST_CASE("csv rows and detail json") {
    CHECK(overlap_csv_header() ==
          "a,b,cov_a,meth_a,overlap,meth_b,cov_b,cov_a_pct,meth_a_pct,overlap_pct,meth_b_pct,cov_b_pct");
    CHECK(overlap_csv_row("Elsevier 2021", "STRINGS", make_counts(44764, 102702, 48269, 104792, 2949)) ==
          "Elsevier 2021,STRINGS,44764,102702,48269,104792,2949,14.8,33.8,15.9,34.5,1.0");
    PairwiseComparison p;
    p.name_a = "A";
    p.name_b = "B";
    std::vector<std::string> many;
    for (int i = 0; i < 100; ++i) many.push_back("10.1/" + std::to_string(1000 + i));
    p.overlap = DoiSet(many);
    auto full = comparison_detail_json(p);
    auto sampled = comparison_detail_json(p, 10);
    CHECK(full.find("10.1/1099") != std::string::npos);
    CHECK(sampled.size() < full.size());
}
