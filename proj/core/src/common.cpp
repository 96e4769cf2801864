// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/common.hpp"

#include <iterator>

namespace sdglab {

StringSet set_union(const StringSet& a, const StringSet& b) {
    std::vector<std::string> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return StringSet::from_sorted(std::move(out));
}

StringSet set_intersection(const StringSet& a, const StringSet& b) {
    std::vector<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return StringSet::from_sorted(std::move(out));
}

StringSet set_difference(const StringSet& a, const StringSet& b) {
    std::vector<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return StringSet::from_sorted(std::move(out));
}

std::int64_t percent_tenths(std::uint64_t count, std::uint64_t denominator) {
    if (denominator == 0) throw ComputeError("percentage of an empty denominator");
    // round(1000 * c / d) half-up == floor((2000 * c + d) / (2 * d))
    return static_cast<std::int64_t>((2000 * count + denominator) / (2 * denominator));
}

std::int64_t percent_whole(std::uint64_t count, std::uint64_t denominator) {
    if (denominator == 0) throw ComputeError("percentage of an empty denominator");
    return static_cast<std::int64_t>((200 * count + denominator) / (2 * denominator));
}

std::string format_tenths(std::int64_t tenths) {
    std::string sign = tenths < 0 ? "-" : "";
    if (tenths < 0) tenths = -tenths;
    return sign + std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace sdglab
