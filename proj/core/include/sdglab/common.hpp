// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sdglab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query text could not be parsed. `offset()` is the byte offset into the
/// query where the problem was detected.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at byte " + std::to_string(offset)), offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A corpus, coverage or assignment file contained a malformed record.
/// `line()` is 1-based; 0 when no line applies.
class IngestError : public Error {
public:
    IngestError(const std::string& message, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Strategy or pipeline configuration is invalid.
class LoadError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A computation received inputs outside its domain.
class ComputeError : public Error {
public:
    using Error::Error;
};

/// Sorted, duplicate-free set of strings. Used for internal ids and DOIs so
/// that set algebra is a linear merge and iteration order is canonical.
class StringSet {
public:
    using const_iterator = std::vector<std::string>::const_iterator;

    StringSet() = default;
    StringSet(std::initializer_list<std::string> values) : StringSet(std::vector<std::string>(values)) {}
    explicit StringSet(std::vector<std::string> values) : values_(std::move(values)) {
        std::sort(values_.begin(), values_.end());
        values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    }

    /// Wraps a vector the caller guarantees is already sorted and unique.
    static StringSet from_sorted(std::vector<std::string> values) {
        StringSet s;
        s.values_ = std::move(values);
        return s;
    }

    [[nodiscard]] bool contains(std::string_view value) const {
        auto it = std::lower_bound(values_.begin(), values_.end(), value);
        return it != values_.end() && *it == value;
    }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] const_iterator begin() const noexcept { return values_.begin(); }
    [[nodiscard]] const_iterator end() const noexcept { return values_.end(); }
    [[nodiscard]] const std::vector<std::string>& values() const noexcept { return values_; }

    friend bool operator==(const StringSet&, const StringSet&) = default;

private:
    std::vector<std::string> values_;
};

using IdSet = StringSet;
using DoiSet = StringSet;

StringSet set_union(const StringSet& a, const StringSet& b);
StringSet set_intersection(const StringSet& a, const StringSet& b);
StringSet set_difference(const StringSet& a, const StringSet& b);

/// count/denominator in tenths of a percentage point, rounded half-up with
/// exact integer arithmetic (14.75% -> 148).
std::int64_t percent_tenths(std::uint64_t count, std::uint64_t denominator);

/// count/denominator in whole percent, rounded half-up.
std::int64_t percent_whole(std::uint64_t count, std::uint64_t denominator);

/// Renders a tenths value as "14.8".
std::string format_tenths(std::int64_t tenths);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view value);

}  // namespace sdglab
