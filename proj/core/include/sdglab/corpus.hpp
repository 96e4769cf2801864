// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sdglab/common.hpp"

namespace sdglab {

/// Lowercases, trims and strips a resolver prefix ("https://doi.org/",
/// "http://doi.org/", "doi:" and the dx.doi.org variants). Returns nullopt
/// unless the remainder starts with "10.".
std::optional<std::string> normalize_doi(std::string_view raw);

struct PublicationRecord {
    std::string id;
    std::optional<std::string> doi;
    std::string title;
    std::string abstract_text;
    std::vector<std::string> keywords;
    int year = 0;
    std::string doc_type;
    std::vector<std::string> references;

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// Inclusive calendar-year range.
class YearWindow {
public:
    YearWindow(int start_year, int end_year);

    [[nodiscard]] int start_year() const noexcept { return start_; }
    [[nodiscard]] int end_year() const noexcept { return end_; }
    [[nodiscard]] bool contains(int year) const noexcept { return start_ <= year && year <= end_; }

    friend bool operator==(const YearWindow&, const YearWindow&) = default;

private:
    int start_;
    int end_;
};

/// An immutable collection of records from one bibliographic database,
/// together with the set of DOIs that database indexes. Coverage always
/// contains every record DOI and may contain more.
class Corpus {
public:
    Corpus() = default;
    Corpus(std::string name, std::vector<PublicationRecord> records, DoiSet extra_coverage = {});

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<PublicationRecord>& records() const noexcept { return records_; }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] const DoiSet& coverage() const noexcept { return coverage_; }
    [[nodiscard]] const PublicationRecord* find(std::string_view id) const;
    [[nodiscard]] bool contains(std::string_view id) const { return find(id) != nullptr; }

    /// Record count per publication year.
    [[nodiscard]] std::map<int, std::size_t> year_counts() const;

private:
    std::string name_;
    std::vector<PublicationRecord> records_;
    std::unordered_map<std::string, std::size_t> by_id_;
    DoiSet coverage_;
};

/// Reads the JSON-lines corpus format. Blank lines are skipped.
/// Throws IngestError naming the line for malformed or duplicate records.
Corpus ingest_corpus(std::istream& in, std::string name, DoiSet extra_coverage = {});
Corpus ingest_corpus_file(const std::string& path, std::string name, DoiSet extra_coverage = {});

/// Writes the JSON-lines corpus format; ingest_corpus reads it back unchanged.
void serialize_corpus(std::ostream& out, const Corpus& corpus);

/// Coverage file: one DOI per line, blank lines ignored.
DoiSet load_coverage(std::istream& in);
DoiSet load_coverage_file(const std::string& path);
void save_coverage(std::ostream& out, const DoiSet& coverage);

std::vector<PublicationRecord> filter_window(std::span<const PublicationRecord> records,
                                             const YearWindow& window);

/// Keeps the ids of `ids` whose record year falls inside the window.
IdSet filter_window(const IdSet& ids, const Corpus& corpus, const YearWindow& window);

/// with_doi / total. Throws ComputeError("empty result set") when total is 0.
double doi_share(std::size_t with_doi, std::size_t total);

}  // namespace sdglab
