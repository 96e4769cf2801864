// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/corpus.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace sdglab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

constexpr std::array<std::string_view, 5> kDoiPrefixes = {
    "https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/", "doi:"};

std::string required_string(const nlohmann::json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        throw IngestError(std::string("missing or non-string required field '") + key + "'", line);
    return it->get<std::string>();
}

std::string optional_string(const nlohmann::json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) throw IngestError(std::string("field '") + key + "' must be a string", line);
    return it->get<std::string>();
}

std::vector<std::string> string_array(const nlohmann::json& obj, const char* key, std::size_t line) {
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return out;
    if (!it->is_array()) throw IngestError(std::string("field '") + key + "' must be an array", line);
    for (const auto& v : *it) {
        if (!v.is_string()) throw IngestError(std::string("field '") + key + "' must hold strings", line);
        out.push_back(v.get<std::string>());
    }
    return out;
}

PublicationRecord parse_record(std::string_view text, std::size_t line) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestError(std::string("invalid JSON: ") + e.what(), line);
    }
    if (!obj.is_object()) throw IngestError("record is not a JSON object", line);

    PublicationRecord rec;
    rec.id = required_string(obj, "id", line);
    if (rec.id.empty()) throw IngestError("empty 'id'", line);
    rec.title = required_string(obj, "title", line);

    auto year = obj.find("year");
    if (year == obj.end() || !year->is_number_integer())
        throw IngestError("missing or non-integer required field 'year'", line);
    rec.year = year->get<int>();
    if (rec.year < 1000 || rec.year > 9999) throw IngestError("year must have four digits", line);

    rec.doi = normalize_doi(optional_string(obj, "doi", line));
    rec.abstract_text = optional_string(obj, "abstract", line);
    rec.keywords = string_array(obj, "keywords", line);
    rec.doc_type = optional_string(obj, "doc_type", line);
    rec.references = string_array(obj, "refs", line);
    return rec;
}

}  // namespace

std::optional<std::string> normalize_doi(std::string_view raw) {
    std::string s(trim(raw));
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string_view view = s;
    for (auto prefix : kDoiPrefixes) {
        if (view.starts_with(prefix)) {
            view.remove_prefix(prefix.size());
            break;
        }
    }
    view = trim(view);
    if (!view.starts_with("10.")) return std::nullopt;
    return std::string(view);
}

YearWindow::YearWindow(int start_year, int end_year) : start_(start_year), end_(end_year) {
    if (start_year > end_year)
        throw LoadError("year window start " + std::to_string(start_year) + " is after end " +
                        std::to_string(end_year));
}

Corpus::Corpus(std::string name, std::vector<PublicationRecord> records, DoiSet extra_coverage)
    : name_(std::move(name)), records_(std::move(records)) {
    std::vector<std::string> dois;
    by_id_.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (!by_id_.emplace(records_[i].id, i).second)
            throw IngestError("duplicate internal id '" + records_[i].id + "'", 0);
        if (records_[i].doi) dois.push_back(*records_[i].doi);
    }
    coverage_ = set_union(DoiSet(std::move(dois)), extra_coverage);
}

const PublicationRecord* Corpus::find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

std::map<int, std::size_t> Corpus::year_counts() const {
    std::map<int, std::size_t> counts;
    for (const auto& r : records_) ++counts[r.year];
    return counts;
}

Corpus ingest_corpus(std::istream& in, std::string name, DoiSet extra_coverage) {
    std::vector<PublicationRecord> records;
    std::unordered_map<std::string, std::size_t> seen;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty()) continue;
        auto rec = parse_record(text, line);
        if (auto [it, fresh] = seen.emplace(rec.id, line); !fresh)
            throw IngestError("duplicate internal id '" + rec.id + "' (first seen on line " +
                                  std::to_string(it->second) + ")",
                              line);
        records.push_back(std::move(rec));
    }
    return Corpus(std::move(name), std::move(records), std::move(extra_coverage));
}

Corpus ingest_corpus_file(const std::string& path, std::string name, DoiSet extra_coverage) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file '" + path + "'");
    try {
        return ingest_corpus(in, std::move(name), std::move(extra_coverage));
    } catch (const IngestError& e) {
        throw IngestError(path + ": " + e.what(), 0);
    }
}

void serialize_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& r : corpus.records()) {
        nlohmann::ordered_json obj;
        obj["id"] = r.id;
        obj["doi"] = r.doi ? nlohmann::ordered_json(*r.doi) : nlohmann::ordered_json(nullptr);
        obj["title"] = r.title;
        obj["abstract"] = r.abstract_text;
        obj["keywords"] = r.keywords;
        obj["year"] = r.year;
        obj["doc_type"] = r.doc_type;
        obj["refs"] = r.references;
        out << obj.dump() << '\n';
    }
}

DoiSet load_coverage(std::istream& in) {
    std::vector<std::string> dois;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty()) continue;
        auto doi = normalize_doi(text);
        if (!doi) throw IngestError("not a DOI: '" + std::string(trim(text)) + "'", line);
        dois.push_back(std::move(*doi));
    }
    return DoiSet(std::move(dois));
}

DoiSet load_coverage_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open coverage file '" + path + "'");
    try {
        return load_coverage(in);
    } catch (const IngestError& e) {
        throw IngestError(path + ": " + e.what(), 0);
    }
}

void save_coverage(std::ostream& out, const DoiSet& coverage) {
    for (const auto& d : coverage) out << d << '\n';
}

std::vector<PublicationRecord> filter_window(std::span<const PublicationRecord> records,
                                             const YearWindow& window) {
    std::vector<PublicationRecord> out;
    for (const auto& r : records)
        if (window.contains(r.year)) out.push_back(r);
    return out;
}

IdSet filter_window(const IdSet& ids, const Corpus& corpus, const YearWindow& window) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        const auto* rec = corpus.find(id);
        if (rec && window.contains(rec->year)) out.push_back(id);
    }
    return IdSet::from_sorted(std::move(out));
}

double doi_share(std::size_t with_doi, std::size_t total) {
    if (total == 0) throw ComputeError("empty result set");
    if (with_doi > total) throw ComputeError("more DOI records than records");
    return static_cast<double>(with_doi) / static_cast<double>(total);
}

}  // namespace sdglab
