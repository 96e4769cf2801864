// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/index.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace sdglab {

std::string_view field_name(Field f) {
    switch (f) {
        case Field::title: return "title";
        case Field::abstract: return "abstract";
        case Field::keywords: return "keywords";
    }
    return "?";
}

std::optional<Field> parse_field(std::string_view name) {
    for (auto f : kAllFields)
        if (field_name(f) == name) return f;
    return std::nullopt;
}

std::vector<std::string> FieldSet::names() const {
    std::vector<std::string> out;
    for (auto f : kAllFields)
        if (contains(f)) out.emplace_back(field_name(f));
    return out;
}

FieldSet FieldSet::from_names(const std::vector<std::string>& names) {
    FieldSet fs;
    for (const auto& n : names) {
        auto f = parse_field(n);
        if (!f) throw LoadError("unknown field '" + n + "'");
        fs.insert(*f);
    }
    return fs;
}

TokenStream field_tokens(const PublicationRecord& record, Field field) {
    switch (field) {
        case Field::title: return tokenize(record.title);
        case Field::abstract: return tokenize(record.abstract_text);
        case Field::keywords: break;
    }
    TokenStream out;
    std::uint32_t next = 0;
    for (const auto& kw : record.keywords) {
        auto toks = tokenize(kw, next);
        if (toks.empty()) continue;
        next = toks.back().position + 1 + kKeywordGap;
        std::move(toks.begin(), toks.end(), std::back_inserter(out));
    }
    return out;
}

PositionalIndex PositionalIndex::build(const Corpus& corpus) {
    PositionalIndex index;
    std::vector<const PublicationRecord*> docs;
    docs.reserve(corpus.size());
    for (const auto& r : corpus.records()) docs.push_back(&r);
    std::sort(docs.begin(), docs.end(), [](auto* a, auto* b) { return a->id < b->id; });

    index.doc_ids_.reserve(docs.size());
    for (std::uint32_t doc = 0; doc < docs.size(); ++doc) {
        index.doc_ids_.push_back(docs[doc]->id);
        for (auto field : kAllFields) {
            // Docs and fields are visited in ascending order, so each posting
            // list stays sorted by (doc, field) as it grows.
            for (auto& tok : field_tokens(*docs[doc], field)) {
                auto& list = index.postings_[tok.text];
                if (list.empty() || list.back().doc != doc || list.back().field != field)
                    list.push_back({doc, field, {}});
                list.back().positions.push_back(tok.position);
            }
        }
    }
    return index;
}

std::optional<std::uint32_t> PositionalIndex::doc_ordinal(std::string_view id) const {
    auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), id);
    if (it == doc_ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - doc_ids_.begin());
}

const PostingList* PositionalIndex::postings(std::string_view token) const {
    auto it = postings_.find(token);
    return it == postings_.end() ? nullptr : &it->second;
}

std::vector<std::string> PositionalIndex::tokens_with_prefix(std::string_view stem) const {
    std::vector<std::string> out;
    for (auto it = postings_.lower_bound(stem); it != postings_.end() && it->first.starts_with(stem); ++it)
        out.push_back(it->first);
    return out;
}

std::uint64_t PositionalIndex::total_positions() const {
    std::uint64_t total = 0;
    for (const auto& [_, list] : postings_)
        for (const auto& p : list) total += p.positions.size();
    return total;
}

void PositionalIndex::save(std::ostream& out) const {
    nlohmann::ordered_json j;
    j["magic"] = kMagic;
    j["version"] = kVersion;
    j["docs"] = doc_ids_;
    auto& terms = j["postings"] = nlohmann::ordered_json::object();
    for (const auto& [token, list] : postings_) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& p : list)
            arr.push_back({p.doc, static_cast<int>(p.field), p.positions});
        terms[token] = std::move(arr);
    }
    out << j.dump() << '\n';
}

PositionalIndex PositionalIndex::load(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("index file is not valid JSON: ") + e.what(), 0);
    }
    if (!j.is_object() || j.value("magic", "") != kMagic) throw IngestError("not an sdglab index file", 0);
    if (j.value("version", 0) != kVersion)
        throw IngestError("unsupported index version " + j["version"].dump(), 0);

    PositionalIndex index;
    try {
        index.doc_ids_ = j.at("docs").get<std::vector<std::string>>();
        for (const auto& [token, arr] : j.at("postings").items()) {
            auto& list = index.postings_[token];
            for (const auto& p : arr) {
                auto field = p.at(1).get<int>();
                if (field < 0 || field > 2) throw IngestError("bad field id in index", 0);
                list.push_back({p.at(0).get<std::uint32_t>(), static_cast<Field>(field),
                                p.at(2).get<std::vector<std::uint32_t>>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("malformed index file: ") + e.what(), 0);
    }
    return index;
}

std::vector<std::string> wildcard_expand(std::string_view pattern, const PositionalIndex& index) {
    if (pattern.empty() || pattern.back() != '*') throw ComputeError("wildcard pattern must end with '*'");
    std::string_view stem = pattern.substr(0, pattern.size() - 1);
    if (stem.empty()) throw ComputeError("unbounded wildcard");
    if (stem.find('*') != std::string_view::npos) throw ComputeError("only a single terminal '*' is supported");
    auto toks = tokenize(stem);
    if (toks.size() != 1 || toks.front().text.size() != stem.size())
        throw ComputeError("wildcard stem '" + std::string(stem) + "' is not a single word");
    return index.tokens_with_prefix(toks.front().text);
}

}  // namespace sdglab
