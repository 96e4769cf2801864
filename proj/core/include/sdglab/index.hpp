// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdglab/corpus.hpp"
#include "sdglab/tokenize.hpp"

namespace sdglab {

enum class Field : std::uint8_t { title = 0, abstract = 1, keywords = 2 };

inline constexpr std::array<Field, 3> kAllFields = {Field::title, Field::abstract, Field::keywords};

std::string_view field_name(Field f);
std::optional<Field> parse_field(std::string_view name);

/// Small bit set over Field.
class FieldSet {
public:
    constexpr FieldSet() = default;
    constexpr FieldSet(std::initializer_list<Field> fields) {
        for (auto f : fields) insert(f);
    }

    static constexpr FieldSet all() { return FieldSet{Field::title, Field::abstract, Field::keywords}; }

    constexpr void insert(Field f) { bits_ |= bit(f); }
    [[nodiscard]] constexpr bool contains(Field f) const { return (bits_ & bit(f)) != 0; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr std::uint8_t bits() const { return bits_; }
    [[nodiscard]] std::vector<std::string> names() const;

    /// Throws LoadError on an unknown field name.
    static FieldSet from_names(const std::vector<std::string>& names);

    friend constexpr bool operator==(FieldSet, FieldSet) = default;

private:
    static constexpr std::uint8_t bit(Field f) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(f)); }
    std::uint8_t bits_ = 0;
};

/// Positions between consecutive keywords are separated by this gap so a
/// proximity window never spans two keywords.
inline constexpr std::uint32_t kKeywordGap = 100;

/// The token stream the index stores for one field of a record.
TokenStream field_tokens(const PublicationRecord& record, Field field);

struct Posting {
    std::uint32_t doc = 0;
    Field field = Field::title;
    std::vector<std::uint32_t> positions;

    friend bool operator==(const Posting&, const Posting&) = default;
};

using PostingList = std::vector<Posting>;

/// Document ordinals, sorted ascending and unique.
using DocSet = std::vector<std::uint32_t>;

/// Positional inverted index over title, abstract and keywords. Documents
/// are numbered by ascending internal id, so the index does not depend on
/// corpus record order. Postings are sorted by (doc, field).
class PositionalIndex {
public:
    static constexpr std::string_view kMagic = "SDGLAB-INDEX";
    static constexpr int kVersion = 1;

    PositionalIndex() = default;
    static PositionalIndex build(const Corpus& corpus);

    [[nodiscard]] std::size_t doc_count() const noexcept { return doc_ids_.size(); }
    [[nodiscard]] const std::string& doc_id(std::uint32_t doc) const { return doc_ids_.at(doc); }
    [[nodiscard]] const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
    [[nodiscard]] std::optional<std::uint32_t> doc_ordinal(std::string_view id) const;

    /// nullptr when the token is not in the vocabulary.
    [[nodiscard]] const PostingList* postings(std::string_view token) const;
    [[nodiscard]] const std::map<std::string, PostingList, std::less<>>& terms() const noexcept { return postings_; }
    [[nodiscard]] std::size_t vocabulary_size() const noexcept { return postings_.size(); }

    /// Vocabulary tokens starting with `stem`, in lexicographic order.
    [[nodiscard]] std::vector<std::string> tokens_with_prefix(std::string_view stem) const;

    [[nodiscard]] std::uint64_t total_positions() const;

    /// JSON serialization led by the magic string and format version.
    void save(std::ostream& out) const;
    static PositionalIndex load(std::istream& in);

    friend bool operator==(const PositionalIndex&, const PositionalIndex&) = default;

private:
    std::vector<std::string> doc_ids_;
    std::map<std::string, PostingList, std::less<>> postings_;
};

/// Expands a terminal-star pattern ("legum*") against the index vocabulary.
/// Throws ComputeError("unbounded wildcard") for a bare "*", and
/// ComputeError for a pattern without a single trailing star.
std::vector<std::string> wildcard_expand(std::string_view pattern, const PositionalIndex& index);

}  // namespace sdglab
