// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sdglab/index.hpp"

namespace sdglab {

/// Heap-allocated value with deep-copy semantics, for recursive variants.
template <class T>
class Box {
public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
    Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other) {
        if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;
    ~Box() = default;

    T& operator*() { return *ptr_; }
    const T& operator*() const { return *ptr_; }
    T* operator->() { return ptr_.get(); }
    const T* operator->() const { return ptr_.get(); }

    friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

private:
    std::unique_ptr<T> ptr_;
};

/// One word of a phrase or proximity group; `wildcard` marks a prefix stem.
struct QueryToken {
    std::string text;
    bool wildcard = false;

    friend bool operator==(const QueryToken&, const QueryToken&) = default;
};

struct Query;

struct TermNode {
    std::string token;
    friend bool operator==(const TermNode&, const TermNode&) = default;
};

struct WildcardNode {
    std::string stem;
    friend bool operator==(const WildcardNode&, const WildcardNode&) = default;
};

/// Ordered, contiguous token sequence.
struct PhraseNode {
    std::vector<QueryToken> tokens;
    friend bool operator==(const PhraseNode&, const PhraseNode&) = default;
};

/// Unordered group whose matched positions span at most
/// tokens.size() - 1 + window.
struct ProximityNode {
    std::vector<QueryToken> tokens;
    std::uint32_t window = 1;
    friend bool operator==(const ProximityNode&, const ProximityNode&) = default;
};

struct AndNode {
    std::vector<Query> children;
    friend bool operator==(const AndNode&, const AndNode&) = default;
};

struct OrNode {
    std::vector<Query> children;
    friend bool operator==(const OrNode&, const OrNode&) = default;
};

struct AndNotNode {
    Box<Query> left;
    Box<Query> right;
    friend bool operator==(const AndNotNode&, const AndNotNode&) = default;
};

struct FieldScopeNode {
    FieldSet fields;
    Box<Query> child;
    friend bool operator==(const FieldScopeNode&, const FieldScopeNode&) = default;
};

struct Query {
    using Node = std::variant<TermNode, WildcardNode, PhraseNode, ProximityNode, AndNode, OrNode, AndNotNode,
                              FieldScopeNode>;
    Node node;

    friend bool operator==(const Query&, const Query&) = default;
};

namespace q {

Query term(std::string token);
Query wildcard(std::string stem);
Query phrase(std::vector<QueryToken> tokens);
Query phrase(const std::vector<std::string>& words);
Query proximity(std::vector<QueryToken> tokens, std::uint32_t window);
Query proximity(const std::vector<std::string>& words, std::uint32_t window);
Query all_of(std::vector<Query> children);
Query any_of(std::vector<Query> children);
Query and_not(Query left, Query right);
Query scoped(FieldSet fields, Query child);

}  // namespace q

/// Parses the common query dialect:
///   "quoted words"        phrase (a single quoted word is a term)
///   "quoted words"~N      proximity, N >= 1
///   bare words, stem*     terms and terminal wildcards
///   AND, OR, AND NOT/NOT  infix, case-insensitive; AND NOT binds tightest,
///                         then AND, then OR
///   ( ... )               grouping
///   TITLE-ABS-KEY( ... )  field scope (TITLE, ABS, KEY in any combination)
/// Single quotes are accepted as phrase delimiters. Throws ParseError with
/// the byte offset of the problem.
Query parse_query(std::string_view text);

/// Canonical text form; parse_query(to_string(q)) == q.
std::string to_string(const Query& query);

/// Indented tree rendering for audit output.
std::string explain(const Query& query);

/// Throws ComputeError when a programmatically built tree breaks the node
/// invariants (empty groups, proximity with fewer than two tokens or window
/// 0, tokens that are not single lowercase words, empty field scope).
void validate(const Query& query);

/// True when each phrase token can be assigned a distinct position of
/// `field` (any order) with max - min <= tokens.size() - 1 + window.
bool proximity_match(std::span<const QueryToken> tokens, std::uint32_t window, const TokenStream& field);
bool proximity_match(std::span<const std::string> tokens, std::uint32_t window, const TokenStream& field);

/// Candidate positions per token (each sorted ascending). True when a
/// system of distinct positions, one per token, fits within `max_span`.
bool fits_within_span(const std::vector<std::vector<std::uint32_t>>& candidates, std::uint32_t max_span);

/// Candidate positions per token. True when some start position p has
/// token i at p + i for every i.
bool forms_phrase(const std::vector<std::vector<std::uint32_t>>& candidates);

/// Boolean set evaluation of `query` against the index. Terms match in any
/// field of `default_fields` unless a field scope overrides it; phrase and
/// proximity constraints hold within a single field. Throws ComputeError for
/// wildcard stems shorter than two characters.
DocSet evaluate(const Query& query, const PositionalIndex& index, FieldSet default_fields);

/// Evaluates and maps ordinals back to internal ids.
IdSet evaluate_ids(const Query& query, const PositionalIndex& index, FieldSet default_fields);

}  // namespace sdglab
