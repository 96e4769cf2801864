// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include <algorithm>
#include <iterator>
#include <map>
#include <utility>

#include "sdglab/query.hpp"

namespace sdglab {

namespace {

constexpr std::size_t kMinWildcardStem = 2;

bool token_matches(const QueryToken& qt, std::string_view token) {
    return qt.wildcard ? token.starts_with(qt.text) : token == qt.text;
}

// Kuhn's augmenting path: token `t` tries to claim a position slot inside
// the current window.
bool augment(std::size_t t, const std::vector<std::vector<std::size_t>>& options, std::vector<int>& slot_owner,
             std::vector<char>& visited) {
    for (auto slot : options[t]) {
        if (visited[slot]) continue;
        visited[slot] = 1;
        if (slot_owner[slot] < 0 || augment(static_cast<std::size_t>(slot_owner[slot]), options, slot_owner, visited)) {
            slot_owner[slot] = static_cast<int>(t);
            return true;
        }
    }
    return false;
}

DocSet union_of(const DocSet& a, const DocSet& b) {
    DocSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

DocSet intersection_of(const DocSet& a, const DocSet& b) {
    DocSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

DocSet difference_of(const DocSet& a, const DocSet& b) {
    DocSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

using FieldKey = std::pair<std::uint32_t, Field>;
using PositionMap = std::map<FieldKey, std::vector<std::uint32_t>>;

class Evaluator {
public:
    explicit Evaluator(const PositionalIndex& index) : index_(index) {}

    DocSet eval(const Query& query, FieldSet fields) {
        return std::visit(
            [&](const auto& n) -> DocSet {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, TermNode>) {
                    return docs_for({n.token, false}, fields);
                } else if constexpr (std::is_same_v<T, WildcardNode>) {
                    return docs_for({n.stem, true}, fields);
                } else if constexpr (std::is_same_v<T, PhraseNode>) {
                    if (n.tokens.size() == 1) return docs_for(n.tokens.front(), fields);
                    return positional(n.tokens, fields, [](const auto& c) { return forms_phrase(c); });
                } else if constexpr (std::is_same_v<T, ProximityNode>) {
                    auto span = static_cast<std::uint32_t>(n.tokens.size() - 1) + n.window;
                    return positional(n.tokens, fields, [span](const auto& c) { return fits_within_span(c, span); });
                } else if constexpr (std::is_same_v<T, AndNode>) {
                    DocSet acc = eval(n.children.front(), fields);
                    for (std::size_t i = 1; i < n.children.size() && !acc.empty(); ++i)
                        acc = intersection_of(acc, eval(n.children[i], fields));
                    return acc;
                } else if constexpr (std::is_same_v<T, OrNode>) {
                    DocSet acc;
                    for (const auto& c : n.children) acc = union_of(acc, eval(c, fields));
                    return acc;
                } else if constexpr (std::is_same_v<T, AndNotNode>) {
                    auto left = eval(*n.left, fields);
                    if (left.empty()) return left;
                    return difference_of(left, eval(*n.right, fields));
                } else {
                    return eval(*n.child, n.fields);
                }
            },
            query.node);
    }

private:
    // Vocabulary tokens a query token stands for.
    std::vector<const PostingList*> lists_for(const QueryToken& qt) {
        std::vector<const PostingList*> out;
        if (!qt.wildcard) {
            if (const auto* list = index_.postings(qt.text)) out.push_back(list);
            return out;
        }
        if (qt.text.size() < kMinWildcardStem)
            throw ComputeError("wildcard stem '" + qt.text + "*' is shorter than " + std::to_string(kMinWildcardStem) +
                               " characters");
        for (const auto& tok : index_.tokens_with_prefix(qt.text)) out.push_back(index_.postings(tok));
        return out;
    }

    DocSet docs_for(const QueryToken& qt, FieldSet fields) {
        DocSet out;
        for (const auto* list : lists_for(qt))
            for (const auto& p : *list)
                if (fields.contains(p.field)) out.push_back(p.doc);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    PositionMap positions_for(const QueryToken& qt, FieldSet fields) {
        PositionMap out;
        for (const auto* list : lists_for(qt))
            for (const auto& p : *list)
                if (fields.contains(p.field)) {
                    auto& dst = out[{p.doc, p.field}];
                    dst.insert(dst.end(), p.positions.begin(), p.positions.end());
                }
        for (auto& [_, v] : out) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        return out;
    }

    template <class Check>
    DocSet positional(const std::vector<QueryToken>& tokens, FieldSet fields, Check check) {
        std::vector<PositionMap> maps;
        maps.reserve(tokens.size());
        for (const auto& t : tokens) {
            maps.push_back(positions_for(t, fields));
            if (maps.back().empty()) return {};
        }
        DocSet out;
        std::vector<std::vector<std::uint32_t>> candidates(tokens.size());
        for (const auto& [key, first] : maps.front()) {
            if (!out.empty() && out.back() == key.first) continue;
            bool present = true;
            candidates[0] = first;
            for (std::size_t i = 1; i < maps.size() && present; ++i) {
                auto it = maps[i].find(key);
                if (it == maps[i].end())
                    present = false;
                else
                    candidates[i] = it->second;
            }
            if (present && check(candidates)) out.push_back(key.first);
        }
        return out;
    }

    const PositionalIndex& index_;
};

}  // namespace

bool forms_phrase(const std::vector<std::vector<std::uint32_t>>& candidates) {
    if (candidates.empty()) return false;
    for (auto start : candidates.front()) {
        bool ok = true;
        for (std::size_t i = 1; i < candidates.size() && ok; ++i)
            ok = std::binary_search(candidates[i].begin(), candidates[i].end(), start + static_cast<std::uint32_t>(i));
        if (ok) return true;
    }
    return false;
}

bool fits_within_span(const std::vector<std::vector<std::uint32_t>>& candidates, std::uint32_t max_span) {
    const std::size_t k = candidates.size();
    if (k == 0) return false;
    for (const auto& c : candidates)
        if (c.empty()) return false;

    // Every position that some token may occupy, with the tokens allowed there.
    std::map<std::uint32_t, std::vector<std::size_t>> owners;
    for (std::size_t t = 0; t < k; ++t)
        for (auto p : candidates[t]) owners[p].push_back(t);
    if (owners.size() < k) return false;

    std::vector<std::uint32_t> slots;
    for (const auto& [p, _] : owners) slots.push_back(p);

    // Slide a window [slots[lo], slots[lo] + max_span] and look for a perfect
    // matching of tokens to distinct positions inside it.
    for (std::size_t lo = 0; lo < slots.size(); ++lo) {
        std::size_t hi = lo;
        while (hi < slots.size() && slots[hi] - slots[lo] <= max_span) ++hi;
        if (hi - lo < k) continue;
        std::vector<std::vector<std::size_t>> options(k);
        for (std::size_t s = lo; s < hi; ++s)
            for (auto t : owners[slots[s]]) options[t].push_back(s - lo);
        bool feasible = true;
        for (const auto& o : options) feasible = feasible && !o.empty();
        if (!feasible) continue;
        std::vector<int> slot_owner(hi - lo, -1);
        std::size_t matched = 0;
        for (std::size_t t = 0; t < k; ++t) {
            std::vector<char> visited(hi - lo, 0);
            if (!augment(t, options, slot_owner, visited)) break;
            ++matched;
        }
        if (matched == k) return true;
    }
    return false;
}

bool proximity_match(std::span<const QueryToken> tokens, std::uint32_t window, const TokenStream& field) {
    std::vector<std::vector<std::uint32_t>> candidates(tokens.size());
    for (const auto& tok : field)
        for (std::size_t i = 0; i < tokens.size(); ++i)
            if (token_matches(tokens[i], tok.text)) candidates[i].push_back(tok.position);
    auto span = static_cast<std::uint32_t>(tokens.size() ? tokens.size() - 1 : 0) + window;
    return fits_within_span(candidates, span);
}

bool proximity_match(std::span<const std::string> tokens, std::uint32_t window, const TokenStream& field) {
    std::vector<QueryToken> qt;
    for (const auto& t : tokens) qt.push_back({t, false});
    return proximity_match(std::span<const QueryToken>(qt), window, field);
}

DocSet evaluate(const Query& query, const PositionalIndex& index, FieldSet default_fields) {
    validate(query);
    return Evaluator(index).eval(query, default_fields);
}

IdSet evaluate_ids(const Query& query, const PositionalIndex& index, FieldSet default_fields) {
    auto docs = evaluate(query, index, default_fields);
    std::vector<std::string> ids;
    ids.reserve(docs.size());
    for (auto d : docs) ids.push_back(index.doc_id(d));
    return IdSet::from_sorted(std::move(ids));
}

}  // namespace sdglab
