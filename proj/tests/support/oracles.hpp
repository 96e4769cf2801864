// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

// Reference implementations used only by tests. They work directly on
// record text, never on the index, and favour obviousness over speed.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sdglab/corpus.hpp"
#include "sdglab/query.hpp"

namespace oracle {

// Lowercase ASCII alphanumeric runs. Only valid for ASCII fixtures.
inline std::vector<std::string> ascii_words(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Word sequences a query may match inside: title, abstract, and each keyword
// on its own.
struct Segment {
    sdglab::Field field;
    std::vector<std::string> words;
};

inline std::vector<Segment> segments(const sdglab::PublicationRecord& r) {
    std::vector<Segment> out{{sdglab::Field::title, ascii_words(r.title)},
                             {sdglab::Field::abstract, ascii_words(r.abstract_text)}};
    for (const auto& k : r.keywords) out.push_back({sdglab::Field::keywords, ascii_words(k)});
    return out;
}

inline bool token_matches(const sdglab::QueryToken& t, const std::string& word) {
    return t.wildcard ? word.size() >= t.text.size() && word.compare(0, t.text.size(), t.text) == 0 : word == t.text;
}

inline bool phrase_in(const std::vector<sdglab::QueryToken>& tokens, const std::vector<std::string>& words) {
    if (tokens.size() > words.size()) return false;
    for (std::size_t s = 0; s + tokens.size() <= words.size(); ++s) {
        bool ok = true;
        for (std::size_t k = 0; k < tokens.size() && ok; ++k) ok = token_matches(tokens[k], words[s + k]);
        if (ok) return true;
    }
    return false;
}

// Tries every assignment of distinct positions, recursively.
inline bool assign(const std::vector<sdglab::QueryToken>& tokens, const std::vector<std::string>& words,
                   std::size_t k, std::vector<std::size_t>& used, std::size_t max_span) {
    if (k == tokens.size()) {
        auto [lo, hi] = std::minmax_element(used.begin(), used.end());
        return *hi - *lo <= max_span;
    }
    for (std::size_t p = 0; p < words.size(); ++p) {
        if (std::find(used.begin(), used.end(), p) != used.end() || !token_matches(tokens[k], words[p])) continue;
        used.push_back(p);
        bool ok = assign(tokens, words, k + 1, used, max_span);
        used.pop_back();
        if (ok) return true;
    }
    return false;
}

inline bool proximity_in(const std::vector<sdglab::QueryToken>& tokens, std::uint32_t window,
                         const std::vector<std::string>& words) {
    std::vector<std::size_t> used;
    return assign(tokens, words, 0, used, tokens.size() - 1 + window);
}

inline bool matches(const sdglab::Query& query, const std::vector<Segment>& segs, sdglab::FieldSet fields) {
    using namespace sdglab;
    auto any_segment = [&](auto&& pred) {
        for (const auto& s : segs)
            if (fields.contains(s.field) && pred(s.words)) return true;
        return false;
    };
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermNode>) {
                return any_segment([&](const auto& w) { return std::find(w.begin(), w.end(), n.token) != w.end(); });
            } else if constexpr (std::is_same_v<T, WildcardNode>) {
                QueryToken t{n.stem, true};
                return any_segment([&](const auto& w) {
                    return std::any_of(w.begin(), w.end(), [&](const auto& x) { return token_matches(t, x); });
                });
            } else if constexpr (std::is_same_v<T, PhraseNode>) {
                return any_segment([&](const auto& w) { return phrase_in(n.tokens, w); });
            } else if constexpr (std::is_same_v<T, ProximityNode>) {
                return any_segment([&](const auto& w) { return proximity_in(n.tokens, n.window, w); });
            } else if constexpr (std::is_same_v<T, AndNode>) {
                return std::all_of(n.children.begin(), n.children.end(),
                                   [&](const Query& c) { return matches(c, segs, fields); });
            } else if constexpr (std::is_same_v<T, OrNode>) {
                return std::any_of(n.children.begin(), n.children.end(),
                                   [&](const Query& c) { return matches(c, segs, fields); });
            } else if constexpr (std::is_same_v<T, AndNotNode>) {
                return matches(*n.left, segs, fields) && !matches(*n.right, segs, fields);
            } else {
                return matches(*n.child, segs, n.fields);
            }
        },
        query.node);
}

// Ids of records matching `query`, by scanning every record.
inline std::vector<std::string> scan(const sdglab::Query& query, const sdglab::Corpus& corpus,
                                     sdglab::FieldSet fields) {
    std::vector<std::string> out;
    for (const auto& r : corpus.records())
        if (matches(query, segments(r), fields)) out.push_back(r.id);
    std::sort(out.begin(), out.end());
    return out;
}

// Random query over a vocabulary, built directly as a tree.
class QueryGenerator {
public:
    QueryGenerator(std::vector<std::string> vocab, std::uint64_t seed) : vocab_(std::move(vocab)), rng_(seed) {}

    sdglab::Query next(int depth = 3) {
        using namespace sdglab;
        std::size_t kind = depth <= 0 ? below(4) : below(8);
        switch (kind) {
            case 0: return q::term(word());
            case 1: return q::wildcard(stem());
            case 2: return q::phrase(tokens(2 + below(2)));
            case 3: return q::proximity(tokens(2 + below(2)), static_cast<std::uint32_t>(1 + below(4)));
            case 4: {
                std::vector<Query> c;
                for (std::size_t i = 0, n = 2 + below(2); i < n; ++i) c.push_back(next(depth - 1));
                return q::all_of(std::move(c));
            }
            case 5: {
                std::vector<Query> c;
                for (std::size_t i = 0, n = 2 + below(2); i < n; ++i) c.push_back(next(depth - 1));
                return q::any_of(std::move(c));
            }
            case 6: return q::and_not(next(depth - 1), next(depth - 1));
            default: {
                FieldSet f;
                while (f.empty())
                    for (auto field : kAllFields)
                        if (below(2)) f.insert(field);
                return q::scoped(f, next(depth - 1));
            }
        }
    }

private:
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    const std::string& word() { return vocab_[below(vocab_.size())]; }
    std::string stem() {
        const auto& w = word();
        return w.substr(0, std::min<std::size_t>(w.size(), 2 + below(3)));
    }
    std::vector<sdglab::QueryToken> tokens(std::size_t n) {
        std::vector<sdglab::QueryToken> out;
        for (std::size_t i = 0; i < n; ++i) {
            if (below(6) == 0)
                out.push_back({stem(), true});
            else
                out.push_back({word(), false});
        }
        return out;
    }

    std::vector<std::string> vocab_;
    std::mt19937_64 rng_;
};

// Every distinct n-gram (1..max_n) of a word sequence whose first and last
// words are not stopwords.
inline std::set<std::string> ngrams(const std::vector<std::string>& words, std::size_t max_n,
                                    const std::set<std::string>& stop) {
    std::set<std::string> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        for (std::size_t s = 0; s + n <= words.size(); ++s) {
            if (stop.count(words[s]) || stop.count(words[s + n - 1])) continue;
            std::string g = words[s];
            for (std::size_t k = 1; k < n; ++k) g += " " + words[s + k];
            out.insert(g);
        }
    }
    return out;
}

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("sdglab-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace oracle
