// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include <cctype>
#include <optional>

#include "sdglab/query.hpp"

namespace sdglab {

namespace q {

Query term(std::string token) { return Query{TermNode{std::move(token)}}; }
Query wildcard(std::string stem) { return Query{WildcardNode{std::move(stem)}}; }
Query phrase(std::vector<QueryToken> tokens) { return Query{PhraseNode{std::move(tokens)}}; }

Query phrase(const std::vector<std::string>& words) {
    std::vector<QueryToken> tokens;
    for (const auto& w : words) tokens.push_back({w, false});
    return phrase(std::move(tokens));
}

Query proximity(std::vector<QueryToken> tokens, std::uint32_t window) {
    return Query{ProximityNode{std::move(tokens), window}};
}

Query proximity(const std::vector<std::string>& words, std::uint32_t window) {
    std::vector<QueryToken> tokens;
    for (const auto& w : words) tokens.push_back({w, false});
    return proximity(std::move(tokens), window);
}

Query all_of(std::vector<Query> children) { return Query{AndNode{std::move(children)}}; }
Query any_of(std::vector<Query> children) { return Query{OrNode{std::move(children)}}; }
Query and_not(Query left, Query right) { return Query{AndNotNode{std::move(left), std::move(right)}}; }
Query scoped(FieldSet fields, Query child) { return Query{FieldScopeNode{fields, std::move(child)}}; }

}  // namespace q

namespace {

enum class Tok { lparen, rparen, quoted, word, op_and, op_or, op_not, scope, end };

struct Lexeme {
    Tok kind;
    std::size_t offset;
    std::string text;                    // quoted content or bare word
    std::optional<std::uint32_t> window;  // quoted ~N
    FieldSet fields;                      // scope
};

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::optional<FieldSet> scope_fields(std::string_view word) {
    FieldSet fs;
    std::size_t start = 0;
    while (start <= word.size()) {
        auto dash = word.find('-', start);
        auto part = upper(word.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start));
        if (part == "TITLE")
            fs.insert(Field::title);
        else if (part == "ABS" || part == "ABSTRACT")
            fs.insert(Field::abstract);
        else if (part == "KEY" || part == "KEYWORDS")
            fs.insert(Field::keywords);
        else
            return std::nullopt;
        if (dash == std::string_view::npos) break;
        start = dash + 1;
    }
    return fs;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<Lexeme> lex(std::string_view text) {
    std::vector<Lexeme> out;
    std::size_t i = 0;
    while (true) {
        while (i < text.size() && is_space(text[i])) ++i;
        if (i >= text.size()) break;
        char c = text[i];
        if (c == '(') {
            out.push_back({Tok::lparen, i, {}, {}, {}});
            ++i;
        } else if (c == ')') {
            out.push_back({Tok::rparen, i, {}, {}, {}});
            ++i;
        } else if (c == '"' || c == '\'') {
            auto close = text.find(c, i + 1);
            if (close == std::string_view::npos) throw ParseError("unbalanced quote", i);
            Lexeme lx{Tok::quoted, i, std::string(text.substr(i + 1, close - i - 1)), {}, {}};
            i = close + 1;
            if (i < text.size() && text[i] == '~') {
                std::size_t digits = ++i;
                std::uint64_t n = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    n = n * 10 + static_cast<unsigned>(text[i] - '0');
                    if (n > 1'000'000) throw ParseError("proximity window too large", digits);
                    ++i;
                }
                if (i == digits) throw ParseError("expected a window size after '~'", digits);
                if (n == 0) throw ParseError("proximity window must be at least 1", digits);
                lx.window = static_cast<std::uint32_t>(n);
            }
            out.push_back(std::move(lx));
        } else {
            std::size_t start = i;
            while (i < text.size() && !is_space(text[i]) && text[i] != '(' && text[i] != ')' && text[i] != '"') ++i;
            auto word = text.substr(start, i - start);
            auto up = upper(word);
            if (up == "AND")
                out.push_back({Tok::op_and, start, {}, {}, {}});
            else if (up == "OR")
                out.push_back({Tok::op_or, start, {}, {}, {}});
            else if (up == "NOT")
                out.push_back({Tok::op_not, start, {}, {}, {}});
            else if (auto fs = scope_fields(word); fs && i < text.size() && text[i] == '(')
                out.push_back({Tok::scope, start, std::string(word), {}, *fs});
            else
                out.push_back({Tok::word, start, std::string(word), {}, {}});
        }
    }
    out.push_back({Tok::end, text.size(), {}, {}, {}});
    return out;
}

// Splits quoted or bare text into query tokens; a chunk ending in '*'
// marks its last token as a wildcard stem.
std::vector<QueryToken> words_to_tokens(std::string_view text, std::size_t base_offset) {
    std::vector<QueryToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        auto chunk = text.substr(start, i - start);
        if (chunk.empty()) continue;
        bool wildcard = chunk.back() == '*';
        auto body = wildcard ? chunk.substr(0, chunk.size() - 1) : chunk;
        if (auto star = body.find('*'); star != std::string_view::npos)
            throw ParseError("wildcard '*' is only allowed at the end of a word", base_offset + start + star);
        auto toks = tokenize(body);
        if (toks.empty()) {
            if (wildcard) throw ParseError("unbounded wildcard", base_offset + start);
            continue;
        }
        for (auto& t : toks) out.push_back({std::move(t.text), false});
        out.back().wildcard = wildcard;
    }
    return out;
}

Query leaf(std::vector<QueryToken> tokens, std::optional<std::uint32_t> window) {
    if (tokens.size() == 1) {
        // A proximity group of one word reduces to the word itself.
        auto& t = tokens.front();
        return t.wildcard ? q::wildcard(std::move(t.text)) : q::term(std::move(t.text));
    }
    if (window) return q::proximity(std::move(tokens), *window);
    return q::phrase(std::move(tokens));
}

class Parser {
public:
    explicit Parser(std::vector<Lexeme> lexemes) : lx_(std::move(lexemes)) {}

    Query parse() {
        if (peek().kind == Tok::end) throw ParseError("empty query", 0);
        auto q = parse_or();
        if (peek().kind == Tok::rparen) throw ParseError("unbalanced parenthesis", peek().offset);
        if (peek().kind != Tok::end) throw ParseError("expected AND, OR or AND NOT", peek().offset);
        return q;
    }

private:
    const Lexeme& peek(std::size_t ahead = 0) const { return lx_[std::min(pos_ + ahead, lx_.size() - 1)]; }
    const Lexeme& next() { return lx_[pos_++]; }

    bool at_and_not() const {
        return peek().kind == Tok::op_not || (peek().kind == Tok::op_and && peek(1).kind == Tok::op_not);
    }

    Query parse_or() {
        std::vector<Query> children;
        children.push_back(parse_and());
        while (peek().kind == Tok::op_or) {
            next();
            children.push_back(parse_and());
        }
        return children.size() == 1 ? std::move(children.front()) : q::any_of(std::move(children));
    }

    Query parse_and() {
        std::vector<Query> children;
        children.push_back(parse_and_not());
        while (peek().kind == Tok::op_and && peek(1).kind != Tok::op_not) {
            next();
            children.push_back(parse_and_not());
        }
        return children.size() == 1 ? std::move(children.front()) : q::all_of(std::move(children));
    }

    Query parse_and_not() {
        auto left = parse_primary();
        while (at_and_not()) {
            if (next().kind == Tok::op_and) next();
            left = q::and_not(std::move(left), parse_primary());
        }
        return left;
    }

    Query parse_group(std::size_t open_offset) {
        auto inner = parse_or();
        if (peek().kind != Tok::rparen) throw ParseError("unbalanced parenthesis", open_offset);
        next();
        return inner;
    }

    Query parse_primary() {
        const auto& lx = next();
        switch (lx.kind) {
            case Tok::lparen: return parse_group(lx.offset);
            case Tok::scope: {
                auto fields = lx.fields;
                const auto& open = next();  // lexer guarantees '(' follows
                return q::scoped(fields, parse_group(open.offset));
            }
            case Tok::quoted: {
                auto tokens = words_to_tokens(lx.text, lx.offset + 1);
                if (tokens.empty()) throw ParseError("quoted text contains no words", lx.offset);
                return leaf(std::move(tokens), lx.window);
            }
            case Tok::word: {
                auto tokens = words_to_tokens(lx.text, lx.offset);
                if (tokens.empty()) throw ParseError("expected a word", lx.offset);
                return leaf(std::move(tokens), std::nullopt);
            }
            case Tok::rparen: throw ParseError("unbalanced parenthesis", lx.offset);
            case Tok::end: throw ParseError("unexpected end of query", lx.offset);
            case Tok::op_and:
            case Tok::op_or:
            case Tok::op_not: throw ParseError("operator is missing its left operand", lx.offset);
        }
        throw ParseError("unexpected input", lx.offset);
    }

    std::vector<Lexeme> lx_;
    std::size_t pos_ = 0;
};

std::string join_tokens(const std::vector<QueryToken>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t.text;
        if (t.wildcard) out += '*';
    }
    return out;
}

bool is_compound(const Query& q) {
    return std::holds_alternative<AndNode>(q.node) || std::holds_alternative<OrNode>(q.node) ||
           std::holds_alternative<AndNotNode>(q.node);
}

std::string print_operand(const Query& q);

std::string print(const Query& query) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermNode>) {
                return "\"" + n.token + "\"";
            } else if constexpr (std::is_same_v<T, WildcardNode>) {
                return "\"" + n.stem + "*\"";
            } else if constexpr (std::is_same_v<T, PhraseNode>) {
                return "\"" + join_tokens(n.tokens) + "\"";
            } else if constexpr (std::is_same_v<T, ProximityNode>) {
                return "\"" + join_tokens(n.tokens) + "\"~" + std::to_string(n.window);
            } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
                const char* sep = std::is_same_v<T, AndNode> ? " AND " : " OR ";
                std::string out;
                for (const auto& c : n.children) {
                    if (!out.empty()) out += sep;
                    out += print_operand(c);
                }
                return out;
            } else if constexpr (std::is_same_v<T, AndNotNode>) {
                return print_operand(*n.left) + " AND NOT " + print_operand(*n.right);
            } else {
                std::string scope;
                if (n.fields.contains(Field::title)) scope += "TITLE";
                if (n.fields.contains(Field::abstract)) scope += scope.empty() ? "ABS" : "-ABS";
                if (n.fields.contains(Field::keywords)) scope += scope.empty() ? "KEY" : "-KEY";
                return scope + "(" + print(*n.child) + ")";
            }
        },
        query.node);
}

std::string print_operand(const Query& q) { return is_compound(q) ? "(" + print(q) + ")" : print(q); }

void explain_into(const Query& query, int depth, std::string& out) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermNode>) {
                out += pad + "TERM " + n.token + "\n";
            } else if constexpr (std::is_same_v<T, WildcardNode>) {
                out += pad + "WILDCARD " + n.stem + "*\n";
            } else if constexpr (std::is_same_v<T, PhraseNode>) {
                out += pad + "PHRASE \"" + join_tokens(n.tokens) + "\"\n";
            } else if constexpr (std::is_same_v<T, ProximityNode>) {
                out += pad + "PROXIMITY ~" + std::to_string(n.window) + " \"" + join_tokens(n.tokens) + "\"\n";
            } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
                out += pad + (std::is_same_v<T, AndNode> ? "AND\n" : "OR\n");
                for (const auto& c : n.children) explain_into(c, depth + 1, out);
            } else if constexpr (std::is_same_v<T, AndNotNode>) {
                out += pad + "AND NOT\n";
                explain_into(*n.left, depth + 1, out);
                explain_into(*n.right, depth + 1, out);
            } else {
                std::string names;
                for (const auto& f : n.fields.names()) names += (names.empty() ? "" : ",") + f;
                out += pad + "FIELDS [" + names + "]\n";
                explain_into(*n.child, depth + 1, out);
            }
        },
        query.node);
}

void validate_word(std::string_view word) {
    auto toks = tokenize(word);
    if (toks.size() != 1 || toks.front().text != word)
        throw ComputeError("query token '" + std::string(word) + "' is not a single lowercase word");
}

void validate_tokens(const std::vector<QueryToken>& tokens) {
    for (const auto& t : tokens) validate_word(t.text);
}

}  // namespace

Query parse_query(std::string_view text) { return Parser(lex(text)).parse(); }

std::string to_string(const Query& query) { return print(query); }

std::string explain(const Query& query) {
    std::string out;
    explain_into(query, 0, out);
    return out;
}

void validate(const Query& query) {
    std::visit(
        [](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermNode>) {
                validate_word(n.token);
            } else if constexpr (std::is_same_v<T, WildcardNode>) {
                validate_word(n.stem);
            } else if constexpr (std::is_same_v<T, PhraseNode>) {
                if (n.tokens.empty()) throw ComputeError("empty phrase");
                validate_tokens(n.tokens);
            } else if constexpr (std::is_same_v<T, ProximityNode>) {
                if (n.tokens.size() < 2) throw ComputeError("proximity needs at least two tokens");
                if (n.window < 1) throw ComputeError("proximity window must be at least 1");
                validate_tokens(n.tokens);
            } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
                if (n.children.size() < 2) throw ComputeError("AND/OR needs at least two operands");
                for (const auto& c : n.children) validate(c);
            } else if constexpr (std::is_same_v<T, AndNotNode>) {
                validate(*n.left);
                validate(*n.right);
            } else {
                if (n.fields.empty()) throw ComputeError("field scope selects no fields");
                validate(*n.child);
            }
        },
        query.node);
}

}  // namespace sdglab
