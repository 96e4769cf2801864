// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sdglab {

struct Token {
    std::string text;
    std::uint32_t position = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

using TokenStream = std::vector<Token>;

/// Splits UTF-8 text into lowercase alphanumeric runs. Every
/// non-alphanumeric code point (hyphen, slash, punctuation, space)
/// separates tokens; digits are kept; no stemming. Positions start at
/// `first_position` and increase by one per token. Invalid UTF-8 bytes act
/// as separators.
TokenStream tokenize(std::string_view text, std::uint32_t first_position = 0);

/// True when the code point counts as a letter or digit for tokenization.
bool is_token_char(char32_t cp);

/// Lowercase mapping used by tokenize.
char32_t fold_case(char32_t cp);

}  // namespace sdglab
