// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/tokenize.hpp"

#include <clocale>
#include <cwctype>

#include <locale.h>
#include <wctype.h>

namespace sdglab {

namespace {

// glibc's C.UTF-8 carries the full Unicode ctype tables; the result does not
// depend on the process locale.
locale_t unicode_locale() {
    static const locale_t loc = [] {
        locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(nullptr));
        if (!l) l = newlocale(LC_CTYPE_MASK, "C.utf8", static_cast<locale_t>(nullptr));
        return l;
    }();
    return loc;
}

bool ascii_alnum(char32_t cp) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
}

// Decodes one code point; on malformed input consumes one byte and yields
// U+FFFD, which is not alphanumeric.
char32_t decode(std::string_view s, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + extra >= s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += extra + 1;
    return cp;
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

bool is_token_char(char32_t cp) {
    if (cp < 0x80) return ascii_alnum(cp);
    if (cp == 0xFFFD) return false;
    if (auto loc = unicode_locale()) return iswalnum_l(static_cast<wint_t>(cp), loc) != 0;
    // Fallback without a UTF-8 locale: Latin-1 and Latin Extended letters.
    return (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7);
}

char32_t fold_case(char32_t cp) {
    if (cp < 0x80) return (cp >= U'A' && cp <= U'Z') ? cp + 32 : cp;
    if (auto loc = unicode_locale()) return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc));
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    return cp;
}

TokenStream tokenize(std::string_view text, std::uint32_t first_position) {
    TokenStream out;
    std::string current;
    std::uint32_t pos = first_position;
    std::size_t i = 0;
    auto flush = [&] {
        if (!current.empty()) {
            out.push_back({std::move(current), pos++});
            current.clear();
        }
    };
    while (i < text.size()) {
        char32_t cp = decode(text, i);
        if (is_token_char(cp))
            encode(fold_case(cp), current);
        else
            flush();
    }
    flush();
    return out;
}

}  // namespace sdglab
