#include "eventforge/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace eventforge::text {

namespace {

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

// Maps one Unicode code point to its folded form. Covers ASCII plus the
// accented Latin ranges that show up in the five supported Wikipedia
// languages, and Cyrillic case folding for ru.
char32_t fold_codepoint(char32_t cp) {
    if (cp < 0x80) {
        if (cp >= 'A' && cp <= 'Z') return cp + 32;
        if (cp == '_') return ' ';
        return cp;
    }
    // Latin-1 Supplement letters to base letters ('.' keeps the sign as-is).
    if (cp >= 0xC0 && cp <= 0xFF) {
        static constexpr std::string_view kLatin1 =
            "aaaaaaaceeeeiiiidnooooo.ouuuuyts"   // 0xC0..0xDF
            "aaaaaaaceeeeiiiidnooooo.ouuuuyty";  // 0xE0..0xFF
        char c = kLatin1[cp - 0xC0];
        return c == '.' ? cp : static_cast<char32_t>(c);
    }
    // Latin Extended-A: strip the diacritic by mapping onto the base letter.
    if (cp >= 0x100 && cp <= 0x17F) {
        static constexpr std::string_view kBase =
            "aaaaaa" "cccccccc" "dddd" "eeeeeeeeee" "gggggggg" "hhhh"  // 0x100..0x127
            "iiiiiiiiii" "iijj" "kkk" "llllllllll" "nnnnnnnnn"         // 0x128..0x14B
            "oooooooo" "rrrrrr" "ssssssss" "tttttt" "uuuuuuuuuuuu"     // 0x14C..0x173
            "ww" "yyy" "zzzzzz" "s";                                   // 0x174..0x17F
        return static_cast<char32_t>(kBase[cp - 0x100]);
    }
    // Cyrillic: fold case (U+0410..U+042F -> U+0430..U+044F, Ё -> е).
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp == 0x401 || cp == 0x451) return 0x435;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Decodes one UTF-8 sequence; malformed bytes come back as U+FFFD.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<std::uint8_t>(s[k]); };
    std::uint8_t b0 = byte(i);
    if (b0 < 0x80) { i += 1; return b0; }
    auto cont = [&](std::size_t k) { return k < s.size() && (byte(k) & 0xC0) == 0x80; };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
        char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(i + 1) & 0x3Fu);
        i += 2;
        return cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
        char32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(i + 1) & 0x3Fu) << 6) | (byte(i + 2) & 0x3Fu);
        i += 3;
        return cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        char32_t cp = ((b0 & 0x07u) << 18) | ((byte(i + 1) & 0x3Fu) << 12) |
                      ((byte(i + 2) & 0x3Fu) << 6) | (byte(i + 3) & 0x3Fu);
        i += 4;
        return cp;
    }
    i += 1;
    return 0xFFFD;
}

}  // namespace

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ws(s[b])) ++b;
    while (e > b && is_ws(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == delim) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> split_ws(std::string_view s, std::size_t max_fields) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i >= s.size()) break;
        if (max_fields > 0 && out.size() + 1 == max_fields) {
            out.emplace_back(trim(s.substr(i)));
            return out;
        }
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string fold_key(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < s.size()) {
        char32_t cp = fold_codepoint(next_codepoint(s, i));
        if (cp == ' ' || cp == '\t' || cp == '\r' || cp == '\n') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        append_utf8(out, cp);
    }
    return out;
}

bool folded_contains(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return false;
    return fold_key(haystack).find(fold_key(needle)) != std::string::npos;
}

}  // namespace eventforge::text
