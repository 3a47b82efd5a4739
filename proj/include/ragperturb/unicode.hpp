#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rp::uni {

// Canonical NFC normalization (ICU). Invalid UTF-8 is a data error.
std::string nfc(std::string_view utf8);

// Strict UTF-8 decode to Unicode scalar values; throws on malformed input.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view scalars);
void append_utf8(std::string& out, char32_t c);

bool is_alnum(char32_t c);
bool is_space(char32_t c);
char32_t to_lower(char32_t c);

// Collapse whitespace runs to single spaces and trim both ends.
std::string normalize_ws(std::string_view utf8);

}  // namespace rp::uni
