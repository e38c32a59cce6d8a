#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ordstruct::unicode {

/// Decodes UTF-8 into Unicode scalar values. Returns nullopt on malformed
/// input (overlong forms, surrogates, truncated sequences, values > U+10FFFF).
std::optional<std::u32string> decode(std::string_view utf8);

std::string encode(std::u32string_view text);
std::string encode(char32_t c);

/// Simple (context-free) Unicode default lowercasing. Language-specific
/// rules such as Turkish dotless i are not applied.
std::u32string lowercase(std::u32string_view text);

/// True for C0/C1 control characters and DEL.
constexpr bool is_control(char32_t c) {
  return c < 0x20 || (c >= 0x7F && c <= 0x9F);
}

constexpr bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f';
}

}  // namespace ordstruct::unicode
