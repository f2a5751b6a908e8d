#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace tweetspam::utf8 {

// Number of code points; invalid bytes count as one each.
std::size_t length(std::string_view text);

// Decodes the code point starting at text[pos] and stores its byte length.
// Invalid sequences decode as U+FFFD with length 1.
char32_t decode(std::string_view text, std::size_t pos, std::size_t& length);

void append(std::string& out, char32_t cp);

// ASCII-only lowercasing; other bytes pass through.
std::string ascii_lower(std::string_view text);

}  // namespace tweetspam::utf8
