#pragma once

#include <string>

#include <json.hpp>

namespace tweetspam {

using Json = nlohmann::json;

// Canonical rendering: keys sorted, integers verbatim, floating point values
// with 17 significant digits. Two equal documents always render to the same
// bytes, which is what model checksums and reproducible reports rely on.
// indent < 0 renders compactly.
std::string canonical_dump(const Json& value, int indent = -1);

}  // namespace tweetspam
