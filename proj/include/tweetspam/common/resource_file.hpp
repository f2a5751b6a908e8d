#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tweetspam {

// Splits resource text into non-empty, non-comment lines ('#' in column 0).
// Trailing '\r' is removed.
std::vector<std::string> resource_lines(std::string_view contents);

// Lines split on the first tab into (key, value). Throws ResourceError naming
// `source` and the line when a line has no tab.
std::vector<std::pair<std::string, std::string>> parse_tsv(std::string_view contents,
                                                           const std::string& source);

std::string read_resource(const std::filesystem::path& path);

}  // namespace tweetspam
