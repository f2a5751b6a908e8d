#include "tweetspam/common/resource_file.hpp"

#include "tweetspam/common/error.hpp"
#include "tweetspam/common/files.hpp"

namespace tweetspam {

std::vector<std::string> resource_lines(std::string_view contents) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    lines.emplace_back(line);
  }
  return lines;
}

std::vector<std::pair<std::string, std::string>> parse_tsv(std::string_view contents,
                                                           const std::string& source) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::size_t n = 0;
  for (const auto& line : resource_lines(contents)) {
    ++n;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ResourceError(source + ": entry " + std::to_string(n) + " is not key<TAB>value: " +
                          line);
    }
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

std::string read_resource(const std::filesystem::path& path) {
  try {
    return read_file(path);
  } catch (const Error&) {
    throw ResourceError("missing resource file " + path.string());
  }
}

}  // namespace tweetspam
