#include "tweetspam/common/canonical_json.hpp"

#include <cmath>
#include <cstdio>

#include "tweetspam/common/error.hpp"

namespace tweetspam {
namespace {

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out.push_back('\n');
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void render(const Json& value, std::string& out, int indent, int depth) {
  switch (value.type()) {
    case Json::value_t::null:
      out += "null";
      return;
    case Json::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(value.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(value.get<std::uint64_t>());
      return;
    case Json::value_t::number_float: {
      double x = value.get<double>();
      if (!std::isfinite(x)) throw Error("cannot serialize non-finite number");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    case Json::value_t::string:
      out += Json(value.get_ref<const std::string&>())
                 .dump(-1, ' ', false, Json::error_handler_t::replace);
      return;
    case Json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : value) {
        if (!first) out.push_back(',');
        first = false;
        newline(out, indent, depth + 1);
        render(item, out, indent, depth + 1);
      }
      if (!value.empty()) newline(out, indent, depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::object: {
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      out.push_back('{');
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out.push_back(',');
        first = false;
        newline(out, indent, depth + 1);
        out += Json(key).dump(-1, ' ', false, Json::error_handler_t::replace);
        out.push_back(':');
        if (indent >= 0) out.push_back(' ');
        render(item, out, indent, depth + 1);
      }
      if (!value.empty()) newline(out, indent, depth);
      out.push_back('}');
      return;
    }
    default:
      throw Error("unsupported JSON value in canonical rendering");
  }
}

}  // namespace

std::string canonical_dump(const Json& value, int indent) {
  std::string out;
  render(value, out, indent, 0);
  return out;
}

}  // namespace tweetspam
