#include "tweetspam/text.hpp"

#include <algorithm>
#include <map>

#include "tweetspam/common/error.hpp"
#include "tweetspam/common/resource_file.hpp"
#include "tweetspam/common/utf8.hpp"

namespace tweetspam {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::url: return "url";
    case TokenKind::hashtag: return "hashtag";
    case TokenKind::mention: return "mention";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::emoticon: return "emoticon";
    case TokenKind::other: return "other";
  }
  return "other";
}

namespace {
constexpr std::array<std::string_view, kPosTagCount> kTagSymbols = {
    "N", "V", "A", "R", "D", "P", "!", "#", "@", "U", "E", "$", ","};
}

std::string_view symbol(PosTag tag) { return kTagSymbols[static_cast<std::size_t>(tag)]; }

std::optional<PosTag> parse_pos_tag(std::string_view text) {
  for (std::size_t i = 0; i < kPosTagCount; ++i) {
    if (kTagSymbols[i] == text) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Resources

namespace {

std::string normalize_apostrophes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text.substr(i, 3) == "\xE2\x80\x99") {
      out.push_back('\'');
      i += 3;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

}  // namespace

TextResources TextResources::parse(std::string_view contractions_tsv,
                                   std::string_view pos_lexicon_tsv,
                                   std::string_view emoticons_txt) {
  TextResources r;
  for (auto& [pattern, expansion] : parse_tsv(contractions_tsv, "contractions.tsv")) {
    if (expansion.find('\'') != std::string::npos) {
      throw ResourceError("contractions.tsv: expansion of '" + pattern +
                          "' must not contain an apostrophe");
    }
    r.contractions_[utf8::ascii_lower(normalize_apostrophes(pattern))] = expansion;
  }
  for (auto& [token, tag_symbol] : parse_tsv(pos_lexicon_tsv, "pos_lexicon.tsv")) {
    auto tag = parse_pos_tag(tag_symbol);
    if (!tag) throw ResourceError("pos_lexicon.tsv: unknown tag '" + tag_symbol + "'");
    r.pos_lexicon_[utf8::ascii_lower(token)] = *tag;
  }
  for (auto& line : resource_lines(emoticons_txt)) {
    r.max_emoticon_bytes_ = std::max(r.max_emoticon_bytes_, line.size());
    r.emoticons_.insert(std::move(line));
  }
  return r;
}

TextResources TextResources::load(const std::filesystem::path& dir) {
  return parse(read_resource(dir / "contractions.tsv"), read_resource(dir / "pos_lexicon.tsv"),
               read_resource(dir / "emoticons.txt"));
}

std::string TextResources::canonical_form() const {
  std::string out = "contractions\n";
  for (const auto& [k, v] : std::map(contractions_.begin(), contractions_.end())) {
    out += k + '\t' + v + '\n';
  }
  out += "pos_lexicon\n";
  for (const auto& [k, v] : std::map(pos_lexicon_.begin(), pos_lexicon_.end())) {
    out += k + '\t' + std::string(symbol(v)) + '\n';
  }
  out += "emoticons\n";
  std::vector<std::string> sorted(emoticons_.begin(), emoticons_.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& e : sorted) out += e + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Entity decoding

namespace {

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", U'&'},        {"lt", U'<'},          {"gt", U'>'},         {"quot", U'"'},
      {"apos", U'\''},      {"nbsp", 0x00A0},      {"iexcl", 0x00A1},    {"cent", 0x00A2},
      {"pound", 0x00A3},    {"curren", 0x00A4},    {"yen", 0x00A5},      {"brvbar", 0x00A6},
      {"sect", 0x00A7},     {"uml", 0x00A8},       {"copy", 0x00A9},     {"ordf", 0x00AA},
      {"laquo", 0x00AB},    {"not", 0x00AC},       {"shy", 0x00AD},      {"reg", 0x00AE},
      {"macr", 0x00AF},     {"deg", 0x00B0},       {"plusmn", 0x00B1},   {"sup2", 0x00B2},
      {"sup3", 0x00B3},     {"acute", 0x00B4},     {"micro", 0x00B5},    {"para", 0x00B6},
      {"middot", 0x00B7},   {"cedil", 0x00B8},     {"sup1", 0x00B9},     {"ordm", 0x00BA},
      {"raquo", 0x00BB},    {"frac14", 0x00BC},    {"frac12", 0x00BD},   {"frac34", 0x00BE},
      {"iquest", 0x00BF},   {"Agrave", 0x00C0},    {"Aacute", 0x00C1},   {"Acirc", 0x00C2},
      {"Atilde", 0x00C3},   {"Auml", 0x00C4},      {"Aring", 0x00C5},    {"AElig", 0x00C6},
      {"Ccedil", 0x00C7},   {"Egrave", 0x00C8},    {"Eacute", 0x00C9},   {"Ecirc", 0x00CA},
      {"Euml", 0x00CB},     {"Igrave", 0x00CC},    {"Iacute", 0x00CD},   {"Icirc", 0x00CE},
      {"Iuml", 0x00CF},     {"ETH", 0x00D0},       {"Ntilde", 0x00D1},   {"Ograve", 0x00D2},
      {"Oacute", 0x00D3},   {"Ocirc", 0x00D4},     {"Otilde", 0x00D5},   {"Ouml", 0x00D6},
      {"times", 0x00D7},    {"Oslash", 0x00D8},    {"Ugrave", 0x00D9},   {"Uacute", 0x00DA},
      {"Ucirc", 0x00DB},    {"Uuml", 0x00DC},      {"Yacute", 0x00DD},   {"THORN", 0x00DE},
      {"szlig", 0x00DF},    {"agrave", 0x00E0},    {"aacute", 0x00E1},   {"acirc", 0x00E2},
      {"atilde", 0x00E3},   {"auml", 0x00E4},      {"aring", 0x00E5},    {"aelig", 0x00E6},
      {"ccedil", 0x00E7},   {"egrave", 0x00E8},    {"eacute", 0x00E9},   {"ecirc", 0x00EA},
      {"euml", 0x00EB},     {"igrave", 0x00EC},    {"iacute", 0x00ED},   {"icirc", 0x00EE},
      {"iuml", 0x00EF},     {"eth", 0x00F0},       {"ntilde", 0x00F1},   {"ograve", 0x00F2},
      {"oacute", 0x00F3},   {"ocirc", 0x00F4},     {"otilde", 0x00F5},   {"ouml", 0x00F6},
      {"divide", 0x00F7},   {"oslash", 0x00F8},    {"ugrave", 0x00F9},   {"uacute", 0x00FA},
      {"ucirc", 0x00FB},    {"uuml", 0x00FC},      {"yacute", 0x00FD},   {"thorn", 0x00FE},
      {"yuml", 0x00FF},     {"OElig", 0x0152},     {"oelig", 0x0153},    {"Scaron", 0x0160},
      {"scaron", 0x0161},   {"Yuml", 0x0178},      {"fnof", 0x0192},     {"circ", 0x02C6},
      {"tilde", 0x02DC},    {"ensp", 0x2002},      {"emsp", 0x2003},     {"thinsp", 0x2009},
      {"zwnj", 0x200C},     {"zwj", 0x200D},       {"lrm", 0x200E},      {"rlm", 0x200F},
      {"ndash", 0x2013},    {"mdash", 0x2014},     {"lsquo", 0x2018},    {"rsquo", 0x2019},
      {"sbquo", 0x201A},    {"ldquo", 0x201C},     {"rdquo", 0x201D},    {"bdquo", 0x201E},
      {"dagger", 0x2020},   {"Dagger", 0x2021},    {"bull", 0x2022},     {"hellip", 0x2026},
      {"permil", 0x2030},   {"prime", 0x2032},     {"Prime", 0x2033},    {"lsaquo", 0x2039},
      {"rsaquo", 0x203A},   {"euro", 0x20AC},      {"trade", 0x2122},    {"larr", 0x2190},
      {"uarr", 0x2191},     {"rarr", 0x2192},      {"darr", 0x2193},     {"harr", 0x2194},
      {"spades", 0x2660},   {"clubs", 0x2663},     {"hearts", 0x2665},   {"diams", 0x2666},
  };
  return table;
}

bool is_ascii_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }
bool is_hex_digit(char c) {
  return is_ascii_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

// Tries to decode an entity starting at text[pos] == '&'. On success stores
// the code point and the entity's byte length.
bool decode_entity_at(std::string_view text, std::size_t pos, char32_t& cp, std::size_t& length) {
  std::size_t i = pos + 1;
  if (i < text.size() && text[i] == '#') {
    ++i;
    bool hex = i < text.size() && (text[i] == 'x' || text[i] == 'X');
    if (hex) ++i;
    std::size_t start = i;
    std::uint64_t value = 0;
    while (i < text.size() && (hex ? is_hex_digit(text[i]) : is_ascii_digit(text[i]))) {
      if (i - start >= 8) return false;
      char c = text[i];
      unsigned digit = is_ascii_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10;
      value = value * (hex ? 16 : 10) + digit;
      ++i;
    }
    if (i == start || i >= text.size() || text[i] != ';') return false;
    if (value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return false;
    cp = static_cast<char32_t>(value);
    length = i + 1 - pos;
    return true;
  }
  std::size_t start = i;
  while (i < text.size() && is_ascii_alnum(text[i]) && i - start < 32) ++i;
  if (i == start || i >= text.size() || text[i] != ';') return false;
  auto it = named_entities().find(text.substr(start, i - start));
  if (it == named_entities().end()) return false;
  cp = it->second;
  length = i + 1 - pos;
  return true;
}

bool decode_once(std::string_view text, std::string& out) {
  out.clear();
  out.reserve(text.size());
  bool changed = false;
  for (std::size_t i = 0; i < text.size();) {
    char32_t cp;
    std::size_t length;
    if (text[i] == '&' && decode_entity_at(text, i, cp, length)) {
      utf8::append(out, cp);
      i += length;
      changed = true;
    } else {
      out.push_back(text[i++]);
    }
  }
  return changed;
}

// ---------------------------------------------------------------------------
// Contractions

bool is_apostrophe_at(std::string_view text, std::size_t i, std::size_t& length) {
  if (text[i] == '\'') {
    length = 1;
    return true;
  }
  if (text.substr(i, 3) == "\xE2\x80\x99") {
    length = 3;
    return true;
  }
  return false;
}

std::string adapt_case(std::string_view original_core, const std::string& expansion) {
  std::size_t letters = 0, upper = 0;
  for (char c : original_core) {
    if (is_ascii_alpha(c)) {
      ++letters;
      if (c >= 'A' && c <= 'Z') ++upper;
    }
  }
  std::string out = expansion;
  if (letters >= 2 && upper == letters) {
    for (char& c : out) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
  } else if (!original_core.empty() && original_core.front() >= 'A' &&
             original_core.front() <= 'Z' && !out.empty() && out.front() >= 'a' &&
             out.front() <= 'z') {
    out.front() = static_cast<char>(out.front() - 'a' + 'A');
  }
  return out;
}

std::string expand_contractions(std::string_view text, const TextResources& resources) {
  const auto& table = resources.contractions();
  std::string out;
  out.reserve(text.size() + 16);
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len;
    if (!is_ascii_alpha(text[i]) && !is_apostrophe_at(text, i, len)) {
      out.push_back(text[i++]);
      continue;
    }
    // Maximal run of ASCII letters and apostrophes.
    std::size_t start = i;
    bool has_apostrophe = false;
    while (i < text.size()) {
      if (is_ascii_alpha(text[i])) {
        ++i;
      } else if (is_apostrophe_at(text, i, len)) {
        has_apostrophe = true;
        i += len;
      } else {
        break;
      }
    }
    std::string_view run = text.substr(start, i - start);
    if (!has_apostrophe || table.empty()) {
      out.append(run);
      continue;
    }
    std::size_t core_begin = 0, core_end = run.size();
    while (core_begin < core_end && !is_ascii_alpha(run[core_begin])) ++core_begin;
    while (core_end > core_begin && !is_ascii_alpha(run[core_end - 1])) --core_end;
    std::string_view core = run.substr(core_begin, core_end - core_begin);
    auto it = table.find(utf8::ascii_lower(normalize_apostrophes(core)));
    if (it == table.end()) {
      out.append(run);
      continue;
    }
    out.append(run.substr(0, core_begin));
    out += adapt_case(core, it->second);
    out.append(run.substr(core_end));
  }
  return out;
}

// ASCII whitespace plus U+00A0.
std::size_t whitespace_length(std::string_view text, std::size_t i) {
  char c = text[i];
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return 1;
  if (text.substr(i, 2) == "\xC2\xA0") return 2;
  return 0;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t ws = whitespace_length(text, i);
    if (ws) {
      pending_space = !out.empty();
      i += ws;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace

std::string decode_html_entities(std::string_view text) {
  std::string current(text), next;
  while (decode_once(current, next)) current.swap(next);
  return current;
}

NormalizedText preprocess(std::string_view raw, const TextResources& resources) {
  NormalizedText result;
  result.original_length = utf8::length(raw);
  std::string decoded = decode_html_entities(raw);
  result.text = collapse_whitespace(expand_contractions(decoded, resources));
  return result;
}

// ---------------------------------------------------------------------------
// Tokenization

namespace {

bool is_symbol_codepoint(char32_t cp) {
  return (cp >= 0x00A0 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
         (cp >= 0x2000 && cp <= 0x2BFF) || (cp >= 0x3000 && cp <= 0x303F) ||
         (cp >= 0xFE00 && cp <= 0xFE0F) || (cp >= 0x1F000 && cp <= 0x1FAFF) ||
         (cp >= 0xE0000 && cp <= 0xE007F) || cp == 0xFFFD;
}

// Letters, digits, underscore and non-symbol non-ASCII code points.
std::size_t word_char_length(std::string_view text, std::size_t i) {
  unsigned char c = static_cast<unsigned char>(text[i]);
  if (c < 0x80) return (is_ascii_alnum(text[i]) || text[i] == '_') ? 1 : 0;
  std::size_t len;
  char32_t cp = utf8::decode(text, i, len);
  return is_symbol_codepoint(cp) ? 0 : len;
}

std::size_t symbol_char_length(std::string_view text, std::size_t i) {
  if (static_cast<unsigned char>(text[i]) < 0x80) return 0;
  std::size_t len;
  char32_t cp = utf8::decode(text, i, len);
  // Internal apostrophes are handled by the word scanner.
  return is_symbol_codepoint(cp) ? len : 0;
}

bool starts_with_ci(std::string_view text, std::size_t i, std::string_view prefix) {
  if (text.size() - i < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char c = text[i + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[k]) return false;
  }
  return true;
}

bool is_space_at(std::string_view text, std::size_t i) { return whitespace_length(text, i) != 0; }

std::size_t match_url(std::string_view text, std::size_t i) {
  std::size_t prefix = 0;
  for (std::string_view p : {"http://", "https://", "www."}) {
    if (starts_with_ci(text, i, p)) {
      prefix = p.size();
      break;
    }
  }
  if (!prefix) return 0;
  std::size_t end = i + prefix;
  while (end < text.size() && !is_space_at(text, end)) ++end;
  static constexpr std::string_view kTrailing = ".,!?;:'\")]}";
  while (end > i + prefix && kTrailing.find(text[end - 1]) != std::string_view::npos) --end;
  return end > i + prefix ? end - i : 0;
}

bool alnum_at(std::string_view text, std::size_t i) {
  return i < text.size() && is_ascii_alnum(text[i]);
}

std::size_t match_emoticon(std::string_view text, std::size_t i, const TextResources& r) {
  if (r.emoticons().empty()) return 0;
  if (i > 0 && is_ascii_alnum(text[i - 1])) return 0;
  std::size_t longest = std::min(r.max_emoticon_bytes(), text.size() - i);
  for (std::size_t len = longest; len > 0; --len) {
    if (r.emoticons().count(std::string(text.substr(i, len))) && !alnum_at(text, i + len)) {
      return len;
    }
  }
  return 0;
}

bool is_mention_char(char c) { return is_ascii_alnum(c) || c == '_'; }

std::size_t match_mention(std::string_view text, std::size_t i) {
  if (text[i] != '@') return 0;
  std::size_t end = i + 1;
  while (end < text.size() && is_mention_char(text[end])) ++end;
  std::size_t name = end - i - 1;
  return (name >= 1 && name <= 15) ? end - i : 0;
}

std::size_t match_hashtag(std::string_view text, std::size_t i) {
  if (text[i] != '#' || i + 1 >= text.size()) return 0;
  std::size_t end = i + 1;
  while (end < text.size()) {
    std::size_t len = word_char_length(text, end);
    if (!len) break;
    end += len;
  }
  return end > i + 1 ? end - i : 0;
}

// Word or number run. Apostrophes between word characters stay inside the
// word; '.' or ',' between digits stay inside a number.
std::size_t match_word(std::string_view text, std::size_t i, TokenKind& kind) {
  if (!word_char_length(text, i)) return 0;
  std::size_t end = i;
  bool all_digits = true;
  while (end < text.size()) {
    std::size_t len = word_char_length(text, end);
    if (len) {
      if (len > 1 || !is_ascii_digit(text[end])) all_digits = false;
      end += len;
      continue;
    }
    std::size_t apostrophe;
    if (is_apostrophe_at(text, end, apostrophe) && end + apostrophe < text.size() &&
        word_char_length(text, end + apostrophe) && !is_ascii_digit(text[end - 1])) {
      all_digits = false;
      end += apostrophe;
      continue;
    }
    if ((text[end] == '.' || text[end] == ',') && all_digits && end + 1 < text.size() &&
        is_ascii_digit(text[end + 1])) {
      end += 1;
      continue;
    }
    break;
  }
  kind = all_digits ? TokenKind::number : TokenKind::word;
  return end - i;
}

}  // namespace

std::vector<Token> tokenize(const NormalizedText& normalized, const TextResources& resources) {
  std::string_view text = normalized.text;
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto emit = [&](std::size_t length, TokenKind kind) {
    tokens.push_back(Token{std::string(text.substr(i, length)), kind, i, i + length});
    i += length;
  };
  while (i < text.size()) {
    if (std::size_t ws = whitespace_length(text, i)) {
      i += ws;
      continue;
    }
    if (std::size_t n = match_url(text, i)) {
      emit(n, TokenKind::url);
    } else if (std::size_t n = match_emoticon(text, i, resources)) {
      emit(n, TokenKind::emoticon);
    } else if (std::size_t n = match_hashtag(text, i)) {
      emit(n, TokenKind::hashtag);
    } else if (std::size_t n = match_mention(text, i)) {
      emit(n, TokenKind::mention);
    } else if (TokenKind kind; std::size_t n = match_word(text, i, kind)) {
      emit(n, kind);
    } else if (std::size_t n = symbol_char_length(text, i)) {
      std::size_t end = i + n;
      while (end < text.size()) {
        std::size_t more = symbol_char_length(text, end);
        if (!more) break;
        end += more;
      }
      emit(end - i, TokenKind::other);
    } else {
      emit(1, TokenKind::punctuation);
    }
  }
  return tokens;
}

std::vector<Token> strip_for_sentiment(std::span<const Token> tokens) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::url && t.kind != TokenKind::hashtag && t.kind != TokenKind::mention) {
      kept.push_back(t);
    }
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Tagging

namespace {

bool ends_with(std::string_view word, std::string_view suffix) {
  return word.size() >= suffix.size() && word.substr(word.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Suffix rules need a stem of at least two characters.
std::optional<PosTag> suffix_tag(std::string_view lower) {
  auto rule = [&](std::string_view suffix) {
    return lower.size() >= suffix.size() + 2 && ends_with(lower, suffix);
  };
  if (rule("ly")) return PosTag::adverb;
  if (rule("ing") || rule("ed")) return PosTag::verb;
  if (rule("s")) {
    char before = lower[lower.size() - 2];
    if (is_ascii_alpha(before) && !is_vowel(before)) return PosTag::noun;
  }
  return std::nullopt;
}

PosTag tag_token(const Token& token, const TextResources& resources) {
  switch (token.kind) {
    case TokenKind::url: return PosTag::url;
    case TokenKind::hashtag: return PosTag::hashtag;
    case TokenKind::mention: return PosTag::mention;
    case TokenKind::emoticon: return PosTag::emoticon;
    case TokenKind::number: return PosTag::numeral;
    case TokenKind::punctuation: return PosTag::punctuation;
    case TokenKind::word:
    case TokenKind::other: break;
  }
  std::string lower = utf8::ascii_lower(token.surface);
  const auto& lexicon = resources.pos_lexicon();
  if (auto it = lexicon.find(lower); it != lexicon.end()) return it->second;
  if (auto tag = suffix_tag(lower)) return *tag;
  return PosTag::noun;
}

}  // namespace

TagSeq pos_tag(std::span<const Token> tokens, const TextResources& resources) {
  TagSeq seq;
  seq.tags.reserve(tokens.size());
  for (const auto& t : tokens) seq.tags.push_back(tag_token(t, resources));
  return seq;
}

}  // namespace tweetspam
