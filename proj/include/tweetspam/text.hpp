#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tweetspam {

struct NormalizedText {
  std::string text;
  // Code points in the raw input.
  std::size_t original_length = 0;
};

enum class TokenKind : std::uint8_t { word, url, hashtag, mention, number, punctuation, emoticon, other };

std::string_view to_string(TokenKind kind);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::word;
  // Byte offsets [begin, end) into NormalizedText::text.
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Coarse Twitter tagset, in feature-block order.
enum class PosTag : std::uint8_t {
  noun,          // N
  verb,          // V
  adjective,     // A
  adverb,        // R
  determiner,    // D
  preposition,   // P (also conjunctions)
  interjection,  // !
  hashtag,       // #
  mention,       // @
  url,           // U
  emoticon,      // E
  numeral,       // $
  punctuation,   // ,
};

inline constexpr std::size_t kPosTagCount = 13;

std::string_view symbol(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view symbol);

struct TagSeq {
  std::vector<PosTag> tags;

  std::size_t size() const noexcept { return tags.size(); }
  bool operator==(const TagSeq&) const = default;
};

// Tables backing preprocessing, tokenization and tagging. Loaded from
// contractions.tsv, pos_lexicon.tsv and emoticons.txt.
class TextResources {
 public:
  TextResources() = default;

  static TextResources load(const std::filesystem::path& dir);
  static TextResources parse(std::string_view contractions_tsv, std::string_view pos_lexicon_tsv,
                             std::string_view emoticons_txt);

  // Keys are lowercase with ASCII apostrophes.
  const std::unordered_map<std::string, std::string>& contractions() const { return contractions_; }
  const std::unordered_map<std::string, PosTag>& pos_lexicon() const { return pos_lexicon_; }
  const std::unordered_set<std::string>& emoticons() const { return emoticons_; }
  std::size_t max_emoticon_bytes() const { return max_emoticon_bytes_; }

  // Deterministic text rendering of every table, used for fingerprinting.
  std::string canonical_form() const;

 private:
  std::unordered_map<std::string, std::string> contractions_;
  std::unordered_map<std::string, PosTag> pos_lexicon_;
  std::unordered_set<std::string> emoticons_;
  std::size_t max_emoticon_bytes_ = 0;
};

// Decodes named (&amp;) and numeric (&#39; &#x27;) entities repeatedly until
// nothing decodable remains. Entities must end with ';'; unknown ones are
// left verbatim.
std::string decode_html_entities(std::string_view text);

// Entity decoding, contraction expansion, whitespace collapsing and trimming.
// Idempotent.
NormalizedText preprocess(std::string_view raw, const TextResources& resources);

std::vector<Token> tokenize(const NormalizedText& normalized, const TextResources& resources);

// Drops url, hashtag and mention tokens.
std::vector<Token> strip_for_sentiment(std::span<const Token> tokens);

TagSeq pos_tag(std::span<const Token> tokens, const TextResources& resources);

}  // namespace tweetspam
