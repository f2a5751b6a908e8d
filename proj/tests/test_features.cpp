#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tweetspam/common/files.hpp"
#include "tweetspam/features/blocks.hpp"
#include "tweetspam/features/ngram.hpp"
#include "tweetspam/features/pipeline.hpp"
#include "tweetspam/features/selection.hpp"

using namespace tweetspam;
using tweetspam::testing::make_record;
using tweetspam::testing::shipped_resources;

namespace {

Token word(std::string s) { return Token{std::move(s), TokenKind::word, 0, 0}; }

FeatureVector dense_row(std::vector<double> values) { return FeatureVector{std::move(values), {}, 0}; }

FeatureVector sparse_row(std::vector<SparseEntry> entries, std::size_t width) {
  return FeatureVector{{}, std::move(entries), width};
}

TweetRecord metadata(std::int64_t fi, std::int64_t fe, std::int64_t statuses, int age_hours) {
  auto r = make_record("1", "hello");
  r.user.followings_count = fi;
  r.user.followers_count = fe;
  r.user.statuses_count = statuses;
  r.user.account_created_at = r.created_at - std::chrono::hours(age_hours);
  return r;
}

}  // namespace

TEST_CASE("user feature arithmetic") {
  const auto block = user_features(metadata(300, 100, 240, 240));
  CHECK(block[UserFeatureBlock::account_age_hours] == 240.0);
  CHECK(block[UserFeatureBlock::followers_per_following] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(block[UserFeatureBlock::reputation] == 0.25);
  CHECK(block[UserFeatureBlock::following_rate] == 1.25);
  CHECK(block[UserFeatureBlock::tweets_per_day] == 24.0);
  CHECK(block[UserFeatureBlock::tweets_per_week] == 168.0);
}

TEST_CASE("user feature zero guards") {
  const auto block = user_features(metadata(0, 0, 10, 0));
  CHECK(block[UserFeatureBlock::followers_per_following] == 0.0);
  CHECK(block[UserFeatureBlock::reputation] == 0.0);
  CHECK(block[UserFeatureBlock::following_rate] == 0.0);
  CHECK(block[UserFeatureBlock::tweets_per_day] == 0.0);
}

TEST_CASE("tweet before account creation is an error") {
  CHECK_THROWS_AS(user_features(metadata(1, 1, 1, -1)), UserFeatureError);
}

TEST_CASE("user features agree with the reference script on 100 cases") {
  const auto cases = Json::parse(read_file(testing::data_path("user_features.json")));
  REQUIRE(cases.size() == 100);
  for (const auto& c : cases) {
    const auto record = record_from_json(c.at("record"));
    const auto block = user_features(record);
    const auto expected = c.at("expected").get<std::vector<double>>();
    CAPTURE(record.tweet_id);
    for (std::size_t i = 0; i < kUserFeatureCount; ++i) {
      CHECK(std::abs(block.values[i] - expected[i]) <= 1e-9 * std::max(1.0, std::abs(expected[i])));
    }
    CHECK(block[UserFeatureBlock::reputation] >= 0.0);
    CHECK(block[UserFeatureBlock::reputation] <= 1.0);
  }
}

TEST_CASE("content attributes of a spammy tweet") {
  const auto& res = shipped_resources();
  const SpamLexicon lexicon(std::vector<std::string>{"free cash"});
  const auto normalized = preprocess("WIN FREE cash now!!", res.text);
  const auto tokens = tokenize(normalized, res.text);
  const auto block = content_features(normalized, tokens, pos_tag(tokens, res.text), lexicon);
  CHECK(block[ContentFeatureBlock::words] == 4);
  CHECK(block[ContentFeatureBlock::capitalized_words] == 2);
  CHECK(block[ContentFeatureBlock::exclamation_marks] == 2);
  CHECK(block[ContentFeatureBlock::spam_words] == 1);
  CHECK(block[ContentFeatureBlock::spam_words_per_word] == 0.25);
  CHECK(block[ContentFeatureBlock::characters] == 19);
  CHECK(block[ContentFeatureBlock::white_spaces] == 3);
}

TEST_CASE("empty tweet has an all-zero content block") {
  const NormalizedText empty;
  const auto block = content_features(empty, {}, TagSeq{}, shipped_resources().spam_words);
  for (double v : block.values) CHECK(v == 0.0);
}

TEST_CASE("tag unigrams and skip-bigrams") {
  const std::vector<Token> tokens = {word("a"), word("b"), word("c")};
  const TagSeq tags{{PosTag::noun, PosTag::verb, PosTag::noun}};
  const auto block = content_features(NormalizedText{"a b c", 5}, tokens, tags, SpamLexicon{});
  CHECK(block.tag_count(PosTag::noun) == 2);
  CHECK(block.tag_count(PosTag::verb) == 1);
  CHECK(block.pair_count(PosTag::noun, PosTag::verb) == 1);
  CHECK(block.pair_count(PosTag::verb, PosTag::noun) == 1);
  CHECK(block.pair_count(PosTag::noun, PosTag::noun) == 1);
  double pairs = 0;
  for (std::size_t i = kContentAttributeCount + kPosTagCount; i < kContentFeatureCount; ++i) pairs += block.values[i];
  CHECK(pairs == 3);
}

TEST_CASE("skip-bigrams reach three positions") {
  std::vector<Token> tokens(5, word("x"));
  const TagSeq tags{std::vector<PosTag>(5, PosTag::noun)};
  const auto block = content_features(NormalizedText{"x x x x x", 9}, tokens, tags, SpamLexicon{});
  // distance 1: 4 pairs, 2: 3 pairs, 3: 2 pairs
  CHECK(block.pair_count(PosTag::noun, PosTag::noun) == 9);
}

TEST_CASE("misaligned tags are rejected only when tags are used") {
  const std::vector<Token> tokens = {word("a"), word("b")};
  const TagSeq tags{{PosTag::noun}};
  CHECK_THROWS_AS(content_features(NormalizedText{"a b", 3}, tokens, tags, SpamLexicon{}), FeatureError);
  CHECK_NOTHROW(content_features(NormalizedText{"a b", 3}, tokens, tags, SpamLexicon{}, {true, false}));
}

TEST_CASE("spam phrases match contiguous words case-insensitively") {
  const SpamLexicon lexicon(std::vector<std::string>{"Click  Here", "free", "act now"});
  CHECK(lexicon.count_matches(std::vector<std::string>{"click", "here", "for", "free", "stuff"}) == 2);
  CHECK(lexicon.count_matches(std::vector<std::string>{"click", "now", "here"}) == 0);
  CHECK(lexicon.phrases() == std::vector<std::string>{"act now", "click here", "free"});
}

TEST_CASE("sentiment tuple for one positive and one negative word") {
  SentimentLexicons lexicons;
  lexicons.lexicons[0] = SentimentLexicon("afinn", {{"good", 3.0}, {"bad", -3.0}});
  const auto block = sentiment_features(std::vector<Token>{word("good"), word("bad")}, lexicons);
  CHECK(std::vector<double>(block.values.begin(), block.values.begin() + 5) ==
        std::vector<double>{1, 1, 0, 3, -3});
}

TEST_CASE("no lexicon match gives zeros") {
  const auto block = sentiment_features(std::vector<Token>{word("zzqx"), word("qqq")},
                                        shipped_resources().sentiment);
  for (double v : block.values) CHECK(v == 0.0);
}

TEST_CASE("sentiment agrees with the lookup script on 50 tweets") {
  const auto fixture = Json::parse(read_file(testing::data_path("sentiment.json")));
  SentimentLexicons lexicons;
  for (std::size_t l = 0; l < kLexiconCount; ++l) {
    const std::string name(kLexiconNames[l]);
    lexicons.lexicons[l] = SentimentLexicon(
        name, fixture.at("lexicons").at(name).get<std::unordered_map<std::string, double>>());
  }
  REQUIRE(fixture.at("cases").size() == 50);
  for (const auto& c : fixture.at("cases")) {
    std::vector<Token> tokens;
    for (const auto& t : c.at("tokens")) tokens.push_back(word(t.get<std::string>()));
    const auto block = sentiment_features(tokens, lexicons);
    const auto expected = c.at("expected").get<std::vector<double>>();
    for (std::size_t i = 0; i < kSentimentFeatureCount; ++i) CHECK(std::abs(block.values[i] - expected[i]) <= 1e-9);
    for (std::size_t l = 0; l < kLexiconCount; ++l) {
      CHECK(block.at(l, 0) + block.at(l, 1) <= static_cast<double>(tokens.size()));
    }
  }
}

TEST_CASE("vocabulary over two short documents") {
  const std::vector<std::vector<std::string>> docs = {{"a", "b"}, {"a", "c"}};
  const auto vocab = build_vocabulary(docs, NgramOrders::uni_bi, 1);
  CHECK(vocab.terms() == std::vector<std::string>{"a", "a b", "a c", "b", "c"});
  CHECK(vocab.n_docs() == 2);
  CHECK(vocab.df()[*vocab.column("a")] == 2);
  CHECK(build_vocabulary(docs, NgramOrders::uni_bi, 2).terms() == std::vector<std::string>{"a"});
}

TEST_CASE("empty vocabulary is an error") {
  const std::vector<std::vector<std::string>> docs = {{"x"}};
  CHECK_THROWS_AS(build_vocabulary(docs, NgramOrders::bi_tri, 1), FeatureError);
}

TEST_CASE("term frequency weightings") {
  const Vocabulary vocab(NgramOrders::uni_bi, {"a", "b"}, {2, 1}, 2, 1);
  const std::vector<std::string> doc = {"a", "a", "b", "zzz"};
  CHECK(ngram_vectorize(doc, vocab, Weighting::tf) == std::vector<SparseEntry>{{0, 2.0}, {1, 1.0}});
  CHECK(ngram_vectorize(doc, vocab, Weighting::binary) == std::vector<SparseEntry>{{0, 1.0}, {1, 1.0}});
  const auto tfidf = ngram_vectorize(std::vector<std::string>{"a", "a", "b"}, vocab, Weighting::tfidf);
  const double b = 1.0 + std::log(1.5);
  CHECK(tfidf[0].value == doctest::Approx(2.0 / std::sqrt(4.0 + b * b)).epsilon(1e-12));
  CHECK(tfidf[1].value == doctest::Approx(b / std::sqrt(4.0 + b * b)).epsilon(1e-12));
  CHECK(tfidf[0].value == doctest::Approx(0.8181802).epsilon(1e-6));
  CHECK(tfidf[1].value == doctest::Approx(0.5749619).epsilon(1e-6));
}

TEST_CASE("n-gram units replace urls and keep hashtags and mentions") {
  const auto& res = shipped_resources();
  const auto tokens = tokenize(preprocess("Check THIS http://x.co/1 #Deal @Bob !", res.text), res.text);
  CHECK(ngram_units(tokens) == std::vector<std::string>{"check", "this", "<url>", "#deal", "@bob"});
  const std::vector<std::string> units = {"a", "b", "c"};
  CHECK(ngram_terms(units, NgramOrders::bi_tri) == std::vector<std::string>{"a b", "b c", "a b c"});
}

TEST_CASE("min-max scaling") {
  const auto scaler = Scaler::fit(std::vector<FeatureVector>{dense_row({0, 4, 1}), dense_row({10, 4, 3})});
  CHECK(scaler.scale(0, 5) == 0.0);
  CHECK(scaler.scale(1, 123) == 0.0);
  const auto wide = Scaler::fit(std::vector<FeatureVector>{dense_row({1}), dense_row({2}), dense_row({3})});
  CHECK(wide.scale(0, 10) == 1.0);
  CHECK(wide.scale(0, -10) == -1.0);
  const FeatureVector mixed{{5}, {{0, 7.0}}, 3};
  const auto scaled = wide.apply(mixed);
  CHECK(scaled.dense[0] == 1.0);
  CHECK(scaled.sparse == mixed.sparse);
}

TEST_CASE("chi-square favours a spam-only column") {
  const std::vector<Label> labels = {Label::spam, Label::spam, Label::ham, Label::ham};
  const std::vector<FeatureVector> rows = {sparse_row({{0, 1}, {1, 1}, {2, 1}}, 3), sparse_row({{0, 1}, {2, 1}}, 3),
                                           sparse_row({{1, 1}, {2, 1}}, 3), sparse_row({{2, 1}}, 3)};
  const auto mask = chi2_select(rows, labels, 0.3);
  CHECK(mask.kept() == std::vector<std::size_t>{0});
  CHECK(mask.scores()[0] > mask.scores()[1]);
  CHECK(mask.scores()[2] == 0.0);
}

TEST_CASE("identical class totals score zero") {
  const std::vector<Label> labels = {Label::spam, Label::ham};
  const auto mask = chi2_select(std::vector<FeatureVector>{dense_row({3}), dense_row({3})}, labels, 1.0);
  CHECK(mask.scores()[0] == 0.0);
}

TEST_CASE("selection size rounds up with a guard") {
  CHECK(selection_size(0.3, 10) == 3);
  CHECK(selection_size(0.3, 11) == 4);
  CHECK(selection_size(0.01, 5) == 1);
  CHECK(selection_size(1.0, 7) == 7);
}

TEST_CASE("mask keeps dense columns dense and renumbers sparse ones") {
  const FeatureMask mask(2, 4, {1, 3, 5}, std::vector<double>(6, 0.0));
  const FeatureVector row{{10, 20}, {{0, 1.0}, {1, 2.0}, {3, 4.0}}, 4};
  const auto out = mask.apply(row);
  CHECK(out.dense == std::vector<double>{20});
  CHECK(out.sparse_width == 2);
  CHECK(out.sparse == std::vector<SparseEntry>{{0, 2.0}, {1, 4.0}});
}

TEST_CASE("layout widths") {
  CHECK(make_layout(parse_feature_config("user"), 0).width() == 11);
  CHECK(make_layout(parse_feature_config("content,user"), 0).dense_width == 210);
  const auto all = make_layout(parse_feature_config("user,content,sentiment,ngram:uni+bi:tf"), 5000);
  CHECK(all.dense_width == 235);
  CHECK(all.sparse_width == 5000);
  CHECK(all.blocks.back().name == "ngram");
  CHECK(all.blocks.back().sparse);
}

TEST_CASE("feature configuration grammar") {
  std::vector<std::string> errors;
  CHECK_FALSE(parse_feature_config("ngram:quad:tf", errors));
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].find("quad") != std::string::npos);
  errors.clear();
  CHECK_FALSE(parse_feature_config("user,bogus,ngram:uni+bi:idf", errors));
  CHECK(errors.size() == 2);
  CHECK(parse_feature_config("ngram:bi+tri:tfidf,user").to_string() == "user,ngram:bi+tri:tfidf");
  CHECK_THROWS_AS(parse_feature_config(""), FeatureError);
}

TEST_CASE("assemble rejects blocks the layout does not name") {
  const auto layout = make_layout(parse_feature_config("user"), 0);
  FeatureBlocks blocks;
  CHECK_THROWS_AS(assemble(blocks, layout), FeatureError);
  blocks.user = user_features(metadata(1, 2, 3, 4));
  CHECK(assemble(blocks, layout).dense.size() == 11);
  blocks.sentiment = SentimentFeatureBlock{};
  CHECK_THROWS_AS(assemble(blocks, layout), FeatureError);
}

TEST_CASE("fitted pipeline round-trips and tolerates unseen text") {
  const auto& res = shipped_resources();
  std::vector<TweetRecord> records;
  for (int i = 0; i < 20; ++i) {
    records.push_back(make_record(std::to_string(i), i % 2 ? "win free cash now http://x.co" : "lunch with friends today",
                                  i % 2 ? Label::spam : Label::ham));
    records.back().user.followers_count = i * 10;
  }
  const auto config = parse_feature_config("user,content,sentiment,ngram:uni+bi:tfidf");
  PipelineOptions options;
  options.chi2_fraction = 0.3;
  const auto pipeline = FittedPipeline::fit(records, config, options, res);
  const auto again = FittedPipeline::from_json(Json::parse(canonical_dump(pipeline.to_json())));
  CHECK(canonical_dump(again.to_json()) == canonical_dump(pipeline.to_json()));

  const auto unseen = make_record("x", "completely novel vocabulary zebra");
  const auto v = pipeline.featurize(unseen, res);
  CHECK(v.width() == pipeline.output_width());
  CHECK(v == again.featurize(unseen, res));
  for (double x : v.dense) {
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("resource fingerprint is stable and sensitive") {
  const auto& res = shipped_resources();
  CHECK(res.fingerprint() == Resources::load(TWEETSPAM_RESOURCE_DIR).fingerprint());
  auto changed = res;
  changed.spam_words = SpamLexicon(std::vector<std::string>{"only phrase"});
  CHECK(changed.fingerprint() != res.fingerprint());
}

TEST_CASE("missing resource directory is reported") {
  CHECK_THROWS_AS(Resources::load("/nonexistent/tweetspam"), ResourceError);
}
