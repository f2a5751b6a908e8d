#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_support.hpp"
#include "tweetspam/common/canonical_json.hpp"
#include "tweetspam/common/digest.hpp"
#include "tweetspam/common/files.hpp"
#include "tweetspam/common/parallel.hpp"
#include "tweetspam/common/rng.hpp"
#include "tweetspam/common/utf8.hpp"

using namespace tweetspam;

TEST_CASE("canonical json sorts keys and keeps full precision") {
  const Json value = {{"b", 0.1}, {"a", {{"z", 1}, {"y", true}}}, {"c", "x"}};
  CHECK(canonical_dump(value) == R"({"a":{"y":true,"z":1},"b":0.10000000000000001,"c":"x"})");
  CHECK(Json::parse(canonical_dump(value)) == value);
}

TEST_CASE("canonical json is stable across construction order") {
  Json a, b;
  a["x"] = 1.5;
  a["a"] = {1, 2};
  b["a"] = {1, 2};
  b["x"] = 1.5;
  CHECK(canonical_dump(a, 2) == canonical_dump(b, 2));
}

TEST_CASE("sha256 matches known digests") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("utf8 length counts code points") {
  CHECK(utf8::length("") == 0);
  CHECK(utf8::length("abc") == 3);
  CHECK(utf8::length("caf\xC3\xA9") == 4);
  CHECK(utf8::length("\xF0\x9F\x98\x80!") == 2);
  CHECK(utf8::ascii_lower("HeLLo \xC3\x89") == "hello \xC3\x89");
}

TEST_CASE("utf8 append round-trips through decode") {
  for (char32_t cp : {U'a', U'é', U'☺', U'\U0001F600'}) {
    std::string s;
    utf8::append(s, cp);
    std::size_t len = 0;
    CHECK(utf8::decode(s, 0, len) == cp);
    CHECK(len == s.size());
  }
}

TEST_CASE("rng streams are reproducible and derived seeds differ") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  std::set<std::uint64_t> seeds;
  for (std::uint64_t t = 0; t < 100; ++t) seeds.insert(derive_seed(42, t));
  CHECK(seeds.size() == 100);
  CHECK(derive_seed(42, 3) == derive_seed(42, 3));
}

TEST_CASE("rng helpers stay in range") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rng.uniform_index(13) < 13);
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  const auto sample = rng.sample_without_replacement(20, 20);
  CHECK(std::set<std::size_t>(sample.begin(), sample.end()).size() == 20);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
  set_max_threads(1);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 2) == 1000);
  set_max_threads(0);
}

TEST_CASE("atomic writes replace the file contents") {
  testing::TempDir dir;
  const auto path = dir / "out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  CHECK(read_file(path) == "second");
  CHECK_THROWS(read_file(dir / "missing.txt"));
}
