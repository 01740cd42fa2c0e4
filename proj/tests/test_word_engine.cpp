#include "oracles.hpp"

#include "perioscope/errors.hpp"
#include "perioscope/word_engine.hpp"

#include <catch_amalgamated.hpp>

using namespace perioscope;

namespace {

std::string first16(BuiltinName name) {
  const auto spec = SequenceSpec::builtin(name);
  std::string s;
  for (std::uint64_t i = 0; i < 16; ++i) s += static_cast<char>('0' + letter(spec, i));
  return s;
}

}  // namespace

TEST_CASE("builtin prefixes of length 16") {
  CHECK(first16(BuiltinName::thue_morse) == "0110100110010110");
  CHECK(first16(BuiltinName::rudin_shapiro) == "0001001000011101");
  CHECK(first16(BuiltinName::period_doubling) == "0100010101000100");
  CHECK(letter(SequenceSpec::builtin(BuiltinName::thue_morse), 0) == 0);
}

TEST_CASE("prefix and render") {
  const auto tm = SequenceSpec::parse("tm");
  CHECK(render(tm, prefix(tm, 4)) == "0110");
  CHECK(prefix(tm, 0).empty());
  const auto pd = SequenceSpec::parse("pd");
  CHECK(render(pd, prefix(pd, 8)) == "01000101");
}

TEST_CASE("builtins match reference generators") {
  const std::uint64_t n = 1 << 15;
  const auto tm = prefix(SequenceSpec::parse("tm"), n);
  const auto rs = prefix(SequenceSpec::parse("rs"), n);
  const auto pd = prefix(SequenceSpec::parse("pd"), n);
  for (std::uint64_t i = 0; i < n; ++i) {
    REQUIRE(tm[i] == oracle::thue_morse(i));
    REQUIRE(rs[i] == oracle::rudin_shapiro(i));
    REQUIRE(pd[i] == oracle::period_doubling(i));
  }
}

TEST_CASE("prefix agrees with letter for every builtin") {
  const std::uint64_t n = 1 << 16;
  for (const char* name : {"tm", "rs", "pd"}) {
    const auto spec = SequenceSpec::parse(name);
    const auto word = prefix(spec, n);
    REQUIRE(word.size() == n);
    for (std::uint64_t i = 0; i < n; ++i) REQUIRE(word[i] == letter(spec, i));
  }
}

TEST_CASE("Thue-Morse recurrence") {
  const auto tm = SequenceSpec::parse("tm");
  for (std::uint64_t i = 0; i < (1u << 15); ++i) {
    REQUIRE(letter(tm, 2 * i) == letter(tm, i));
    REQUIRE(letter(tm, 2 * i + 1) == 1 - letter(tm, i));
  }
}

TEST_CASE("period-doubling: DFAO and morphism iteration agree") {
  const auto automaton = dfao_from_uniform_morphism(period_doubling_morphism());
  const auto as_morphism = SequenceSpec::morphism(period_doubling_morphism());
  const auto word = prefix(as_morphism, 1 << 15);
  for (std::uint64_t i = 0; i < word.size(); ++i) REQUIRE(run_dfao(automaton, i) == word[i]);
}

TEST_CASE("JSON specs") {
  SECTION("morphism") {
    const auto spec = SequenceSpec::parse(
        R"({"kind":"morphism","rules":{"0":"01","1":"00"},"coding":{"0":"0","1":"1"},"seed":"0"})");
    CHECK(render(spec, prefix(spec, 16)) == "0100010101000100");
    CHECK(spec.base() == 2);
    const auto again = SequenceSpec::from_json(spec.to_json());
    CHECK(render(again, prefix(again, 16)) == "0100010101000100");
  }
  SECTION("dfao") {
    const auto spec = SequenceSpec::parse(R"({"kind":"dfao","q":2,"start":0,"delta":[[0,1],[1,0]],"out":[0,1]})");
    CHECK(render(spec, prefix(spec, 16)) == "0110100110010110");
  }
  SECTION("builtin") {
    const auto spec = SequenceSpec::parse(R"({"kind":"builtin","name":"rs"})");
    CHECK(render(spec, prefix(spec, 16)) == "0001001000011101");
  }
}

TEST_CASE("malformed specs are rejected") {
  CHECK_THROWS_AS(SequenceSpec::parse("fibonacci"), SpecError);
  CHECK_THROWS_AS(SequenceSpec::parse(R"({"kind":"dfao","q":2,"delta":[[0]],"out":[0]})"), SpecError);
  CHECK_THROWS_AS(SequenceSpec::parse(R"({"kind":"dfao","q":2,"delta":[[0,3]],"out":[0]})"), SpecError);
  CHECK_THROWS_AS(SequenceSpec::parse(R"({"kind":"morphism","rules":{"0":"10","1":"00"},"seed":"0"})"),
                  SpecError);
  CHECK_THROWS_AS(SequenceSpec::parse(R"({"kind":"morphism","rules":{"0":"0","1":"00"},"seed":"0"})"),
                  SpecError);
  CHECK_THROWS_AS(SequenceSpec::parse(R"({"kind":"morphism","rules":{"0":"01","1":""},"seed":"0"})"),
                  SpecError);
  CHECK_THROWS_AS(SequenceSpec::parse(R"({"kind":"shuffle"})"), SpecError);
}
