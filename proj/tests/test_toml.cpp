#include "doctest.h"
#include "support/error.hpp"
#include "support/toml.hpp"

using coact::Error;
using coact::ErrorCode;
using Json = nlohmann::json;

TEST_CASE("parses tables, scalars, and arrays") {
  const std::string text = R"(
# comment
top = 1

[alpha]
name = "hero"      # trailing comment
count = 3
ratio = 0.5
flag = true
other = false
items = [1, 2, 3]
mixed = ["a", "b"]

[alpha.nested]
deep = 2.5
)";
  Json doc = coact::parse_toml(text);
  CHECK(doc.at("top").get<int>() == 1);
  CHECK(doc.at("alpha").at("name").get<std::string>() == "hero");
  CHECK(doc.at("alpha").at("count").get<int>() == 3);
  CHECK(doc.at("alpha").at("ratio").get<double>() == doctest::Approx(0.5));
  CHECK(doc.at("alpha").at("flag").get<bool>());
  CHECK_FALSE(doc.at("alpha").at("other").get<bool>());
  CHECK(doc.at("alpha").at("items").size() == 3);
  CHECK(doc.at("alpha").at("mixed").at(1).get<std::string>() == "b");
  CHECK(doc.at("alpha").at("nested").at("deep").get<double>() == doctest::Approx(2.5));
}

TEST_CASE("rejects malformed input") {
  CHECK_THROWS_AS(coact::parse_toml("key"), Error);
  CHECK_THROWS_AS(coact::parse_toml("[unclosed\nkey = 1"), Error);
  CHECK_THROWS_AS(coact::parse_toml("key = \"unterminated"), Error);
  try {
    coact::parse_toml("key =");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }
}

TEST_CASE("serialization round-trips through the parser") {
  Json doc{{"session", Json{{"seed", 7}, {"sessions", 10}, {"rate", 0.25}}},
           {"policy", Json{{"name", std::string("base")}, {"on", true}}}};
  const std::string text = coact::to_toml(doc);
  Json back = coact::parse_toml(text);
  CHECK(back.at("session").at("seed").get<int>() == 7);
  CHECK(back.at("session").at("rate").get<double>() == doctest::Approx(0.25));
  CHECK(back.at("policy").at("name").get<std::string>() == "base");
  CHECK(back.at("policy").at("on").get<bool>());
}
