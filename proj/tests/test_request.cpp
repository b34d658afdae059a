#include "doctest.h"

#include "agent/request.hpp"

using namespace coact::agent;

TEST_CASE("create-section requests parse with type, name and card count") {
  auto r = parse_request("create a hero section named 'Landing Hero'");
  REQUIRE(r.action);
  CHECK(r.form == "create_section");
  CHECK(r.args.at("section_type") == "hero");
  CHECK(r.args.at("name") == "Landing Hero");

  r = parse_request("add a card grid section named 'Features' with 6 cards");
  REQUIRE(r.action);
  CHECK(r.args.at("section_type") == "card_grid");
  CHECK(r.args.at("cards").get<int>() == 6);

  r = parse_request("Create a Two-Column section");
  REQUIRE(r.action);
  CHECK(r.args.at("section_type") == "two_column");
  CHECK(r.args.count("name") == 0);
}

TEST_CASE("edit requests parse targets and magnitudes") {
  auto r = parse_request("recolor #12 to blue");
  REQUIRE(r.action);
  CHECK(r.form == "recolor");
  CHECK(r.args.at("target_ref") == "#12");
  CHECK(r.args.at("color") == "blue");

  r = parse_request("round the corners of 'card 1' to 12px");
  REQUIRE(r.action);
  CHECK(r.form == "round_corners");
  CHECK(r.args.at("target_ref") == "'card 1'");
  CHECK(r.args.at("px").get<double>() == doctest::Approx(12.0));

  r = parse_request("apply the dark theme to #7");
  REQUIRE(r.action);
  CHECK(r.form == "dark_theme");

  r = parse_request("arrange #3 vertically");
  REQUIRE(r.action);
  CHECK(r.form == "arrange");
  CHECK(r.args.at("direction") == "vertical");

  r = parse_request("space items in 'nav' by 24px");
  REQUIRE(r.action);
  CHECK(r.form == "spacing");
  CHECK(r.args.at("px").get<double>() == doctest::Approx(24.0));

  r = parse_request("make this larger");
  REQUIRE(r.action);
  CHECK(r.form == "enlarge");
}

TEST_CASE("chatter and unknown colors fall through as non-action") {
  CHECK_FALSE(parse_request("how is it going?").action);
  CHECK_FALSE(parse_request("").action);
  CHECK_FALSE(parse_request("recolor #12 to chartreuse").action);  // not in the palette
  CHECK_FALSE(parse_request("delete everything now").action);
}

TEST_CASE("formatters emit text the parser accepts back") {
  struct Case {
    std::string text;
    std::string form;
  };
  const Case cases[] = {
      {format_create_section("hero", "H1"), "create_section"},
      {format_create_section("card_grid", "Grid", 5), "create_section"},
      {format_create_section("three_column", "Cols"), "create_section"},
      {format_recolor("#4", "teal"), "recolor"},
      {format_enlarge(), "enlarge"},
      {format_round_corners("'cta'", 8.0), "round_corners"},
      {format_dark_theme("#9"), "dark_theme"},
      {format_arrange("#2", "horizontal"), "arrange"},
      {format_spacing("#2", 16.0), "spacing"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    auto r = parse_request(c.text);
    CHECK(r.action);
    CHECK(r.form == c.form);
  }
  auto grid = parse_request(format_create_section("card_grid", "Grid", 5));
  CHECK(grid.args.at("cards").get<int>() == 5);
}

TEST_CASE("palette colors are valid linear rgb") {
  const auto& pal = color_palette();
  CHECK(pal.size() >= 8);
  CHECK(pal.count("blue") == 1);
  for (const auto& [name, rgb] : pal) {
    CAPTURE(name);
    for (double c : rgb) {
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
    }
  }
}

TEST_CASE("section goals are structured, parent-linked build plans") {
  auto hero = section_goal("hero", "Hero A", 0);
  CHECK(hero.form == "create_section");
  REQUIRE(hero.items.size() == 4);
  CHECK(hero.items[0].key == "section");
  CHECK(hero.items[0].parent == "@workspace");
  for (std::size_t i = 1; i < hero.items.size(); ++i) {
    CHECK(hero.items[i].parent == "@item:section");
  }
  bool has_layout = false;
  for (const auto& p : hero.items[0].predicates) {
    if (p.key == "layout_mode") has_layout = true;
  }
  CHECK(has_layout);

  auto grid = section_goal("card_grid", "G", 3);
  // one section + per card: card frame, image, title
  CHECK(grid.items.size() == 1 + 3 * 3);
  int cards = 0;
  for (const auto& it : grid.items) {
    if (it.group == "cards") ++cards;
  }
  CHECK(cards == 3);

  auto cols = section_goal("two_column", "C", 0);
  int columns = 0;
  for (const auto& it : cols.items) {
    if (it.group == "columns") ++columns;
  }
  CHECK(columns == 2);

  // Goal specs serialize losslessly.
  auto round = GoalSpec::from_json(grid.to_json());
  CHECK(round == grid);
}

TEST_CASE("node reference helpers match the request grammar") {
  CHECK(ref_for_id("17") == "#17");
  CHECK(ref_for_name("my frame") == "'my frame'");
  auto r = parse_request("recolor " + ref_for_name("my frame") + " to red");
  CHECK(r.action);
  CHECK(r.args.at("target_ref") == "'my frame'");
}
