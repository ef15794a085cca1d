#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_support.hpp"
#include "uitext/errors.hpp"
#include "uitext/taxonomy.hpp"
#include "uitext/text_util.hpp"

namespace uitext {
namespace {

using testing::data_path;

InputCategory classify(const std::string& app, const std::string& activity, const std::string& info = {}) {
  static const Taxonomy taxonomy;
  const GlobalContext g{app, activity, 1};
  if (info.empty()) return taxonomy.classify(g);
  const WidgetInfo wi{InfoSource::HintText, info};
  return taxonomy.classify(g, &wi);
}

ErrorKind glossary_error(const std::string& doc) {
  try {
    parse_glossaries(doc);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IoError;
}

TEST(Classify, NbaTeamIsQuery) { EXPECT_EQ(classify("NBA sport", "search the NBA team"), InputCategory::Query); }

TEST(Classify, PersonalActivityIsIdentity) { EXPECT_EQ(classify("unknown", "PersonalActivity"), InputCategory::Identity); }

TEST(Classify, WalletIsNumeric) { EXPECT_EQ(classify("money wallet", "personal income"), InputCategory::Numeric); }

TEST(Classify, UnknownEverywhere) { EXPECT_EQ(classify("unknown", "unknown"), InputCategory::Unknown); }

TEST(Classify, DualMatchPrefersIdentity) {
  // one Identity keyword and one Query keyword
  EXPECT_EQ(classify("unknown", "ProfileSearchActivity"), InputCategory::Identity);
  EXPECT_EQ(classify("game", "name"), InputCategory::Identity);
}

TEST(Classify, WidgetInfoContributes) {
  EXPECT_EQ(classify("Acme", "MainActivity"), InputCategory::Unknown);
  EXPECT_EQ(classify("Acme", "MainActivity", "Zip code"), InputCategory::Geography);
}

TEST(Classify, PluralMatchesSingularKeyword) {
  EXPECT_EQ(classify("CheapFlights", "MainActivity"), InputCategory::Geography);
}

TEST(Classify, Deterministic) {
  for (int i = 0; i < 5; ++i) EXPECT_EQ(classify("Tune Box", "SearchActivity", "song"), InputCategory::Query);
}

TEST(Classify, CustomOrder) {
  const Taxonomy reversed(load_glossaries(), {InputCategory::Comment, InputCategory::Query, InputCategory::Numeric,
                                              InputCategory::Geography, InputCategory::Identity});
  EXPECT_EQ(reversed.classify(GlobalContext{"game", "name", 1}), InputCategory::Query);
}

TEST(Classify, LabeledSet) {
  const auto set = nlohmann::json::parse(text::read_file(data_path("fixtures/classifier_set.json")));
  ASSERT_EQ(set.size(), 25u);
  std::map<std::string, int> per_category;
  for (const auto& row : set) {
    const std::string expected = row["category"];
    ++per_category[expected];
    EXPECT_EQ(to_string(classify(row["app_name"], row["activity_name"], row["info"])), expected)
        << row["app_name"] << " / " << row["activity_name"] << " / " << row["info"];
  }
  for (const auto& [cat, n] : per_category) EXPECT_EQ(n, 5) << cat;
}

TEST(Glossaries, BuiltinHasFiveLargeSections) {
  const auto g = load_glossaries();
  ASSERT_EQ(g.size(), 5u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(g[i].category, canonical_category_order()[i]);
    EXPECT_GE(g[i].keywords.size(), 20u) << to_string(g[i].category);
  }
  EXPECT_TRUE(g[0].keywords.contains("personal"));
  EXPECT_TRUE(g[2].keywords.contains("income"));
  EXPECT_TRUE(g[3].keywords.contains("search"));
}

TEST(Glossaries, FourSectionsRejected) {
  EXPECT_EQ(glossary_error("[identity]\nname\n[geography]\ncity\n[numeric]\nage\n[query]\nsearch\n"),
            ErrorKind::MalformedGlossary);
}

TEST(Glossaries, OtherMalformedDocuments) {
  EXPECT_EQ(glossary_error("name\n[identity]\nuser\n"), ErrorKind::MalformedGlossary);
  EXPECT_EQ(glossary_error("[planets]\nmars\n"), ErrorKind::MalformedGlossary);
  EXPECT_EQ(glossary_error("[identity]\nname\n[identity]\nuser\n"), ErrorKind::MalformedGlossary);
  EXPECT_EQ(glossary_error("[identity\nname\n"), ErrorKind::MalformedGlossary);
  EXPECT_EQ(glossary_error("[identity]\n# nothing\n"), ErrorKind::MalformedGlossary);
}

TEST(Glossaries, SingleSectionOverridesDefaults) {
  const auto dir = testing::scratch_dir("glossary");
  const auto path = (dir / "query.txt").string();
  std::ofstream(path) << "# only query\n[query]\nPodcast\n";
  const auto g = load_glossaries(path);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[3].keywords, (std::unordered_set<std::string>{"podcast"}));
  EXPECT_EQ(g[0].keywords, load_glossaries()[0].keywords);
  EXPECT_EQ(g[4].keywords, load_glossaries()[4].keywords);

  const Taxonomy t(g);
  EXPECT_EQ(t.classify(GlobalContext{"Pod", "PodcastActivity", 1}), InputCategory::Query);
  EXPECT_EQ(t.classify(GlobalContext{"Pod", "SearchActivity", 1}), InputCategory::Unknown);
}

TEST(Glossaries, MissingFile) {
  try {
    load_glossaries("/nonexistent/glossary.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GlossaryMissing);
  }
}

TEST(Category, RoundTrip) {
  for (auto c : canonical_category_order()) EXPECT_EQ(parse_category(to_string(c)), c);
  EXPECT_EQ(parse_category(" Numeric "), InputCategory::Numeric);
  EXPECT_FALSE(parse_category("weather").has_value());
}

}  // namespace
}  // namespace uitext
