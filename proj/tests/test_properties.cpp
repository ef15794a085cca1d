// Randomised invariants over identifiers and generated pages.
#include <algorithm>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_support.hpp"
#include "uitext/errors.hpp"
#include "uitext/nlp.hpp"
#include "uitext/prompt.hpp"
#include "uitext/text_util.hpp"

namespace uitext {
namespace {

using testing::fixture;

const std::vector<std::string> kWords = {"search", "movie", "city", "from",  "to",    "weight", "kg",
                                         "name",   "email", "zip",  "code",  "price", "income", "note",
                                         "team",   "game",  "user", "phone", "the",   "your",   "date"};

std::string random_identifier(std::mt19937_64& rng) {
  static const std::string kSeps[] = {"_", "-", ".", ":", "/", " ", ""};
  std::uniform_int_distribution<int> n_words(1, 4), word(0, static_cast<int>(kWords.size()) - 1), sep(0, 6),
      style(0, 3), digit(0, 9);
  std::string out;
  for (int i = 0, n = n_words(rng); i < n; ++i) {
    std::string w = kWords[word(rng)];
    switch (style(rng)) {
      case 0: w[0] = static_cast<char>(std::toupper(w[0])); break;  // CamelCase
      case 1: std::transform(w.begin(), w.end(), w.begin(), ::toupper); break;
      case 2: w += std::to_string(digit(rng)); break;
      default: break;
    }
    if (i > 0) out += kSeps[sep(rng)];
    out += w;
  }
  return out;
}

TEST(Properties, TokenizerIdempotentAndLowercase) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const std::string id = random_identifier(rng);
    const auto tokens = nlp::tokenize(id);
    for (const auto& t : tokens) {
      EXPECT_FALSE(t.empty()) << id;
      EXPECT_TRUE(std::none_of(t.begin(), t.end(), ::isupper)) << id;
    }
    EXPECT_EQ(nlp::tokenize(text::join(tokens, " ")), tokens) << id;
  }
}

TEST(Properties, StopwordRemovalIdempotent) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const auto once = nlp::remove_stopwords(nlp::tokenize(random_identifier(rng)));
    EXPECT_EQ(nlp::remove_stopwords(once), once);
    for (const auto& t : once) EXPECT_FALSE(nlp::default_stopwords().contains(t));
  }
}

TEST(Properties, PosTagPreservesTokens) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto tokens = nlp::tokenize(random_identifier(rng));
    const auto tagged = nlp::pos_tag(tokens);
    ASSERT_EQ(tagged.size(), tokens.size());
    for (std::size_t k = 0; k < tokens.size(); ++k) EXPECT_EQ(tagged[k].surface, tokens[k]);
  }
}

// Random form: rows of optional label plus a field, some extra containers.
nlohmann::json random_page(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rows(1, 5), coin(0, 1), jitter(0, 30), word(0, static_cast<int>(kWords.size()) - 1);
  nlohmann::json children = nlohmann::json::array();
  int top = 100;
  for (int r = 0, n = rows(rng); r < n; ++r) {
    nlohmann::json row_children = nlohmann::json::array();
    const int j = jitter(rng);
    if (coin(rng)) {
      row_children.push_back({{"class", "android.widget.TextView"},
                              {"text", kWords[word(rng)] + " " + kWords[word(rng)]},
                              {"bounds", {20, top + j, 480, top + 60 + j}}});
    }
    nlohmann::json field = {{"class", coin(rng) ? "android.widget.EditText" : "android.widget.Button"},
                            {"bounds", {500, top, 1060, top + 60}}};
    if (coin(rng)) field["hint-text"] = random_identifier(rng);
    if (coin(rng)) field["resource-id"] = "com.app:id/" + random_identifier(rng);
    row_children.push_back(field);
    children.push_back({{"class", "android.widget.LinearLayout"},
                        {"bounds", {0, top - 10, 1080, top + 100}},
                        {"children", row_children}});
    top += 150;
  }
  return {{"app_name", kWords[word(rng)] + " app"},
          {"activity_name", "com.app/." + random_identifier(rng) + "Activity"},
          {"activity", {{"root", {{"class", "android.widget.FrameLayout"},
                                  {"bounds", {0, 0, 1080, 1920}},
                                  {"children", children}}}}}};
}

TEST(Properties, PageStructure) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const GuiPage page = parse_rico_json(random_page(rng).dump());
    for (const ViewNode* n : page.nodes()) {
      if (const auto p = page.parent(n->node_id)) EXPECT_LT(*p, n->node_id);
      for (NodeId other : nodes_on_same_row(page, n->node_id)) {
        const auto back = nodes_on_same_row(page, other);
        EXPECT_NE(std::find(back.begin(), back.end(), n->node_id), back.end());
      }
    }
  }
}

TEST(Properties, PromptShape) {
  std::mt19937_64 rng(31337);
  int rendered = 0;
  for (int i = 0; i < 300; ++i) {
    const GuiPage page = parse_rico_json(random_page(rng).dump());
    Prompt p;
    try {
      p = generate_prompt(page);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NoInputWidgets);
      EXPECT_TRUE(find_input_widgets(page).empty());
      continue;
    }
    ++rendered;
    EXPECT_EQ(generate_prompt(page).rendered, p.rendered);

    std::size_t masks = 0;
    for (std::size_t at = p.rendered.find("[MASK]"); at != std::string::npos; at = p.rendered.find("[MASK]", at + 1))
      ++masks;
    const auto mask_fragments = std::count_if(p.fragments.begin(), p.fragments.end(),
                                              [](const PromptFragment& f) { return f.is_mask(); });
    EXPECT_EQ(masks, static_cast<std::size_t>(mask_fragments)) << p.rendered;

    const auto first = p.rendered.find("input category is");
    ASSERT_NE(first, std::string::npos);
    EXPECT_EQ(p.rendered.find("input category is", first + 1), std::string::npos);
    EXPECT_EQ(p.widget_order, find_input_widgets(page));
  }
  EXPECT_GT(rendered, 100);
}

TEST(Properties, JsonAndXmlAgree) {
  for (const char* name : {"login", "flight"}) {
    const GuiPage j = fixture(std::string("pairs/") + name + ".json");
    const GuiPage x = fixture(std::string("pairs/") + name + ".xml");
    ASSERT_EQ(j.size(), x.size()) << name;
    for (NodeId id = 0; id < j.size(); ++id) {
      EXPECT_EQ(j.node(id).widget_class, x.node(id).widget_class) << name << " " << id;
      EXPECT_EQ(j.node(id).text, x.node(id).text) << name << " " << id;
      EXPECT_EQ(j.node(id).hint_text, x.node(id).hint_text) << name << " " << id;
      EXPECT_EQ(j.node(id).bounds, x.node(id).bounds) << name << " " << id;
    }
    EXPECT_EQ(generate_prompt(j).rendered, generate_prompt(x).rendered) << name;
  }
}

}  // namespace
}  // namespace uitext
