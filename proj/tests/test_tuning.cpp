#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_support.hpp"
#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"
#include "uitext/tuning.hpp"

namespace uitext {
namespace {

using testing::data_path;
using testing::fixture;
using Strings = std::vector<std::string>;

// Every page fixture: corpus, tuning, goldens, patterns and the JSON/XML pairs.
std::vector<CorpusPage> all_pages() {
  std::vector<CorpusPage> out;
  for (const char* dir : {"corpus", "tuning", "golden", "patterns", "pages", "pairs"}) {
    for (auto& p : load_corpus(data_path(std::string("fixtures/") + dir))) out.push_back(std::move(p));
  }
  return out;
}

Strings answers_of(const std::vector<TuningPair>& pairs) {
  Strings out;
  for (const auto& p : pairs) out.push_back(p.answer);
  return out;
}

GuiPage page_of(const std::string& children) {
  return parse_rico_json(R"({"app_name": "Shop", "activity_name": "MainActivity",
      "root": {"class": "android.widget.FrameLayout", "bounds": [0, 0, 1080, 1920], "children": [)" +
                         children + "]}}");
}

TEST(SearchList, PlainItems) {
  const auto ws = extract_search_list(fixture("corpus/search_list.json"));
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].case_kind, ExtractionCase::SearchList);
  EXPECT_EQ(ws[0].answers, (Strings{"Boston", "Chicago", "Seattle"}));
}

TEST(SearchList, CompositeItemsUseTitle) {
  const auto ws = extract_search_list(fixture("tuning/composite_list.json"));
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].answers, (Strings{"Markets rally", "Storm warning"}));
}

TEST(SearchList, ListAboveFieldIgnored) {
  const GuiPage page = page_of(R"(
      {"class": "android.widget.ListView", "bounds": [0, 100, 1080, 600], "children": [
          {"class": "android.widget.TextView", "text": "Boston", "bounds": [0, 100, 1080, 200]}]},
      {"class": "android.widget.EditText", "hint-text": "Search city", "bounds": [0, 700, 1080, 800]})");
  EXPECT_TRUE(extract_search_list(page).empty());
}

TEST(SearchList, ListTooFarBelow) {
  const GuiPage page = page_of(R"(
      {"class": "android.widget.EditText", "hint-text": "Search city", "bounds": [0, 100, 1080, 200]},
      {"class": "android.widget.ListView", "bounds": [0, 900, 1080, 1400], "children": [
          {"class": "android.widget.TextView", "text": "Boston", "bounds": [0, 900, 1080, 1000]}]})");
  EXPECT_TRUE(extract_search_list(page).empty());
  TuningOptions wide;
  wide.list_gap = 1000;
  EXPECT_EQ(extract_search_list(page, wide).size(), 1u);
}

TEST(PopupMenu, LabelGetsSpinnerValue) {
  const auto ws = extract_popup_menu(fixture("corpus/popup_menu.json"));
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].widget_id, 2u);
  EXPECT_EQ(ws[0].answers, (Strings{"United States"}));
}

TEST(PopupMenu, EmptySpinnerSkipped) {
  const GuiPage page = page_of(R"(
      {"class": "android.widget.TextView", "text": "Country", "bounds": [0, 100, 400, 200]},
      {"class": "android.widget.Spinner", "text": "  ", "bounds": [500, 100, 1000, 200]})");
  EXPECT_TRUE(extract_popup_menu(page).empty());
}

TEST(PopupMenu, FirstQualifyingLabelInPreOrder) {
  const GuiPage page = page_of(R"(
      {"class": "android.widget.TextView", "text": "Region", "bounds": [0, 50, 400, 90]},
      {"class": "android.widget.TextView", "text": "Country", "bounds": [0, 100, 400, 200]},
      {"class": "android.widget.Spinner", "text": "Canada", "bounds": [500, 100, 1000, 200]})");
  const auto ws = extract_popup_menu(page);
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].widget_id, 1u);
}

TEST(FilledContent, IndicatorKeywordsFiltered) {
  const auto ws = extract_filled_content(fixture("corpus/filled_content.json"));
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].answers, (Strings{"Boston"}));
  for (const char* hint : {"Search here", "Type a message", "Select one", "Optional"}) {
    const GuiPage page = page_of(std::string(R"({"class": "android.widget.EditText", "hint-text": ")") + hint +
                                 R"(", "bounds": [0, 0, 10, 10]})");
    EXPECT_TRUE(extract_filled_content(page).empty()) << hint;
  }
}

TEST(ExplicitWidgets, PreOrder) {
  const GuiPage page = page_of(R"(
      {"class": "android.widget.TextView", "text": "Country", "bounds": [0, 100, 400, 200]},
      {"class": "android.widget.Spinner", "text": "Canada", "bounds": [500, 100, 1000, 200]},
      {"class": "android.widget.EditText", "hint-text": "Search city", "bounds": [0, 300, 1080, 400]},
      {"class": "android.widget.ListView", "bounds": [0, 420, 1080, 800], "children": [
          {"class": "android.widget.TextView", "text": "Toronto", "bounds": [0, 420, 1080, 500]}]})");
  const auto ws = extract_explicit_widgets(page);
  ASSERT_EQ(ws.size(), 2u);
  EXPECT_EQ(ws[0].case_kind, ExtractionCase::PopupMenu);
  EXPECT_EQ(ws[1].case_kind, ExtractionCase::SearchList);
  EXPECT_LT(ws[0].widget_id, ws[1].widget_id);
}

TEST(CollectPairs, CorpusOrder) {
  const auto corpus = load_corpus(data_path("fixtures/corpus"));
  ASSERT_EQ(corpus.size(), 3u);
  const auto pairs = collect_pairs(corpus);
  EXPECT_EQ(answers_of(pairs), (Strings{"Boston", "United States", "Boston", "Chicago", "Seattle"}));
  EXPECT_EQ(pairs[0].source_page, "filled_content.json");
  EXPECT_EQ(pairs[1].case_kind, ExtractionCase::PopupMenu);
  // The list items share one prompt.
  EXPECT_EQ(pairs[2].prompt, pairs[4].prompt);
}

TEST(CollectPairs, AnswersNeverLeakIntoPrompts) {
  for (const auto& p : collect_pairs(all_pages()))
    EXPECT_EQ(p.prompt.find(p.answer), std::string::npos) << p.source_page << ": " << p.answer;
}

TEST(CollectPairs, DuplicatePagesCollapse) {
  const auto dup = load_corpus(data_path("fixtures/tuning/dup"));
  ASSERT_EQ(dup.size(), 2u);
  EXPECT_EQ(collect_pairs(dup).size(), pairs_for_page(dup[0]).size());
  EXPECT_EQ(collect_pairs(load_corpus(data_path("fixtures/tuning"))).size(), 3u);
}

TEST(CollectPairs, EmptyCorpus) {
  const auto dir = testing::scratch_dir("empty_corpus");
  EXPECT_TRUE(load_corpus(dir.string()).empty());
  EXPECT_TRUE(collect_pairs(std::vector<CorpusPage>{}).empty());
}

TEST(CollectPairs, ParallelMatchesSerial) {
  auto corpus = all_pages();
  // Repeat the corpus so several threads share the work.
  const auto once = corpus;
  for (int i = 0; i < 4; ++i) corpus.insert(corpus.end(), once.begin(), once.end());
  EXPECT_EQ(collect_pairs(corpus), collect_pairs_serial(corpus));
}

TEST(Corpus, MissingDirectory) { EXPECT_THROW(load_corpus("/nonexistent/corpus"), Error); }

TEST(Dataset, JsonlShape) {
  const auto dir = testing::scratch_dir("dataset");
  const std::string out = (dir / "train.jsonl").string();
  EXPECT_EQ(build_dataset(load_corpus(data_path("fixtures/corpus")), out), 5u);

  std::ifstream in(out);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto doc = nlohmann::json::parse(line);
    ASSERT_EQ(doc.size(), 2u);
    ASSERT_TRUE(doc.contains("prompt") && doc.contains("completion"));
    EXPECT_EQ(doc["completion"].get<std::string>().front(), ' ');
    ++n;
  }
  EXPECT_EQ(n, 5);
}

TEST(Dataset, LineKeyOrder) {
  const TuningPair p{"Please input city, the city is", "Boston", "x.json", ExtractionCase::SearchList};
  EXPECT_EQ(to_jsonl_line(p), R"({"prompt":"Please input city, the city is","completion":" Boston"})");
}

TEST(Dataset, UnwritablePath) {
  EXPECT_THROW(build_dataset(std::vector<CorpusPage>{}, "/nonexistent/dir/out.jsonl"), Error);
}

}  // namespace
}  // namespace uitext
