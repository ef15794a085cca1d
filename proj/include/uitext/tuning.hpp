#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uitext/hierarchy.hpp"
#include "uitext/prompt.hpp"

namespace uitext {

// Widgets whose candidate inputs are visible in the hierarchy.
enum class ExtractionCase { SearchList, PopupMenu, FilledContent };

std::string_view to_string(ExtractionCase c);

struct ExplicitWidget {
  NodeId widget_id = 0;
  ExtractionCase case_kind = ExtractionCase::SearchList;
  std::vector<std::string> answers;  // trimmed, non-empty, deduplicated, source order

  bool operator==(const ExplicitWidget&) const = default;
};

struct TuningPair {
  std::string prompt;
  std::string answer;
  std::string source_page;
  ExtractionCase case_kind = ExtractionCase::SearchList;

  bool operator==(const TuningPair&) const = default;
};

struct CorpusPage {
  std::string name;
  GuiPage page;
};

struct TuningOptions {
  int list_gap = 200;          // max px between an EditText and the list below it
  double min_overlap = 0.5;    // share of the EditText width the list must cover
  std::vector<std::string> indicator_keywords = {"search", "add", "input", "enter",
                                                 "type", "select", "choose", "optional"};
  PromptOptions prompt = default_prompt_options();
};

const TuningOptions& default_tuning_options();

// EditText with a ListView directly below: plain TextView items give their
// text, composite items give their top-most TextView (the title).
std::vector<ExplicitWidget> extract_search_list(const GuiPage& page,
                                                const TuningOptions& options = default_tuning_options());

// Spinner showing a value: the first TextView (pre-order) left of or above it
// becomes the explicit widget and the spinner value its single answer.
std::vector<ExplicitWidget> extract_popup_menu(const GuiPage& page);

// EditText whose hint holds user-filled content rather than a developer
// instruction such as "Search ..." or "Enter ...".
std::vector<ExplicitWidget> extract_filled_content(const GuiPage& page,
                                                   const TuningOptions& options = default_tuning_options());

// All three extractors, ordered by widget pre-order.
std::vector<ExplicitWidget> extract_explicit_widgets(const GuiPage& page,
                                                     const TuningOptions& options = default_tuning_options());

// Pairs for one page, before cross-page deduplication.
std::vector<TuningPair> pairs_for_page(const CorpusPage& page, const TuningOptions& options = default_tuning_options());

// Pages are processed in parallel; the result keeps corpus order and drops
// repeated (prompt, answer) pairs.
std::vector<TuningPair> collect_pairs(std::span<const CorpusPage> corpus,
                                      const TuningOptions& options = default_tuning_options());

// Single-threaded reference for collect_pairs.
std::vector<TuningPair> collect_pairs_serial(std::span<const CorpusPage> corpus,
                                             const TuningOptions& options = default_tuning_options());

// {"prompt": ..., "completion": " " + answer}
std::string to_jsonl_line(const TuningPair& pair);

// Writes the JSONL dataset and returns the number of lines. Throws Error{IoError}.
std::size_t build_dataset(std::span<const CorpusPage> corpus, const std::string& out_path,
                          const TuningOptions& options = default_tuning_options());

// Recursively loads *.json and *.xml pages under `dir`, sorted by path.
std::vector<CorpusPage> load_corpus(const std::string& dir);

}  // namespace uitext
