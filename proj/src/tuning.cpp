#include "uitext/tuning.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

std::string_view to_string(ExtractionCase c) {
  switch (c) {
    case ExtractionCase::SearchList: return "search_list";
    case ExtractionCase::PopupMenu: return "popup_menu";
    case ExtractionCase::FilledContent: return "filled_content";
  }
  return "search_list";
}

const TuningOptions& default_tuning_options() {
  static const TuningOptions kDefaults;
  return kDefaults;
}

namespace {

bool is_edit_text(const ViewNode& n) { return text::contains(n.widget_class, "EditText"); }
bool is_list_view(const ViewNode& n) { return text::contains(n.widget_class, "ListView"); }
bool is_spinner(const ViewNode& n) { return text::contains(n.widget_class, "Spinner"); }

// Display-only text widgets; EditText and AutoCompleteTextView are inputs.
bool is_text_view(const ViewNode& n) {
  return text::contains(n.widget_class, "TextView") && !text::contains(n.widget_class, "Edit") &&
         !text::contains(n.widget_class, "AutoComplete");
}

void push_unique(std::vector<std::string>& answers, const std::optional<std::string>& raw) {
  if (!raw) return;
  std::string value = text::trim(*raw);
  if (value.empty() || std::find(answers.begin(), answers.end(), value) != answers.end()) return;
  answers.push_back(std::move(value));
}

void text_views_in(const ViewNode& n, std::vector<const ViewNode*>& out) {
  if (is_text_view(n)) out.push_back(&n);
  for (const auto& child : n.children) text_views_in(child, out);
}

int horizontal_overlap(const Bounds& a, const Bounds& b) {
  return std::max(0, std::min(a.right, b.right) - std::max(a.left, b.left));
}

}  // namespace

std::vector<ExplicitWidget> extract_search_list(const GuiPage& page, const TuningOptions& options) {
  std::vector<ExplicitWidget> out;
  for (const ViewNode* edit : page.nodes()) {
    if (!is_edit_text(*edit)) continue;
    const Bounds& eb = edit->bounds;

    // Nearest qualifying list below the field.
    const ViewNode* list = nullptr;
    for (const ViewNode* cand : page.nodes()) {
      if (!is_list_view(*cand)) continue;
      const Bounds& lb = cand->bounds;
      if (lb.top < eb.bottom || lb.top - eb.bottom > options.list_gap) continue;
      if (eb.width() <= 0 || horizontal_overlap(eb, lb) < options.min_overlap * eb.width()) continue;
      if (!list || lb.top < list->bounds.top) list = cand;
    }
    if (!list) continue;

    std::vector<std::vector<const ViewNode*>> items;
    for (const auto& item : list->children) {
      std::vector<const ViewNode*> views;
      text_views_in(item, views);
      items.push_back(std::move(views));
    }
    const bool plain = !items.empty() && std::all_of(items.begin(), items.end(),
                                                     [](const auto& v) { return v.size() == 1; });
    ExplicitWidget w{edit->node_id, ExtractionCase::SearchList, {}};
    for (const auto& views : items) {
      if (views.empty()) continue;
      if (plain) {
        push_unique(w.answers, views.front()->text);
        continue;
      }
      // Title: the TextView with the smallest ordinate, pre-order on ties.
      const ViewNode* title = *std::min_element(views.begin(), views.end(), [](const ViewNode* a, const ViewNode* b) {
        return a->bounds.top != b->bounds.top ? a->bounds.top < b->bounds.top : a->node_id < b->node_id;
      });
      push_unique(w.answers, title->text);
    }
    if (!w.answers.empty()) out.push_back(std::move(w));
  }
  return out;
}

std::vector<ExplicitWidget> extract_popup_menu(const GuiPage& page) {
  std::vector<ExplicitWidget> out;
  for (const ViewNode* spinner : page.nodes()) {
    if (!is_spinner(*spinner)) continue;
    std::optional<std::string> value;
    if (text::has_content(spinner->hint_text)) {
      value = spinner->hint_text;
    } else if (text::has_content(spinner->text)) {
      value = spinner->text;
    }
    if (!value) continue;

    for (const ViewNode* t : page.nodes()) {
      if (!is_text_view(*t) || page.is_ancestor(spinner->node_id, t->node_id)) continue;
      if (t->bounds.left < spinner->bounds.left || t->bounds.top < spinner->bounds.top) {
        ExplicitWidget w{t->node_id, ExtractionCase::PopupMenu, {}};
        push_unique(w.answers, value);
        out.push_back(std::move(w));
        break;
      }
    }
  }
  return out;
}

std::vector<ExplicitWidget> extract_filled_content(const GuiPage& page, const TuningOptions& options) {
  std::vector<ExplicitWidget> out;
  for (const ViewNode* n : page.nodes()) {
    if (!is_edit_text(*n) || !text::has_content(n->hint_text)) continue;
    const std::string lower = text::to_lower(*n->hint_text);
    const bool preset = std::any_of(options.indicator_keywords.begin(), options.indicator_keywords.end(),
                                    [&](const std::string& k) { return text::contains(lower, k); });
    if (preset) continue;
    ExplicitWidget w{n->node_id, ExtractionCase::FilledContent, {}};
    push_unique(w.answers, n->hint_text);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<ExplicitWidget> extract_explicit_widgets(const GuiPage& page, const TuningOptions& options) {
  std::vector<ExplicitWidget> all = extract_search_list(page, options);
  for (auto& w : extract_popup_menu(page)) all.push_back(std::move(w));
  for (auto& w : extract_filled_content(page, options)) all.push_back(std::move(w));
  std::stable_sort(all.begin(), all.end(),
                   [](const ExplicitWidget& a, const ExplicitWidget& b) { return a.widget_id < b.widget_id; });
  return all;
}

std::vector<TuningPair> pairs_for_page(const CorpusPage& cp, const TuningOptions& options) {
  std::vector<TuningPair> out;
  for (const auto& w : extract_explicit_widgets(cp.page, options)) {
    // The answers are on the page (filled hint, spinner value, list items) and
    // must not leak into the prompt.
    const GuiPage view = cp.page.redacted(w.answers);
    const Prompt prompt = generate_widget_prompt(view, w.widget_id, options.prompt, cp.name);
    for (const auto& answer : w.answers) {
      out.push_back(TuningPair{prompt.rendered, answer, cp.name, w.case_kind});
    }
  }
  return out;
}

namespace {

std::vector<TuningPair> dedup(std::vector<std::vector<TuningPair>> per_page) {
  std::vector<TuningPair> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& page_pairs : per_page) {
    for (auto& p : page_pairs) {
      if (p.prompt.empty() || p.answer.empty()) continue;
      if (seen.emplace(p.prompt, p.answer).second) out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

std::vector<TuningPair> collect_pairs_serial(std::span<const CorpusPage> corpus, const TuningOptions& options) {
  std::vector<std::vector<TuningPair>> per_page;
  for (const auto& cp : corpus) per_page.push_back(pairs_for_page(cp, options));
  return dedup(std::move(per_page));
}

std::vector<TuningPair> collect_pairs(std::span<const CorpusPage> corpus, const TuningOptions& options) {
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
  std::vector<std::vector<TuningPair>> per_page(corpus.size());
  std::vector<std::exception_ptr> errors(corpus.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      per_page[i] = pairs_for_page(corpus[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return dedup(std::move(per_page));
}

std::string to_jsonl_line(const TuningPair& pair) {
  nlohmann::ordered_json line;
  line["prompt"] = pair.prompt;
  line["completion"] = " " + pair.answer;
  return line.dump();
}

std::size_t build_dataset(std::span<const CorpusPage> corpus, const std::string& out_path,
                          const TuningOptions& options) {
  const auto pairs = collect_pairs(corpus, options);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + out_path);
  for (const auto& p : pairs) out << to_jsonl_line(p) << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + out_path);
  return pairs.size();
}

std::vector<CorpusPage> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::IoError, "not a directory: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = text::to_lower(entry.path().extension().string());
    if (ext == ".json" || ext == ".xml") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusPage> corpus;
  for (const auto& p : paths) {
    corpus.push_back(CorpusPage{fs::relative(p, dir).generic_string(), load_page(p.string())});
  }
  return corpus;
}

}  // namespace uitext
