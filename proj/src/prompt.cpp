#include "uitext/prompt.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

namespace {

constexpr std::array<std::pair<PatternId, std::string_view>, 7> kPatternNames = {{
    {PatternId::IW1, "IW1"},
    {PatternId::IW2, "IW2"},
    {PatternId::IW3, "IW3"},
    {PatternId::IW4, "IW4"},
    {PatternId::LC5, "LC5"},
    {PatternId::LC6, "LC6"},
    {PatternId::GC7, "GC7"},
}};

}  // namespace

std::string_view to_string(PatternId id) {
  for (const auto& [pid, name] : kPatternNames) {
    if (pid == id) return name;
  }
  return "GC7";
}

std::optional<PatternId> parse_pattern_id(std::string_view s) {
  for (const auto& [pid, name] : kPatternNames) {
    if (name == s) return pid;
  }
  return std::nullopt;
}

bool is_input_widget_pattern(PatternId id) {
  return id == PatternId::IW1 || id == PatternId::IW2 || id == PatternId::IW3 || id == PatternId::IW4;
}

// --- Prompt ----------------------------------------------------------------

const PromptFragment* Prompt::input_fragment(NodeId id) const {
  for (const auto& f : fragments) {
    if (is_input_widget_pattern(f.pattern) && f.widget == id) return &f;
  }
  return nullptr;
}

std::string Prompt::prefix_through(std::size_t i) const {
  std::string out;
  for (std::size_t k = 0; k < i && k < fragments.size(); ++k) {
    out += fragments[k].text;
    out += ' ';
  }
  if (i < fragments.size()) {
    const std::string& t = fragments[i].text;
    const auto mask = t.find(kMask);
    out += mask == std::string::npos ? t : text::trim(t.substr(0, mask));
  }
  return out;
}

// --- registry --------------------------------------------------------------

const PatternRegistry& PatternRegistry::defaults() {
  static const PatternRegistry kDefaults = [] {
    PatternRegistry r;
    r.set("IW1", "Please input {n}, the {n} is");
    r.set("IW2", "Please {vn}, the {n} is");
    r.set("IW3", "{Det} {n} is [MASK] {unit}");
    r.set("IW3.sentence", "{N} is [MASK] {unit}.");
    r.set("IW4", "{Prep} [MASK]");
    r.set("IW4.sentence", "{Prep} [MASK].");
    r.set("LC5", "This input is about {local}.");
    r.set("LC6", "This input is about {local}, we need to {vn}.");
    r.set("GC7", "This is a {app} app, in its {activity} page, the input category is {category} category.");
    return r;
  }();
  return kDefaults;
}

PatternRegistry PatternRegistry::from_file(const std::string& path) {
  PatternRegistry r = defaults();
  std::istringstream in(text::read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ConfigError, path + ":" + std::to_string(line_no) + ": expected KEY = template");
    }
    r.set(text::trim(trimmed.substr(0, eq)), text::trim(trimmed.substr(eq + 1)));
  }
  return r;
}

const std::string& PatternRegistry::get(std::string_view key) const {
  auto it = templates_.find(key);
  if (it == templates_.end()) throw Error(ErrorKind::ConfigError, "no pattern " + std::string(key));
  return it->second;
}

void PatternRegistry::set(std::string key, std::string pattern) {
  templates_[std::move(key)] = std::move(pattern);
}

bool PatternRegistry::has(std::string_view key) const { return templates_.find(key) != templates_.end(); }

std::vector<std::string> PatternRegistry::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : templates_) out.push_back(k);
  return out;
}

std::string PatternRegistry::render(std::string_view key,
                                    const std::map<std::string, std::string>& slots) const {
  const std::string& tpl = get(key);
  std::string out;
  for (std::size_t i = 0; i < tpl.size();) {
    if (tpl[i] == '{') {
      const auto close = tpl.find('}', i);
      if (close != std::string::npos) {
        const std::string name = tpl.substr(i + 1, close - i - 1);
        auto it = slots.find(name);
        if (it == slots.end()) {
          throw Error(ErrorKind::ConfigError, "pattern " + std::string(key) + " uses unbound slot {" + name + "}");
        }
        out += it->second;
        i = close + 1;
        continue;
      }
    }
    out += tpl[i++];
  }
  return out;
}

const PromptOptions& default_prompt_options() {
  static const PromptOptions kDefaults;
  return kDefaults;
}

// --- fragment builders -----------------------------------------------------

namespace {

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string last_word(const std::string& phrase) {
  const auto sp = phrase.rfind(' ');
  return sp == std::string::npos ? phrase : phrase.substr(sp + 1);
}

bool personal_attribute(const std::string& noun) {
  static const std::array<std::string_view, 6> kPersonal = {"weight", "height", "age",
                                                            "income", "name", "email"};
  const std::string head = last_word(noun);
  return std::find(kPersonal.begin(), kPersonal.end(), head) != kPersonal.end();
}

std::size_t count_masks(std::string_view s) {
  std::size_t n = 0;
  for (auto pos = s.find(kMask); pos != std::string_view::npos; pos = s.find(kMask, pos + kMask.size())) ++n;
  return n;
}

// Label-like text ("One-way flight", "Boston") as opposed to identifiers
// ("income_form", "searchBar", "com.app:id/x").
bool is_natural_text(std::string_view s) {
  if (s.empty()) return false;
  bool has_alpha = false;
  bool has_space = false;
  bool camel = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == '_' || c == ':' || c == '/') return false;
    if (std::isalpha(c)) has_alpha = true;
    if (std::isspace(c)) has_space = true;
    if (i > 0 && std::isupper(c) && std::islower(static_cast<unsigned char>(s[i - 1]))) camel = true;
  }
  if (!has_alpha) return false;
  if (has_space) return true;
  return !camel && s.find('.') == std::string_view::npos;
}

// "Your monthly income" -> "your monthly income"; "NBA team" stays.
std::string subject_case(std::string s) {
  const auto first_end = s.find(' ');
  const std::string first = s.substr(0, first_end);
  const bool acronym = first.size() >= 2 && std::all_of(first.begin(), first.end(), [](unsigned char c) {
                         return !std::isalpha(c) || std::isupper(c);
                       });
  // Title-cased names ("United States") keep their capitals.
  bool title = false;
  for (std::size_t i = s.find(' '); i != std::string::npos && i + 1 < s.size(); i = s.find(' ', i + 1)) {
    if (std::isupper(static_cast<unsigned char>(s[i + 1]))) title = true;
  }
  if (!acronym && !title && !s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

bool starts_with_determiner(const std::string& subject) {
  static const std::array<std::string_view, 16> kDeterminers = {
      "the", "a", "an", "your", "my", "his", "her", "our", "their", "its",
      "this", "that", "these", "those", "some", "every"};
  const std::string first = text::to_lower(subject.substr(0, subject.find(' ')));
  return std::find(kDeterminers.begin(), kDeterminers.end(), first) != kDeterminers.end();
}

struct LocalSubject {
  std::string subject;
  nlp::SlotPhrases slots;
};

LocalSubject local_subject(const LocalContext& local) {
  std::vector<std::string> ordered;
  for (const auto* source : {&local.same_row_texts, &local.parent_texts, &local.leaf_texts}) {
    ordered.insert(ordered.end(), source->begin(), source->end());
  }
  if (local.fragment_hint) ordered.push_back(*local.fragment_hint);

  LocalSubject out;
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (is_natural_text(ordered[i])) {
      chosen = i;
      out.subject = subject_case(text::normalize_space(ordered[i]));
      break;
    }
  }
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (chosen && *chosen == i) continue;
    const auto slots = nlp::analyze(ordered[i]);
    if (!out.slots.noun_phrase && slots.noun_phrase) out.slots.noun_phrase = slots.noun_phrase;
    if (!out.slots.verb_noun_phrase && slots.verb_noun_phrase) out.slots.verb_noun_phrase = slots.verb_noun_phrase;
  }
  if (out.subject.empty() && out.slots.noun_phrase) out.subject = *out.slots.noun_phrase;
  return out;
}

}  // namespace

PromptFragment build_iw_fragment(const WidgetContext& ctx, const nlp::SlotPhrases& slots,
                                 bool sentence_form, const PatternRegistry& patterns) {
  PromptFragment f;
  f.widget = ctx.widget_id;
  const bool noun = slots.noun_phrase.has_value();

  if (slots.preposition && !noun) {
    f.pattern = PatternId::IW4;
    f.subject = *slots.preposition;
    f.text = patterns.render(sentence_form ? "IW4.sentence" : "IW4", {{"Prep", capitalize(*slots.preposition)}});
  } else if (!noun) {
    throw Error(ErrorKind::NoSlots, "widget " + std::to_string(ctx.widget_id) + " yields no phrase");
  } else if (slots.unit_suffix) {
    f.pattern = PatternId::IW3;
    f.subject = *slots.noun_phrase;
    f.mask_suffix = *slots.unit_suffix;
    const std::map<std::string, std::string> values = {
        {"n", *slots.noun_phrase},
        {"N", capitalize(*slots.noun_phrase)},
        {"Det", personal_attribute(*slots.noun_phrase) ? "Your" : "The"},
        {"unit", *slots.unit_suffix}};
    f.text = patterns.render(sentence_form ? "IW3.sentence" : "IW3", values);
  } else if (slots.verb_noun_phrase) {
    f.pattern = PatternId::IW2;
    f.subject = *slots.noun_phrase;
    f.text = patterns.render("IW2", {{"vn", *slots.verb_noun_phrase}, {"n", *slots.noun_phrase}});
  } else {
    f.pattern = PatternId::IW1;
    f.subject = *slots.noun_phrase;
    f.text = patterns.render("IW1", {{"n", *slots.noun_phrase}});
  }

  if (count_masks(f.text) == 1) f.mask_slot = ctx.widget_id;
  return f;
}

PromptFragment build_lc_fragment(std::string_view subject, const nlp::SlotPhrases& slots_local,
                                 const PatternRegistry& patterns) {
  PromptFragment f;
  f.subject = text::trim(subject);
  if (f.subject.empty()) {
    f.pattern = PatternId::LC5;
    return f;
  }
  if (slots_local.verb_noun_phrase) {
    f.pattern = PatternId::LC6;
    f.text = patterns.render("LC6", {{"local", f.subject}, {"vn", *slots_local.verb_noun_phrase}});
  } else {
    f.pattern = PatternId::LC5;
    const std::string local = starts_with_determiner(f.subject) ? f.subject : "the " + f.subject;
    f.text = patterns.render("LC5", {{"local", local}});
  }
  return f;
}

PromptFragment build_lc_fragment(const WidgetContext& ctx, const PatternRegistry& patterns) {
  const LocalSubject ls = local_subject(ctx.local);
  PromptFragment f = build_lc_fragment(ls.subject, ls.slots, patterns);
  f.widget = ctx.widget_id;
  return f;
}

std::string readable_activity(std::string_view activity_name) {
  std::string name = text::trim(activity_name);
  if (name.find(' ') != std::string::npos) return text::normalize_space(name);
  if (const auto slash = name.rfind('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (const auto dot = name.rfind('.'); dot != std::string::npos) name = name.substr(dot + 1);
  std::vector<std::string> words = nlp::remove_stopwords(nlp::tokenize(name));
  std::erase(words, "activity");
  if (words.empty()) return text::to_lower(name.empty() ? std::string(kUnknownName) : name);
  return text::join(words, " ");
}

PromptFragment build_gc_fragment(const GlobalContext& g, InputCategory category,
                                 const PatternRegistry& patterns) {
  const InputCategory shown = category == InputCategory::Unknown ? InputCategory::Query : category;
  PromptFragment f;
  f.pattern = PatternId::GC7;
  f.text = patterns.render("GC7", {{"app", text::normalize_space(g.app_name)},
                                   {"activity", readable_activity(g.activity_name)},
                                   {"category", std::string(to_string(shown))}});
  return f;
}

nlp::SlotPhrases widget_slots(const WidgetContext& ctx) {
  auto usable = [](const nlp::SlotPhrases& s) { return s.noun_phrase || s.preposition; };
  if (ctx.info) {
    auto slots = nlp::analyze(ctx.info->raw);
    if (usable(slots)) return slots;
  }
  auto local = nlp::analyze(ctx.local.combined);
  return local;
}

// --- composition -----------------------------------------------------------

namespace {

void append_widget(Prompt& prompt, const WidgetContext& ctx, bool multi, const PatternRegistry& patterns) {
  PromptFragment lc = build_lc_fragment(ctx, patterns);
  if (!lc.text.empty()) prompt.fragments.push_back(std::move(lc));
  PromptFragment iw;
  try {
    iw = build_iw_fragment(ctx, widget_slots(ctx), multi, patterns);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoSlots) throw;
    nlp::SlotPhrases fallback;
    fallback.noun_phrase = "content";
    iw = build_iw_fragment(ctx, fallback, multi, patterns);
  }
  prompt.fragments.push_back(std::move(iw));
  prompt.widget_order.push_back(ctx.widget_id);
}

void finish(Prompt& prompt) {
  std::vector<std::string> texts;
  for (const auto& f : prompt.fragments) texts.push_back(f.text);
  prompt.rendered = text::join(texts, " ");
}

}  // namespace

Prompt generate_prompt(const GuiPage& page, const PromptOptions& options, std::string page_ref) {
  const auto widgets = find_input_widgets(page, options.context.input_keywords);
  if (widgets.empty()) throw Error(ErrorKind::NoInputWidgets, "page has no input widgets");

  std::vector<WidgetContext> contexts;
  for (NodeId id : widgets) contexts.push_back(extract_context(page, id, options.context));

  Prompt prompt;
  prompt.page_ref = page_ref.empty() ? page.activity_name() : std::move(page_ref);
  const WidgetInfo* first_info = contexts.front().info ? &*contexts.front().info : nullptr;
  prompt.category = options.taxonomy.classify(contexts.front().global_ctx, first_info);
  prompt.fragments.push_back(build_gc_fragment(contexts.front().global_ctx, prompt.category, options.patterns));

  const bool multi = contexts.size() > 1;
  for (const auto& ctx : contexts) append_widget(prompt, ctx, multi, options.patterns);
  finish(prompt);
  return prompt;
}

Prompt generate_widget_prompt(const GuiPage& page, NodeId id, const PromptOptions& options,
                              std::string page_ref) {
  const WidgetContext ctx = extract_context(page, id, options.context);
  Prompt prompt;
  prompt.page_ref = page_ref.empty() ? page.activity_name() : std::move(page_ref);
  prompt.category = options.taxonomy.classify(ctx.global_ctx, ctx.info ? &*ctx.info : nullptr);
  prompt.fragments.push_back(build_gc_fragment(ctx.global_ctx, prompt.category, options.patterns));
  append_widget(prompt, ctx, false, options.patterns);
  finish(prompt);
  return prompt;
}

}  // namespace uitext
