#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uitext/context.hpp"
#include "uitext/nlp.hpp"
#include "uitext/taxonomy.hpp"

namespace uitext {

// Input-widget patterns IW1..IW4, local-context LC5/LC6, global GC7.
enum class PatternId { IW1, IW2, IW3, IW4, LC5, LC6, GC7 };

std::string_view to_string(PatternId id);
std::optional<PatternId> parse_pattern_id(std::string_view s);
bool is_input_widget_pattern(PatternId id);

inline constexpr std::string_view kMask = "[MASK]";

struct PromptFragment {
  PatternId pattern = PatternId::GC7;
  std::string text;
  std::optional<NodeId> mask_slot;  // set iff text holds exactly one [MASK]
  std::optional<NodeId> widget;     // widget this fragment describes (IW/LC only)
  std::string subject;              // noun (or preposition) the IW fragment asks for
  std::string mask_suffix;          // text after [MASK], used to cut completions

  bool is_mask() const { return mask_slot.has_value(); }
  bool operator==(const PromptFragment&) const = default;
};

struct Prompt {
  std::string page_ref;
  InputCategory category = InputCategory::Unknown;
  std::vector<PromptFragment> fragments;
  std::vector<NodeId> widget_order;
  std::string rendered;

  // The IW fragment bound to `id`, or nullptr.
  const PromptFragment* input_fragment(NodeId id) const;
  // Rendered text of every fragment before index `i`, plus the part of
  // fragment `i` preceding its mask (or the whole fragment).
  std::string prefix_through(std::size_t i) const;

  bool operator==(const Prompt&) const = default;
};

// Sentence templates keyed by pattern name. Placeholders:
//   {n} {N} noun phrase (N capitalised)   {vn} verb + noun phrase
//   {Det} "Your"/"The"                    {Prep} capitalised preposition
//   {unit} measurement unit               {local} local-context subject
//   {app} {activity} {category}
// IW3.sentence and IW4.sentence are the standalone forms used when several
// widgets share one prompt.
class PatternRegistry {
 public:
  static const PatternRegistry& defaults();

  // Applies "KEY = template" lines from a file over the defaults.
  static PatternRegistry from_file(const std::string& path);

  const std::string& get(std::string_view key) const;
  void set(std::string key, std::string pattern);
  bool has(std::string_view key) const;
  std::vector<std::string> keys() const;

  std::string render(std::string_view key, const std::map<std::string, std::string>& slots) const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

struct PromptOptions {
  ContextOptions context;
  Taxonomy taxonomy;
  PatternRegistry patterns = PatternRegistry::defaults();
};

const PromptOptions& default_prompt_options();

// Chooses IW4 (preposition only), IW3 (unit), IW2 (verb + noun) or IW1.
// Throws Error{NoSlots} when there is neither a noun nor a preposition.
PromptFragment build_iw_fragment(const WidgetContext& ctx, const nlp::SlotPhrases& slots,
                                 bool sentence_form = false,
                                 const PatternRegistry& patterns = PatternRegistry::defaults());

// LC6 when the local verb phrase exists, else LC5. Returns a fragment with
// empty text when there is nothing to say; such fragments are dropped.
PromptFragment build_lc_fragment(std::string_view subject, const nlp::SlotPhrases& slots_local,
                                 const PatternRegistry& patterns = PatternRegistry::defaults());
PromptFragment build_lc_fragment(const WidgetContext& ctx,
                                 const PatternRegistry& patterns = PatternRegistry::defaults());

PromptFragment build_gc_fragment(const GlobalContext& g, InputCategory category,
                                 const PatternRegistry& patterns = PatternRegistry::defaults());

// Activity name as it appears in the GC sentence: identifiers such as
// "com.app.SearchMovieActivity" become "search movie"; free text is kept.
std::string readable_activity(std::string_view activity_name);

// Slots describing the widget itself: from its info, falling back to the
// local context.
nlp::SlotPhrases widget_slots(const WidgetContext& ctx);

// One-widget pages: GC + LC + IW. Multi-widget pages: GC once, then LC + IW
// per input widget. Throws Error{NoInputWidgets}.
Prompt generate_prompt(const GuiPage& page, const PromptOptions& options = default_prompt_options(),
                       std::string page_ref = {});

// GC + LC + IW prompt for a single node, input widget or not.
Prompt generate_widget_prompt(const GuiPage& page, NodeId id,
                              const PromptOptions& options = default_prompt_options(),
                              std::string page_ref = {});

}  // namespace uitext
