#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "uitext/context.hpp"

namespace uitext {

enum class InputCategory { Identity, Geography, Numeric, Query, Comment, Unknown };

// Lowercase label: "identity", ..., "unknown".
std::string_view to_string(InputCategory category);
std::optional<InputCategory> parse_category(std::string_view label);

// The five concrete categories in their canonical listing order.
const std::vector<InputCategory>& canonical_category_order();

struct Glossary {
  InputCategory category = InputCategory::Unknown;
  std::unordered_set<std::string> keywords;
};

// Parses the sectioned glossary format. A document must define all five
// sections, or exactly one section which then overrides that category of
// `defaults`. Throws Error{MalformedGlossary}.
std::vector<Glossary> parse_glossaries(std::string_view document,
                                       const std::vector<Glossary>* defaults = nullptr);

// Built-in glossaries when `path` is empty. Throws Error{GlossaryMissing}
// for unreadable files.
std::vector<Glossary> load_glossaries(const std::string& path = {});

// Keyword-matching classifier over activity name, app name and widget info.
// Each token that appears in a glossary scores one hit for that category;
// the highest score wins and equal scores fall to the earlier category.
class Taxonomy {
 public:
  Taxonomy();
  explicit Taxonomy(std::vector<Glossary> glossaries,
                    std::vector<InputCategory> order = canonical_category_order());

  InputCategory classify(const GlobalContext& global_ctx, const WidgetInfo* info = nullptr) const;

  const std::vector<Glossary>& glossaries() const { return glossaries_; }
  const std::vector<InputCategory>& order() const { return order_; }

 private:
  std::vector<Glossary> glossaries_;
  std::vector<InputCategory> order_;
};

}  // namespace uitext
