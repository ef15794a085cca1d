#include "uitext/taxonomy.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "uitext/errors.hpp"
#include "uitext/nlp.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

std::string_view to_string(InputCategory category) {
  switch (category) {
    case InputCategory::Identity: return "identity";
    case InputCategory::Geography: return "geography";
    case InputCategory::Numeric: return "numeric";
    case InputCategory::Query: return "query";
    case InputCategory::Comment: return "comment";
    case InputCategory::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<InputCategory> parse_category(std::string_view label) {
  const std::string lower = text::to_lower(text::trim(label));
  for (auto c : {InputCategory::Identity, InputCategory::Geography, InputCategory::Numeric,
                 InputCategory::Query, InputCategory::Comment, InputCategory::Unknown}) {
    if (lower == to_string(c)) return c;
  }
  return std::nullopt;
}

const std::vector<InputCategory>& canonical_category_order() {
  static const std::vector<InputCategory> kOrder = {InputCategory::Identity, InputCategory::Geography,
                                                    InputCategory::Numeric, InputCategory::Query,
                                                    InputCategory::Comment};
  return kOrder;
}

std::vector<Glossary> parse_glossaries(std::string_view document, const std::vector<Glossary>* defaults) {
  std::map<InputCategory, Glossary> sections;
  std::optional<InputCategory> current;
  std::istringstream in{std::string(document)};
  std::string line;
  int line_no = 0;
  auto malformed = [&](const std::string& why) {
    return Error(ErrorKind::MalformedGlossary, "line " + std::to_string(line_no) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw malformed("unterminated section header");
      auto cat = parse_category(line.substr(1, line.size() - 2));
      if (!cat || *cat == InputCategory::Unknown) throw malformed("unknown section " + line);
      if (sections.contains(*cat)) throw malformed("duplicate section " + line);
      sections[*cat].category = *cat;
      current = cat;
      continue;
    }
    if (!current) throw malformed("keyword outside of a section");
    sections[*current].keywords.insert(text::to_lower(line));
  }

  for (const auto& [cat, g] : sections) {
    if (g.keywords.empty()) {
      throw Error(ErrorKind::MalformedGlossary, "section [" + std::string(to_string(cat)) + "] is empty");
    }
  }

  const std::size_t total = canonical_category_order().size();
  if (sections.size() == 1 && defaults) {
    std::vector<Glossary> merged = *defaults;
    for (auto& g : merged) {
      if (auto it = sections.find(g.category); it != sections.end()) g = it->second;
    }
    return merged;
  }
  if (sections.size() != total) {
    throw Error(ErrorKind::MalformedGlossary,
                "expected " + std::to_string(total) + " sections or a single override, found " +
                    std::to_string(sections.size()));
  }
  std::vector<Glossary> out;
  for (auto cat : canonical_category_order()) out.push_back(std::move(sections[cat]));
  return out;
}

namespace {

const std::vector<Glossary>& builtin_glossaries() {
  static const auto kBuiltin = parse_glossaries(text::embedded_resource("glossary.txt"));
  return kBuiltin;
}

}  // namespace

std::vector<Glossary> load_glossaries(const std::string& path) {
  if (path.empty()) return builtin_glossaries();
  std::string doc;
  try {
    if (!std::filesystem::is_regular_file(path)) throw Error(ErrorKind::IoError, path);
    doc = text::read_file(path);
  } catch (const Error&) {
    throw Error(ErrorKind::GlossaryMissing, "cannot read glossary file " + path);
  }
  return parse_glossaries(doc, &builtin_glossaries());
}

Taxonomy::Taxonomy() : Taxonomy(load_glossaries()) {}

Taxonomy::Taxonomy(std::vector<Glossary> glossaries, std::vector<InputCategory> order)
    : glossaries_(std::move(glossaries)), order_(std::move(order)) {}

InputCategory Taxonomy::classify(const GlobalContext& global_ctx, const WidgetInfo* info) const {
  std::vector<std::string> tokens = nlp::tokenize(global_ctx.activity_name);
  for (auto& t : nlp::tokenize(global_ctx.app_name)) tokens.push_back(std::move(t));
  if (info) {
    for (auto& t : nlp::tokenize(info->raw)) tokens.push_back(std::move(t));
  }

  InputCategory best = InputCategory::Unknown;
  std::size_t best_hits = 0;
  for (InputCategory cat : order_) {
    auto it = std::find_if(glossaries_.begin(), glossaries_.end(),
                           [&](const Glossary& g) { return g.category == cat; });
    if (it == glossaries_.end()) continue;
    const auto hits = static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), [&](const std::string& t) {
      if (it->keywords.contains(t)) return true;
      // "flights" counts for "flight"
      return t.size() > 3 && t.back() == 's' && it->keywords.contains(t.substr(0, t.size() - 1));
    }));
    if (hits > best_hits) {
      best = cat;
      best_hits = hits;
    }
  }
  return best;
}

}  // namespace uitext
