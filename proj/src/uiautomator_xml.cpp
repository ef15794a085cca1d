#include <expat.h>

#include <memory>
#include <regex>
#include <string>
#include <unordered_map>
#include <vector>

#include "uitext/errors.hpp"
#include "uitext/hierarchy.hpp"
#include "uitext/text_util.hpp"

namespace uitext {
namespace {

Bounds parse_bounds_attr(const std::string& s) {
  static const std::regex kBounds(R"(^\[(\d{1,9}),(\d{1,9})\]\[(\d{1,9}),(\d{1,9})\]$)");
  std::smatch m;
  if (!std::regex_match(s, m, kBounds)) {
    throw Error(ErrorKind::BoundsError, "bounds '" + s + "' does not match [l,t][r,b]");
  }
  return Bounds::make(std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]), std::stoll(m[4]));
}

using Attributes = std::unordered_map<std::string, std::string>;

std::optional<std::string> non_empty(const Attributes& attrs, const char* key) {
  auto it = attrs.find(key);
  if (it == attrs.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

ViewNode node_from_attributes(const Attributes& attrs) {
  ViewNode node;
  if (auto cls = non_empty(attrs, "class")) node.widget_class = *cls;
  node.resource_id = non_empty(attrs, "resource-id");
  node.text = non_empty(attrs, "text");
  node.hint_text = non_empty(attrs, "hint");
  // UIAutomator shows an empty EditText's hint in its text attribute.
  if (text::contains(node.widget_class, "EditText") && node.text) {
    if (!node.hint_text) node.hint_text = node.text;
    node.text.reset();
  }
  if (auto b = attrs.find("bounds"); b != attrs.end()) node.bounds = parse_bounds_attr(b->second);
  return node;
}

struct ParseState {
  std::vector<ViewNode> stack;
  std::vector<ViewNode> roots;
  std::string app_name;
  std::string activity_name;
  bool saw_hierarchy = false;
  std::unique_ptr<Error> error;
  XML_Parser parser = nullptr;

  void fail(Error e) {
    if (!error) error = std::make_unique<Error>(std::move(e));
    XML_StopParser(parser, XML_FALSE);
  }
};

Attributes collect(const XML_Char** atts) {
  Attributes out;
  for (std::size_t i = 0; atts[i]; i += 2) out.emplace(atts[i], atts[i + 1]);
  return out;
}

void on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  auto* st = static_cast<ParseState*>(user);
  const std::string tag = name;
  try {
    if (tag == "hierarchy") {
      st->saw_hierarchy = true;
      const auto attrs = collect(atts);
      if (auto a = non_empty(attrs, "app")) st->app_name = *a;
      if (auto a = non_empty(attrs, "activity")) st->activity_name = *a;
      return;
    }
    if (tag != "node") return;
    const auto attrs = collect(atts);
    if (st->app_name.empty()) {
      if (auto pkg = non_empty(attrs, "package")) st->app_name = *pkg;
    }
    st->stack.push_back(node_from_attributes(attrs));
  } catch (const Error& e) {
    st->fail(e);
  }
}

void on_end(void* user, const XML_Char* name) {
  auto* st = static_cast<ParseState*>(user);
  if (std::string(name) != "node" || st->stack.empty()) return;
  ViewNode done = std::move(st->stack.back());
  st->stack.pop_back();
  if (st->stack.empty()) {
    st->roots.push_back(std::move(done));
  } else {
    st->stack.back().children.push_back(std::move(done));
  }
}

}  // namespace

GuiPage parse_uiautomator_xml(std::string_view bytes) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(ErrorKind::MalformedInput, "cannot create XML parser");

  ParseState state;
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);

  const auto status = XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (state.error) throw *state.error;
  if (status != XML_STATUS_OK) {
    throw Error(ErrorKind::MalformedInput,
                std::string("XML error: ") + XML_ErrorString(XML_GetErrorCode(parser.get())) +
                    " at line " + std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  if (state.roots.empty()) throw Error(ErrorKind::MalformedInput, "no node elements");

  ViewNode root;
  if (state.roots.size() == 1) {
    root = std::move(state.roots.front());
  } else {
    // Several top-level windows: hang them under a synthetic hierarchy node.
    root.widget_class = "hierarchy";
    root.children = std::move(state.roots);
  }
  return GuiPage(state.app_name, state.activity_name, std::move(root), SourceFormat::UiAutomatorXml);
}

}  // namespace uitext
