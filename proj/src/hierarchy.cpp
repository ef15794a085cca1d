#include "uitext/hierarchy.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include <json.hpp>

#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

using nlohmann::json;

Bounds Bounds::make(long long left, long long top, long long right, long long bottom) {
  constexpr long long kMax = 1'000'000'000;
  if (left < 0 || top < 0 || right < 0 || bottom < 0 || left > kMax || top > kMax ||
      right > kMax || bottom > kMax) {
    throw Error(ErrorKind::BoundsError, "coordinates must be non-negative");
  }
  if (left > right || top > bottom) {
    throw Error(ErrorKind::BoundsError, "inverted bounds [" + std::to_string(left) + "," +
                                            std::to_string(top) + "][" + std::to_string(right) +
                                            "," + std::to_string(bottom) + "]");
  }
  return Bounds{static_cast<int>(left), static_cast<int>(top), static_cast<int>(right),
                static_cast<int>(bottom)};
}

std::string_view to_string(SourceFormat format) {
  return format == SourceFormat::RicoJson ? "rico_json" : "uiautomator_xml";
}

namespace {

std::string name_or_unknown(std::string s) {
  s = text::trim(s);
  return s.empty() ? std::string(kUnknownName) : s;
}

}  // namespace

GuiPage::GuiPage(std::string app_name, std::string activity_name, ViewNode root, SourceFormat format)
    : app_name_(name_or_unknown(std::move(app_name))),
      activity_name_(name_or_unknown(std::move(activity_name))),
      format_(format) {
  auto tree = std::make_shared<Tree>();
  tree->root = std::move(root);
  std::function<void(ViewNode&, std::optional<NodeId>)> visit = [&](ViewNode& n,
                                                                     std::optional<NodeId> parent) {
    n.node_id = tree->index.size();
    tree->index.push_back(&n);
    tree->parents.push_back(parent);
    for (auto& child : n.children) visit(child, n.node_id);
  };
  visit(tree->root, std::nullopt);
  tree_ = std::move(tree);
}

const ViewNode& GuiPage::node(NodeId id) const {
  if (!contains(id)) throw Error(ErrorKind::UnknownNode, "node " + std::to_string(id));
  return *tree_->index[id];
}

std::optional<NodeId> GuiPage::parent(NodeId id) const {
  if (!contains(id)) throw Error(ErrorKind::UnknownNode, "node " + std::to_string(id));
  return tree_->parents[id];
}

bool GuiPage::is_ancestor(NodeId ancestor, NodeId id) const {
  for (auto p = parent(id); p; p = tree_->parents[*p]) {
    if (*p == ancestor) return true;
  }
  return false;
}

GuiPage GuiPage::redacted(std::span<const std::string> values) const {
  auto matches = [&](const std::optional<std::string>& s) {
    return s && std::any_of(values.begin(), values.end(),
                            [&](const std::string& v) { return text::trim(*s) == text::trim(v); });
  };
  std::function<ViewNode(const ViewNode&)> copy = [&](const ViewNode& n) {
    ViewNode out = n;
    out.children.clear();
    if (matches(out.text)) out.text.reset();
    if (matches(out.hint_text)) out.hint_text.reset();
    for (const auto& child : n.children) out.children.push_back(copy(child));
    return out;
  };
  return GuiPage(app_name_, activity_name_, copy(tree_->root), format_);
}

bool GuiPage::operator==(const GuiPage& other) const {
  return app_name_ == other.app_name_ && activity_name_ == other.activity_name_ &&
         format_ == other.format_ && tree_->root == other.tree_->root;
}

const std::vector<std::string>& default_input_keywords() {
  static const std::vector<std::string> kKeywords = {
      "EditText", "AutoCompleteTextView", "MultiAutoCompleteTextView", "SearchView",
      "TextInputEditText"};
  return kKeywords;
}

// --- Rico JSON -------------------------------------------------------------

namespace {

std::optional<std::string> optional_string(const json& obj, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) continue;
    if (!it->is_string()) throw Error(ErrorKind::MalformedInput, std::string("field ") + key + " is not a string");
    auto value = it->get<std::string>();
    // Empty attributes carry no information; both formats treat them as absent.
    if (value.empty()) continue;
    return value;
  }
  return std::nullopt;
}

Bounds rico_bounds(const json& obj) {
  auto it = obj.find("bounds");
  if (it == obj.end() || it->is_null()) return Bounds{};
  if (!it->is_array() || it->size() != 4) throw Error(ErrorKind::BoundsError, "bounds must be 4 integers");
  long long v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& e = (*it)[i];
    if (!e.is_number_integer()) throw Error(ErrorKind::BoundsError, "bounds must be 4 integers");
    v[i] = e.get<long long>();
  }
  return Bounds::make(v[0], v[1], v[2], v[3]);
}

ViewNode rico_node(const json& obj, int depth) {
  if (depth > 512) throw Error(ErrorKind::MalformedInput, "hierarchy too deep");
  ViewNode node;
  if (auto cls = optional_string(obj, {"class"})) node.widget_class = *cls;
  node.resource_id = optional_string(obj, {"resource-id", "resource_id", "resourceId"});
  node.text = optional_string(obj, {"text"});
  node.hint_text = optional_string(obj, {"hint-text", "hintText", "hint_text", "hint"});
  node.bounds = rico_bounds(obj);
  if (auto it = obj.find("children"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) throw Error(ErrorKind::MalformedInput, "children must be an array");
    for (const auto& child : *it) {
      // Rico dumps contain null placeholders for pruned children.
      if (child.is_null()) continue;
      if (!child.is_object()) throw Error(ErrorKind::MalformedInput, "child is not an object");
      node.children.push_back(rico_node(child, depth + 1));
    }
  }
  return node;
}

bool looks_like_node(const json& obj) {
  return obj.contains("class") || obj.contains("children") || obj.contains("bounds");
}

// "com.pkg/com.pkg.MainActivity" -> "com.pkg"
std::string package_prefix(const std::string& activity) {
  const auto slash = activity.find('/');
  if (slash == std::string::npos || slash == 0) return {};
  return activity.substr(0, slash);
}

}  // namespace

GuiPage parse_rico_json(std::string_view bytes) {
  json doc = json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorKind::MalformedInput, "not valid JSON");
  if (!doc.is_object()) throw Error(ErrorKind::MalformedInput, "top level is not an object");

  const json* root = nullptr;
  if (auto it = doc.find("activity"); it != doc.end() && it->is_object() && it->contains("root")) {
    root = &(*it)["root"];
  } else if (auto it2 = doc.find("root"); it2 != doc.end()) {
    root = &*it2;
  } else if (looks_like_node(doc)) {
    root = &doc;
  }
  if (!root || !root->is_object()) throw Error(ErrorKind::MalformedInput, "no root node object");

  std::string activity = optional_string(doc, {"activity_name"}).value_or("");
  std::string app = optional_string(doc, {"app_name"}).value_or("");
  if (text::is_blank(app)) app = package_prefix(activity);
  return GuiPage(app, activity, rico_node(*root, 0), SourceFormat::RicoJson);
}

GuiPage load_page(const std::string& path) {
  const std::string bytes = text::read_file(path);
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : text::to_lower(path.substr(dot));
  return ext == ".xml" ? parse_uiautomator_xml(bytes) : parse_rico_json(bytes);
}

// --- queries ---------------------------------------------------------------

std::vector<NodeId> find_input_widgets(const GuiPage& page, std::span<const std::string> keywords) {
  std::vector<NodeId> out;
  for (const ViewNode* n : page.nodes()) {
    const bool keyword = std::any_of(keywords.begin(), keywords.end(), [&](const std::string& k) {
      return !k.empty() && text::contains(n->widget_class, k);
    });
    if (keyword || text::has_content(n->hint_text)) out.push_back(n->node_id);
  }
  return out;
}

std::vector<NodeId> nodes_on_same_row(const GuiPage& page, NodeId id, int tolerance) {
  const ViewNode& target = page.node(id);
  std::vector<NodeId> out;
  for (const ViewNode* n : page.nodes()) {
    if (n->node_id == id) continue;
    if (std::abs(n->bounds.center_y2() - target.bounds.center_y2()) <= 2 * tolerance) {
      out.push_back(n->node_id);
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
    const int la = page.node(a).bounds.left;
    const int lb = page.node(b).bounds.left;
    return la != lb ? la < lb : a < b;
  });
  return out;
}

}  // namespace uitext
