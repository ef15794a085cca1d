#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uitext {

using NodeId = std::size_t;

// Pixel rectangle of a widget on screen.
struct Bounds {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  // Validated constructor; throws Error{BoundsError}.
  static Bounds make(long long left, long long top, long long right, long long bottom);

  int width() const { return right - left; }
  int height() const { return bottom - top; }
  // Twice the vertical center, kept integral so comparisons stay symmetric.
  int center_y2() const { return top + bottom; }

  bool operator==(const Bounds&) const = default;
};

struct ViewNode {
  std::string widget_class;
  std::optional<std::string> resource_id;
  std::optional<std::string> text;
  std::optional<std::string> hint_text;
  Bounds bounds;
  std::vector<ViewNode> children;
  NodeId node_id = 0;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const ViewNode&) const = default;
};

enum class SourceFormat { RicoJson, UiAutomatorXml };

std::string_view to_string(SourceFormat format);

inline constexpr std::string_view kUnknownName = "unknown";

// An immutable parsed view hierarchy. Copies share the underlying tree.
class GuiPage {
 public:
  // Assigns pre-order node ids to the tree; blank names become "unknown".
  GuiPage(std::string app_name, std::string activity_name, ViewNode root, SourceFormat format);

  const std::string& app_name() const { return app_name_; }
  const std::string& activity_name() const { return activity_name_; }
  SourceFormat source_format() const { return format_; }
  const ViewNode& root() const { return tree_->root; }

  std::size_t size() const { return tree_->index.size(); }
  bool contains(NodeId id) const { return id < size(); }

  // Throws Error{UnknownNode}.
  const ViewNode& node(NodeId id) const;
  std::optional<NodeId> parent(NodeId id) const;

  // Nodes in pre-order (index == node_id).
  std::span<const ViewNode* const> nodes() const { return tree_->index; }

  // True when `ancestor` lies on the path from the root to `id` (exclusive).
  bool is_ancestor(NodeId ancestor, NodeId id) const;

  // Copy of the page with every text or hint equal to one of `values`
  // (after trimming) removed. Node ids are unchanged.
  GuiPage redacted(std::span<const std::string> values) const;

  bool operator==(const GuiPage& other) const;

 private:
  struct Tree {
    ViewNode root;
    std::vector<const ViewNode*> index;
    std::vector<std::optional<NodeId>> parents;
  };

  std::string app_name_;
  std::string activity_name_;
  SourceFormat format_;
  std::shared_ptr<const Tree> tree_;
};

// Default input-widget class keywords.
const std::vector<std::string>& default_input_keywords();

inline constexpr int kDefaultRowTolerance = 10;

GuiPage parse_rico_json(std::string_view bytes);
GuiPage parse_uiautomator_xml(std::string_view bytes);

// Dispatches on extension (.xml -> UIAutomator, otherwise Rico JSON).
GuiPage load_page(const std::string& path);

// Pre-order ids of nodes whose class contains an input keyword or that carry a
// non-blank hint.
std::vector<NodeId> find_input_widgets(const GuiPage& page,
                                       std::span<const std::string> keywords = default_input_keywords());

// Other nodes whose vertical center lies within `tolerance` px of the target's,
// ordered by left edge then node id. Throws Error{UnknownNode}.
std::vector<NodeId> nodes_on_same_row(const GuiPage& page, NodeId id,
                                      int tolerance = kDefaultRowTolerance);

}  // namespace uitext
