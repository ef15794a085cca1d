#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uitext/hierarchy.hpp"

namespace uitext {

enum class InfoSource { HintText, ResourceId, Text };

std::string_view to_string(InfoSource source);

// What the widget says about itself.
struct WidgetInfo {
  InfoSource source_field = InfoSource::HintText;
  std::string raw;

  bool operator==(const WidgetInfo&) const = default;
};

// Text gathered around the widget.
struct LocalContext {
  std::vector<std::string> parent_texts;
  std::vector<std::string> leaf_texts;
  std::vector<std::string> same_row_texts;
  std::optional<std::string> fragment_hint;
  std::string combined;

  bool empty() const { return combined.empty(); }
  bool operator==(const LocalContext&) const = default;
};

struct GlobalContext {
  std::string app_name;
  std::string activity_name;
  std::size_t input_widget_count = 0;

  bool operator==(const GlobalContext&) const = default;
};

struct WidgetContext {
  NodeId widget_id = 0;
  std::optional<WidgetInfo> info;  // absent when the widget carries no information
  LocalContext local;
  GlobalContext global_ctx;
};

struct ContextOptions {
  int row_tolerance = kDefaultRowTolerance;
  int parent_depth = 3;
  std::size_t leaf_limit = 5;
  std::vector<std::string> input_keywords = default_input_keywords();
};

inline constexpr std::string_view kContextSeparator = ", ";

// First non-blank of hint, resource id and text. Throws Error{NoInformation}
// or Error{UnknownNode}.
WidgetInfo widget_info(const GuiPage& page, NodeId id);

LocalContext local_context(const GuiPage& page, NodeId id, const ContextOptions& options = {});

GlobalContext global_context(const GuiPage& page, const ContextOptions& options = {});

// All three layers for one node. The node need not be an input widget, which
// lets the tuning extractors describe labels next to spinners.
WidgetContext extract_context(const GuiPage& page, NodeId id, const ContextOptions& options = {});

// Contexts for every input widget in pre-order.
std::vector<WidgetContext> extract_all(const GuiPage& page, const ContextOptions& options = {});

}  // namespace uitext
