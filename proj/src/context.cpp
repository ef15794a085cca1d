#include "uitext/context.hpp"

#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

std::string_view to_string(InfoSource source) {
  switch (source) {
    case InfoSource::HintText: return "hint_text";
    case InfoSource::ResourceId: return "resource_id";
    case InfoSource::Text: return "text";
  }
  return "text";
}

namespace {

// The "text" or "resource-id" field, whichever is non-blank first.
std::optional<std::string> node_label(const ViewNode& n) {
  if (text::has_content(n.text)) return text::trim(*n.text);
  if (text::has_content(n.resource_id)) return text::trim(*n.resource_id);
  return std::nullopt;
}

void collect_leaves(const ViewNode& n, std::vector<const ViewNode*>& out) {
  for (const auto& child : n.children) {
    if (child.is_leaf()) {
      out.push_back(&child);
    } else {
      collect_leaves(child, out);
    }
  }
}

}  // namespace

WidgetInfo widget_info(const GuiPage& page, NodeId id) {
  const ViewNode& n = page.node(id);
  if (text::has_content(n.hint_text)) return {InfoSource::HintText, text::trim(*n.hint_text)};
  if (text::has_content(n.resource_id)) return {InfoSource::ResourceId, text::trim(*n.resource_id)};
  if (text::has_content(n.text)) return {InfoSource::Text, text::trim(*n.text)};
  throw Error(ErrorKind::NoInformation, "node " + std::to_string(id) + " has no hint, id or text");
}

LocalContext local_context(const GuiPage& page, NodeId id, const ContextOptions& options) {
  const ViewNode& target = page.node(id);
  LocalContext ctx;

  int depth = 0;
  for (auto p = page.parent(id); p && depth < options.parent_depth; p = page.parent(*p), ++depth) {
    if (auto label = node_label(page.node(*p))) ctx.parent_texts.push_back(*label);
  }

  std::vector<const ViewNode*> leaves;
  collect_leaves(target, leaves);
  for (const ViewNode* leaf : leaves) {
    if (ctx.leaf_texts.size() >= options.leaf_limit) break;
    if (auto label = node_label(*leaf)) ctx.leaf_texts.push_back(*label);
  }

  // Containers on the row repeat what the parent and leaf sources already
  // cover, so only unrelated leaves count as row neighbours.
  for (NodeId other : nodes_on_same_row(page, id, options.row_tolerance)) {
    const ViewNode& n = page.node(other);
    if (!n.is_leaf() || page.is_ancestor(id, other) || page.is_ancestor(other, id)) continue;
    if (auto label = node_label(n)) ctx.same_row_texts.push_back(*label);
  }

  for (auto p = page.parent(id); p; p = page.parent(*p)) {
    const ViewNode& n = page.node(*p);
    if (text::contains(n.widget_class, "Fragment")) {
      if (text::has_content(n.resource_id)) ctx.fragment_hint = text::trim(*n.resource_id);
      break;
    }
  }

  std::vector<std::string> parts;
  for (const auto* source : {&ctx.parent_texts, &ctx.leaf_texts, &ctx.same_row_texts}) {
    parts.insert(parts.end(), source->begin(), source->end());
  }
  if (ctx.fragment_hint) parts.push_back(*ctx.fragment_hint);
  ctx.combined = text::join(parts, kContextSeparator);
  return ctx;
}

GlobalContext global_context(const GuiPage& page, const ContextOptions& options) {
  return GlobalContext{page.app_name(), page.activity_name(),
                       find_input_widgets(page, options.input_keywords).size()};
}

WidgetContext extract_context(const GuiPage& page, NodeId id, const ContextOptions& options) {
  WidgetContext ctx;
  ctx.widget_id = id;
  try {
    ctx.info = widget_info(page, id);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoInformation) throw;
  }
  ctx.local = local_context(page, id, options);
  ctx.global_ctx = global_context(page, options);
  return ctx;
}

std::vector<WidgetContext> extract_all(const GuiPage& page, const ContextOptions& options) {
  std::vector<WidgetContext> out;
  for (NodeId id : find_input_widgets(page, options.input_keywords)) {
    out.push_back(extract_context(page, id, options));
  }
  return out;
}

}  // namespace uitext
