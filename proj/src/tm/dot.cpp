#include "netmon/tm/dot.hpp"

#include <sstream>

#include "netmon/errors.hpp"

namespace netmon::tm {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string node_id(ElementId id) { return "n" + std::to_string(id); }

void emit_thimac(const StaticModel& m, ElementId thimac, int depth, std::ostringstream& os) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const Thimac& t = m.thimac_of(thimac);
  os << pad << "subgraph cluster_" << t.id << " {\n";
  os << pad << "  label=\"" << escape(t.name) << "\";\n";
  for (const Stage& s : m.stages) {
    if (s.owner != thimac) continue;
    std::string label = std::string(to_string(s.kind));
    if (s.anchor) label += " (" + std::to_string(*s.anchor) + ")";
    label += "\\n" + escape(s.label);
    os << pad << "  " << node_id(s.id) << " [shape=box, label=\"" << label << "\"];\n";
  }
  for (const Storage& s : m.storages) {
    if (s.owner != thimac) continue;
    os << pad << "  " << node_id(s.id) << " [shape=cylinder, label=\"" << escape(s.name)
       << "\"];\n";
  }
  for (const Thimac& child : m.thimacs) {
    if (child.parent && *child.parent == thimac) emit_thimac(m, child.id, depth + 1, os);
  }
  os << pad << "}\n";
}

}  // namespace

std::string export_dot(const StaticModel& model) {
  auto violations = validate_model(model);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "refusing to render a model with " << violations.size() << " violation(s):";
    for (const Violation& v : violations) msg << "\n  [" << v.code << "] " << v.message;
    throw ModelError(msg.str());
  }

  std::ostringstream os;
  os << "digraph \"" << escape(model.name) << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [fontsize=10];\n";
  for (const Thimac& t : model.thimacs) {
    if (!t.parent) emit_thimac(model, t.id, 1, os);
  }
  for (const Arrow& a : model.arrows) {
    os << "  " << node_id(a.from) << " -> " << node_id(a.to);
    std::vector<std::string> attrs;
    if (a.kind == ArrowKind::Trigger) attrs.push_back("style=dashed");
    if (a.anchor) attrs.push_back("label=\"(" + std::to_string(*a.anchor) + ")\"");
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i) os << ", ";
        os << attrs[i];
      }
      os << "]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace netmon::tm
