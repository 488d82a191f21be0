#include "rcanav/render.hpp"

#include <algorithm>
#include <sstream>

namespace rcanav {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string quoted(const std::string& s) { return "\"" + dot_escape(s) + "\""; }

}  // namespace

std::string display(const Attribute& attribute, const RelationalContextFamily& rcf,
                    NameRegistry& registry) {
  if (attribute.is_intrinsic()) return attribute.name();
  const auto& r = attribute.relational();
  const auto& target = rcf.relation(r.relation).target();
  return std::string(symbol(r.op)) + " " + r.relation + ".(" +
         registry.name(target, r.target_extent) + ")";
}

json concept_json(const Concept& c, const RelationalContextFamily& rcf,
                  NameRegistry& registry) {
  json out;
  out["name"] = registry.name(c.home, c.extent);
  out["context"] = c.home;
  out["extent"] = rcf.context(c.home).names_of(c.extent);
  json intent = json::array();
  for (const auto& a : c.intent) {
    if (a.is_intrinsic()) {
      intent.push_back({{"kind", "intrinsic"}, {"name", a.name()}});
      continue;
    }
    const auto& r = a.relational();
    const auto& target = rcf.relation(r.relation).target();
    intent.push_back({{"kind", "relational"},
                      {"display", display(a, rcf, registry)},
                      {"operator", std::string(symbol(r.op))},
                      {"relation", r.relation},
                      {"target",
                       {{"context", target},
                        {"name", registry.name(target, r.target_extent)},
                        {"extent", rcf.context(target).names_of(r.target_extent)}}}});
  }
  out["intent"] = std::move(intent);
  return out;
}

json neighborhood_json(const Neighborhood& n, const RelationalContextFamily& rcf,
                       NameRegistry& registry) {
  json out;
  out["context"] = n.focus.home;
  out["focus"] = concept_json(n.focus, rcf, registry);
  out["upper"] = json::array();
  for (const auto& c : n.upper) out["upper"].push_back(concept_json(c, rcf, registry));
  out["lower"] = json::array();
  for (const auto& c : n.lower) out["lower"].push_back(concept_json(c, rcf, registry));
  out["relational"] = json::array();
  for (const auto& r : n.relational) {
    out["relational"].push_back({{"relation", r.relation},
                                 {"operator", std::string(symbol(r.op))},
                                 {"concept", concept_json(r.target, rcf, registry)}});
  }
  return out;
}

std::string export_neighborhood_dot(const Neighborhood& n, const RelationalContextFamily& rcf,
                                    NameRegistry& registry) {
  auto label = [&](const Concept& c) {
    auto names = rcf.context(c.home).names_of(c.extent);
    return registry.name(c.home, c.extent) + "\\n{" + dot_escape(join(names)) + "}";
  };
  auto focus = registry.name(n.focus.home, n.focus.extent);

  std::ostringstream out;
  out << "digraph neighborhood {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  out << "  " << quoted(focus) << " [label=\"" << label(n.focus) << "\", style=bold];\n";
  for (const auto& c : n.upper) {
    out << "  " << quoted(registry.name(c.home, c.extent)) << " [label=\"" << label(c) << "\"];\n";
  }
  for (const auto& c : n.lower) {
    out << "  " << quoted(registry.name(c.home, c.extent)) << " [label=\"" << label(c) << "\"];\n";
  }
  std::vector<std::string> declared;
  for (const auto& r : n.relational) {
    auto name = registry.name(r.target.home, r.target.extent);
    if (std::find(declared.begin(), declared.end(), name) != declared.end()) continue;
    declared.push_back(name);
    out << "  " << quoted(name) << " [label=\"" << label(r.target) << "\", shape=ellipse];\n";
  }
  for (const auto& c : n.lower) {
    out << "  " << quoted(registry.name(c.home, c.extent)) << " -> " << quoted(focus) << ";\n";
  }
  for (const auto& c : n.upper) {
    out << "  " << quoted(focus) << " -> " << quoted(registry.name(c.home, c.extent)) << ";\n";
  }
  for (const auto& r : n.relational) {
    out << "  " << quoted(focus) << " -> " << quoted(registry.name(r.target.home, r.target.extent))
        << " [style=dashed, label=" << quoted(std::string(symbol(r.op)) + " " + r.relation)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string render_table(const Neighborhood& n, const RelationalContextFamily& rcf,
                         NameRegistry& registry) {
  std::ostringstream out;
  auto describe = [&](const Concept& c, const char* indent) {
    std::vector<std::string> intent;
    for (const auto& a : c.intent) intent.push_back(display(a, rcf, registry));
    out << indent << "extent: {" << join(rcf.context(c.home).names_of(c.extent)) << "}\n";
    out << indent << "intent: {" << join(intent) << "}\n";
  };
  out << "focus " << registry.name(n.focus.home, n.focus.extent) << " in " << n.focus.home << "\n";
  describe(n.focus, "  ");
  out << "upper covers (" << n.upper.size() << ")\n";
  for (const auto& c : n.upper) {
    out << "  " << registry.name(c.home, c.extent) << "\n";
    describe(c, "    ");
  }
  out << "lower covers (" << n.lower.size() << ")\n";
  for (const auto& c : n.lower) {
    out << "  " << registry.name(c.home, c.extent) << "\n";
    describe(c, "    ");
  }
  out << "relational covers (" << n.relational.size() << ")\n";
  for (const auto& r : n.relational) {
    out << "  " << symbol(r.op) << " " << r.relation << " -> "
        << registry.name(r.target.home, r.target.extent) << " in " << r.target.home << "\n";
    describe(r.target, "    ");
  }
  return out.str();
}

}  // namespace rcanav
