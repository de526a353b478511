#include "broadgen/graph.hpp"

#include <optional>
#include <tuple>

#include "broadgen/encodings.hpp"
#include "broadgen/error.hpp"
#include "broadgen/terms.hpp"

namespace broadgen {

namespace {

std::string add_node(Graph& g, std::string label) {
  std::string id = "n" + std::to_string(g.nodes.size());
  g.nodes.push_back({id, std::move(label)});
  return id;
}

std::string add_term(Graph& g, HfSet t) {
  auto parts = split_term(t);
  if (!parts) throw DomainError("not a term: " + thing_to_text(t));
  std::string id = add_node(g, thing_to_text(parts->first));
  for (const auto& [k, sub] : parts->second) {
    std::string child = add_term(g, sub);
    g.edges.push_back({id, child, thing_to_text(k), Dimension::horizontal});
  }
  return id;
}

// Shared by both kinds of broad number: split yields (x, label, [a_k]) or
// nothing for the leaf.
template <class Split>
std::string add_broad(Graph& g, HfSet w, const std::string& leaf, const Split& split) {
  if (w.empty()) return add_node(g, leaf);
  auto parts = split(w);
  if (!parts) throw DomainError("not a broad number: " + thing_to_text(w));
  auto& [x, label, a] = *parts;
  std::string id = add_node(g, label);
  std::string back = add_broad(g, x, leaf, split);
  g.edges.push_back({id, back, "", Dimension::depth});
  std::string above;
  for (const auto& [k, sub] : a) {
    std::string child = add_broad(g, sub, leaf, split);
    g.edges.push_back({id, child, thing_to_text(k), Dimension::horizontal});
    if (!above.empty()) g.edges.push_back({above, child, "", Dimension::vertical});
    above = child;
  }
  return id;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::horizontal:
      return "horizontal";
    case Dimension::vertical:
      return "vertical";
    case Dimension::depth:
      return "depth";
  }
  return "";
}

Graph term_graph(HfSet t) {
  Graph g;
  add_term(g, t);
  return g;
}

Graph broad_graph(HfSet w) {
  Graph g;
  add_broad(g, w, "Start", [](HfSet v) -> std::optional<std::tuple<HfSet, std::string, Tuple>> {
    Decoded d = classify(v, Group::broad);
    if (d.tag != Tag::build) return std::nullopt;
    auto a = decode_tuple(d.args[2]);
    if (!a) return std::nullopt;
    return std::tuple{d.args[0], thing_to_text(d.args[1]), *a};
  });
  return g;
}

Graph reduced_graph(HfSet w) {
  Graph g;
  add_broad(g, w, "Begin", [](HfSet v) -> std::optional<std::tuple<HfSet, std::string, Tuple>> {
    Decoded d = classify(v, Group::reduced);
    if (d.tag != Tag::make) return std::nullopt;
    auto a = decode_tuple(d.args[1]);
    if (!a) return std::nullopt;
    return std::tuple{d.args[0], std::string("Make"), *a};
  });
  return g;
}

std::string to_dot(const Graph& g) {
  std::string out = "digraph {\n  rankdir=LR;\n  node [shape=plaintext];\n  edge [arrowhead=none];\n";
  for (const auto& n : g.nodes) out += "  " + n.id + " [label=" + quote(n.label) + "];\n";
  for (const auto& e : g.edges) {
    std::string attrs = "comment=" + quote(std::string(dimension_name(e.dimension)));
    if (!e.label.empty()) attrs += ", label=" + quote(e.label);
    if (e.dimension == Dimension::depth) attrs += ", style=dashed";
    if (e.dimension == Dimension::vertical) attrs += ", style=dotted, constraint=false";
    out += "  " + e.from + " -> " + e.to + " [" + attrs + "];\n";
  }
  return out + "}\n";
}

}  // namespace broadgen
