#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "broadgen/hfset.hpp"

namespace broadgen {

// Tree drawings. Shared subterms are drawn once per occurrence.
//   terms: root at the left, one edge per position labelled by it
//          (horizontal), children in position order.
//   broad and reduced broad numbers: Build(x, i, [a_k]) is a node labelled i
//          with a depth edge to x, so Start leaves sit at the rear, a
//          horizontal edge labelled k to each a_k, and vertical edges
//          chaining the a_k in position order.
enum class Dimension { horizontal, vertical, depth };

std::string_view dimension_name(Dimension d);

struct Graph {
  struct Node {
    std::string id;
    std::string label;
  };
  struct Edge {
    std::string from;
    std::string to;
    std::string label;
    Dimension dimension;
  };
  std::vector<Node> nodes;  // nodes[0] is the root
  std::vector<Edge> edges;
};

// DomainError if the argument does not decompose.
Graph term_graph(HfSet t);
Graph broad_graph(HfSet w);    // Start / Build
Graph reduced_graph(HfSet w);  // Begin / Make

// Left-to-right layout; depth edges dashed, vertical edges dotted and
// ignored for ranking.
std::string to_dot(const Graph& g);

}  // namespace broadgen
