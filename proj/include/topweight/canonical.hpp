#pragma once

// Canonical forms and vertex symmetries of small multigraphs with labeled
// vertices and edges. Vertices are first split into blocks by cheap
// invariants (label, valence, loops, incident edge labels); only orderings
// inside blocks are tried exhaustively.

#include <functional>
#include <vector>

namespace topweight {

struct LabeledEdge {
  int u = 0;
  int v = 0;
  int label = 1;
};

struct LabeledMultigraph {
  int num_vertices = 0;
  std::vector<std::vector<int>> vertex_labels;  // one (possibly empty) label per vertex
  std::vector<LabeledEdge> edges;
};

using CanonicalKey = std::vector<int>;

/// Lexicographically least serialization over all invariant-respecting vertex
/// orderings. Two labeled multigraphs are isomorphic iff their keys agree.
CanonicalKey canonical_key(const LabeledMultigraph& g);

/// Calls visit(pi) for every vertex bijection pi (pi[v] = image of v) that
/// preserves vertex labels and the labeled edge multiplicities between every
/// pair of vertices.
void for_each_vertex_symmetry(const LabeledMultigraph& g,
                              const std::function<void(const std::vector<int>&)>& visit);

}  // namespace topweight
