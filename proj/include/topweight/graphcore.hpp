#pragma once

// Half-edge graphs, their automorphisms, isomorph-free enumeration of stable
// (marked) graphs, and the brute-force orbisums built on top of them.

#include <array>
#include <utility>
#include <vector>

#include "json.hpp"
#include "topweight/arith.hpp"
#include "topweight/canonical.hpp"
#include "topweight/symfunc.hpp"

namespace topweight {

/// A graph in the half-edge model: half-edges 0..H-1, a fixed-point-free
/// involution s, and an attachment map r from half-edges to vertices.
/// Loops and parallel edges are allowed; a loop contributes 2 to valence.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument unless s is a fixed-point-free involution
  /// and r maps into [0, num_vertices).
  Graph(int num_vertices, std::vector<int> s, std::vector<int> r);

  /// Edge i becomes half-edges 2i (at .first) and 2i+1 (at .second).
  static Graph from_edges(int num_vertices, const std::vector<std::pair<int, int>>& edges);

  int num_vertices() const { return num_vertices_; }
  int num_half_edges() const { return static_cast<int>(s_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int s(int h) const { return s_[h]; }
  int r(int h) const { return r_[h]; }
  const std::vector<int>& involution() const { return s_; }
  const std::vector<int>& attachment() const { return r_; }

  /// Edges as {h, s(h)} with h < s(h), ordered by h.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  int edge_of(int h) const { return edge_of_[h]; }
  bool is_loop(int e) const { return r_[edges_[e][0]] == r_[edges_[e][1]]; }

  std::vector<int> half_edges_at(int v) const;
  int valence(int v) const;
  /// Edges as vertex pairs, in edge order.
  std::vector<std::pair<int, int>> endpoint_pairs() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.s_ == b.s_ && a.r_ == b.r_;
  }

 private:
  int num_vertices_ = 0;
  std::vector<int> s_, r_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<int> edge_of_;
};

bool connected(const Graph& g);
/// |E| - |V| + 1; the genus of a connected graph.
int genus(const Graph& g);
const std::vector<std::array<int, 2>>& edge_set(const Graph& g);

/// A graph with a marking {1..n} -> V, stored 0-based: marking[i] is the
/// vertex carrying label i+1. The marking need not be injective.
struct MarkedGraph {
  Graph graph;
  std::vector<int> marking;

  int n() const { return static_cast<int>(marking.size()); }
  std::vector<int> marks_per_vertex() const;
  /// |r^{-1}(v)| + |m^{-1}(v)| >= 3 everywhere.
  bool is_stable() const;
};

struct Automorphism {
  std::vector<int> tau_V;
  std::vector<int> tau_H;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

/// Fixed: tau_V o m = m. Permuted: tau_V o m = m o sigma for some sigma in S_n.
enum class MarkingRule { Fixed, Permuted };

bool is_automorphism(const Graph& g, const Automorphism& tau);
Automorphism compose(const Automorphism& a, const Automorphism& b);  // a after b
Automorphism inverse(const Automorphism& a);
Automorphism identity_automorphism(const Graph& g);

/// The full automorphism group, as explicit (tau_V, tau_H) pairs.
std::vector<Automorphism> automorphisms(const Graph& g);
std::vector<Automorphism> automorphisms(const MarkedGraph& g, MarkingRule rule = MarkingRule::Fixed);

/// Permutation induced on edges (indices into g.edges()).
std::vector<int> induced_edge_permutation(const Graph& g, const Automorphism& tau);

struct AutCycleData {
  int sign = 1;  // sgn(tau_E)
  Partition cyc_V, cyc_E, cyc_H;
};
AutCycleData aut_sign_and_cycles(const Graph& g, const Automorphism& tau);

/// Cycle type of tau restricted to the labels of an injective marking.
Partition marking_cycle_type(const MarkedGraph& g, const Automorphism& tau);

CanonicalKey canonical_key(const Graph& g);
CanonicalKey canonical_key(const MarkedGraph& g, MarkingRule rule = MarkingRule::Fixed);
bool isomorphic(const Graph& a, const Graph& b);

/// One representative per isomorphism class of connected genus-g graphs with
/// all valences >= 3, ordered by (|V|, canonical key). Requires g >= 2.
std::vector<Graph> enumerate_stable_graphs(int g);
/// Stable connected genus-g n-marked graphs with arbitrary markings;
/// isomorphisms fix every label.
std::vector<MarkedGraph> enumerate_marked_graphs_p(int g, int n);
/// As above with injective markings.
std::vector<MarkedGraph> enumerate_marked_graphs_injective(int g, int n);
/// Injective markings up to isomorphisms that may permute the labels.
std::vector<MarkedGraph> enumerate_marked_graphs_modulo_sn(int g, int n);

/// Smooths every 2-valent vertex whose two half-edges are not a single loop.
/// A cycle of 2-valent vertices ends up as one vertex carrying one loop.
Graph smooth_2_valent(const Graph& g);
/// Drops the marking and smooths 2-valent vertices.
Graph forget_markings(const MarkedGraph& g);

/// (-1)^{|E|} sum_tau sgn(tau_E) P(tau_V) P(tau_E) / P(tau_H).
PLaurent z_G_laurent(const Graph& g);
PSeries z_G(const Graph& g, int truncation);

/// sum over stable genus-g graphs of z_G / |Aut G|.
PLaurent z_g_graph_oracle_laurent(int g, unsigned jobs = 1);
PSeries z_g_graph_oracle(int g, int truncation, unsigned jobs = 1);

/// Chain-level Frobenius characteristic of the marked graph complexes,
/// degree by degree: for each n <= truncation, the orbisum over injectively
/// marked graphs up to relabeling of (-1)^{|E|} sgn(tau_E) psi(tau|_m).
/// Requires g >= 2; the low-genus complexes differ from z_0 and z_1.
PSeries z_g_chain_oracle(int g, int truncation);

/// (-1)^{n+1} (g+n-2)!/g! B_g; std::domain_error("unstable range") if 2g-2+n <= 0.
Rational chi_orb(int g, int n);
/// sum over enumerate_marked_graphs_p(g, n) of (-1)^{|E|} / |Aut|.
Rational chi_orb_oracle(int g, int n);

/// sum of (-1)^{|E|} over injectively marked classes whose automorphisms all
/// act on edges by even permutations.
long long kgn_euler_oracle(int g, int n);

nlohmann::json to_json(const Graph& g);
nlohmann::json to_json(const MarkedGraph& g);
Graph graph_from_json(const nlohmann::json& j);
MarkedGraph marked_graph_from_json(const nlohmann::json& j);

}  // namespace topweight
