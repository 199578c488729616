#include "topweight/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace topweight {

namespace {

using Bag = std::vector<int>;  // sorted edge labels between two vertices

struct Prepared {
  int n = 0;
  std::vector<std::vector<Bag>> bags;
  std::vector<std::vector<int>> blocks;  // vertex ids, blocks in invariant order
};

Prepared prepare(const LabeledMultigraph& g) {
  const int n = g.num_vertices;
  if (static_cast<int>(g.vertex_labels.size()) != n) {
    throw std::invalid_argument("vertex label count does not match vertex count");
  }
  Prepared p;
  p.n = n;
  p.bags.assign(n, std::vector<Bag>(n));
  std::vector<std::vector<int>> incident(n);
  std::vector<int> valence(n, 0), loops(n, 0);
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw std::out_of_range("edge endpoint");
    p.bags[e.u][e.v].push_back(e.label);
    if (e.u != e.v) p.bags[e.v][e.u].push_back(e.label);
    ++valence[e.u];
    ++valence[e.v];
    if (e.u == e.v) ++loops[e.u];
    incident[e.u].push_back(e.label);
    if (e.u != e.v) incident[e.v].push_back(e.label);
  }
  for (auto& row : p.bags) {
    for (auto& bag : row) std::sort(bag.begin(), bag.end());
  }
  for (auto& inc : incident) std::sort(inc.begin(), inc.end());

  using Invariant = std::tuple<std::vector<int>, int, int, std::vector<int>>;
  std::vector<Invariant> inv(n);
  for (int v = 0; v < n; ++v) inv[v] = {g.vertex_labels[v], valence[v], loops[v], incident[v]};
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inv[a] < inv[b]; });
  for (int i = 0; i < n; ++i) {
    if (i == 0 || inv[order[i]] != inv[order[i - 1]]) p.blocks.emplace_back();
    p.blocks.back().push_back(order[i]);
  }
  return p;
}

// Odometer over the product of permutations of each block.
template <typename F>
void for_each_block_arrangement(std::vector<std::vector<int>> blocks, F&& visit) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  while (true) {
    visit(blocks);
    std::size_t i = 0;
    for (; i < blocks.size(); ++i) {
      if (std::next_permutation(blocks[i].begin(), blocks[i].end())) break;
    }
    if (i == blocks.size()) return;
  }
}

}  // namespace

CanonicalKey canonical_key(const LabeledMultigraph& g) {
  const Prepared p = prepare(g);
  CanonicalKey best;
  bool have = false;
  CanonicalKey key;
  for_each_block_arrangement(p.blocks, [&](const std::vector<std::vector<int>>& blocks) {
    std::vector<int> order;
    for (const auto& b : blocks) order.insert(order.end(), b.begin(), b.end());
    key.clear();
    key.push_back(p.n);
    for (int v : order) {
      key.push_back(static_cast<int>(g.vertex_labels[v].size()));
      key.insert(key.end(), g.vertex_labels[v].begin(), g.vertex_labels[v].end());
    }
    for (int i = 0; i < p.n; ++i) {
      for (int j = i; j < p.n; ++j) {
        const Bag& bag = p.bags[order[i]][order[j]];
        key.push_back(static_cast<int>(bag.size()));
        key.insert(key.end(), bag.begin(), bag.end());
      }
    }
    if (!have || key < best) {
      best = key;
      have = true;
    }
  });
  return best;
}

void for_each_vertex_symmetry(const LabeledMultigraph& g,
                              const std::function<void(const std::vector<int>&)>& visit) {
  const Prepared p = prepare(g);
  std::vector<std::vector<int>> sorted_blocks = p.blocks;
  for (auto& b : sorted_blocks) std::sort(b.begin(), b.end());
  std::vector<int> pi(p.n);
  for_each_block_arrangement(p.blocks, [&](const std::vector<std::vector<int>>& images) {
    for (std::size_t b = 0; b < images.size(); ++b) {
      for (std::size_t i = 0; i < images[b].size(); ++i) pi[sorted_blocks[b][i]] = images[b][i];
    }
    for (int u = 0; u < p.n; ++u) {
      if (g.vertex_labels[pi[u]] != g.vertex_labels[u]) return;
      for (int v = u; v < p.n; ++v) {
        if (p.bags[pi[u]][pi[v]] != p.bags[u][v]) return;
      }
    }
    visit(pi);
  });
}

}  // namespace topweight
