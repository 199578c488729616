#include "topweight/graphcore.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "topweight/parallel.hpp"

namespace topweight {

using nlohmann::json;

Graph::Graph(int num_vertices, std::vector<int> s, std::vector<int> r)
    : num_vertices_(num_vertices), s_(std::move(s)), r_(std::move(r)) {
  if (num_vertices_ < 0) throw std::invalid_argument("negative vertex count");
  if (s_.size() != r_.size()) throw std::invalid_argument("s and r differ in length");
  const int nh = static_cast<int>(s_.size());
  edge_of_.assign(s_.size(), -1);
  for (int h = 0; h < nh; ++h) {
    if (s_[h] < 0 || s_[h] >= nh) throw std::invalid_argument("s out of range");
    if (s_[h] == h) throw std::invalid_argument("s has a fixed point");
    if (s_[s_[h]] != h) throw std::invalid_argument("s is not an involution");
    if (r_[h] < 0 || r_[h] >= num_vertices_) throw std::invalid_argument("r out of range");
    if (h < s_[h]) {
      edge_of_[h] = edge_of_[s_[h]] = static_cast<int>(edges_.size());
      edges_.push_back({h, s_[h]});
    }
  }
}

Graph Graph::from_edges(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> s, r;
  for (const auto& [a, b] : edges) {
    const int h = static_cast<int>(s.size());
    s.push_back(h + 1);
    s.push_back(h);
    r.push_back(a);
    r.push_back(b);
  }
  return Graph(num_vertices, std::move(s), std::move(r));
}

std::vector<int> Graph::half_edges_at(int v) const {
  std::vector<int> out;
  for (int h = 0; h < num_half_edges(); ++h) {
    if (r_[h] == v) out.push_back(h);
  }
  return out;
}

int Graph::valence(int v) const {
  return static_cast<int>(std::count(r_.begin(), r_.end(), v));
}

std::vector<std::pair<int, int>> Graph::endpoint_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : edges_) out.emplace_back(r_[e[0]], r_[e[1]]);
  return out;
}

bool connected(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int components = n;
  for (const auto& [a, b] : g.endpoint_pairs()) {
    const int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

int genus(const Graph& g) { return g.num_edges() - g.num_vertices() + 1; }

const std::vector<std::array<int, 2>>& edge_set(const Graph& g) { return g.edges(); }

std::vector<int> MarkedGraph::marks_per_vertex() const {
  std::vector<int> c(graph.num_vertices(), 0);
  for (int v : marking) ++c.at(v);
  return c;
}

bool MarkedGraph::is_stable() const {
  const auto c = marks_per_vertex();
  for (int v = 0; v < graph.num_vertices(); ++v) {
    if (graph.valence(v) + c[v] < 3) return false;
  }
  return true;
}

bool is_automorphism(const Graph& g, const Automorphism& tau) {
  const int nv = g.num_vertices(), nh = g.num_half_edges();
  if (static_cast<int>(tau.tau_V.size()) != nv || static_cast<int>(tau.tau_H.size()) != nh) return false;
  std::vector<char> hit_v(nv, 0), hit_h(nh, 0);
  for (int v : tau.tau_V) {
    if (v < 0 || v >= nv || hit_v[v]) return false;
    hit_v[v] = 1;
  }
  for (int h : tau.tau_H) {
    if (h < 0 || h >= nh || hit_h[h]) return false;
    hit_h[h] = 1;
  }
  for (int h = 0; h < nh; ++h) {
    if (tau.tau_H[g.s(h)] != g.s(tau.tau_H[h])) return false;
    if (tau.tau_V[g.r(h)] != g.r(tau.tau_H[h])) return false;
  }
  return true;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism out;
  for (int v : b.tau_V) out.tau_V.push_back(a.tau_V[v]);
  for (int h : b.tau_H) out.tau_H.push_back(a.tau_H[h]);
  return out;
}

Automorphism inverse(const Automorphism& a) {
  Automorphism out{std::vector<int>(a.tau_V.size()), std::vector<int>(a.tau_H.size())};
  for (std::size_t i = 0; i < a.tau_V.size(); ++i) out.tau_V[a.tau_V[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < a.tau_H.size(); ++i) out.tau_H[a.tau_H[i]] = static_cast<int>(i);
  return out;
}

Automorphism identity_automorphism(const Graph& g) {
  Automorphism out{std::vector<int>(g.num_vertices()), std::vector<int>(g.num_half_edges())};
  std::iota(out.tau_V.begin(), out.tau_V.end(), 0);
  std::iota(out.tau_H.begin(), out.tau_H.end(), 0);
  return out;
}

namespace {

LabeledMultigraph labeled(const Graph& g, std::vector<std::vector<int>> vertex_labels) {
  LabeledMultigraph out;
  out.num_vertices = g.num_vertices();
  out.vertex_labels = std::move(vertex_labels);
  for (const auto& [a, b] : g.endpoint_pairs()) out.edges.push_back({a, b, 1});
  return out;
}

std::vector<std::vector<int>> marking_labels(const MarkedGraph& g, MarkingRule rule) {
  std::vector<std::vector<int>> labels(g.graph.num_vertices());
  if (rule == MarkingRule::Fixed) {
    for (int i = 0; i < g.n(); ++i) labels.at(g.marking[i]).push_back(i + 1);
  } else {
    const auto c = g.marks_per_vertex();
    for (int v = 0; v < g.graph.num_vertices(); ++v) labels[v].push_back(c[v]);
  }
  return labels;
}

// Lifts every vertex symmetry to all compatible half-edge bijections.
std::vector<Automorphism> lift_symmetries(const Graph& g, const LabeledMultigraph& lg) {
  std::map<std::pair<int, int>, std::vector<int>> groups;  // endpoint pair -> edges
  const auto pairs = g.endpoint_pairs();
  for (int e = 0; e < g.num_edges(); ++e) {
    groups[std::minmax(pairs[e].first, pairs[e].second)].push_back(e);
  }
  std::vector<const std::vector<int>*> group_list;
  for (const auto& [key, edges] : groups) group_list.push_back(&edges);

  std::vector<Automorphism> out;
  for_each_vertex_symmetry(lg, [&](const std::vector<int>& pi) {
    Automorphism tau{pi, std::vector<int>(g.num_half_edges(), -1)};
    std::function<void(std::size_t)> assign = [&](std::size_t gi) {
      if (gi == group_list.size()) {
        out.push_back(tau);
        return;
      }
      const auto& source = *group_list[gi];
      const int a = g.r(g.edges()[source[0]][0]);
      const int b = g.r(g.edges()[source[0]][1]);
      std::vector<int> target = groups.at(std::minmax(pi[a], pi[b]));
      std::sort(target.begin(), target.end());
      const bool loop = (a == b);
      const std::size_t k = source.size();
      do {
        const unsigned flips = loop ? (1u << k) : 1u;
        for (unsigned mask = 0; mask < flips; ++mask) {
          for (std::size_t i = 0; i < k; ++i) {
            const auto& src = g.edges()[source[i]];
            const auto& dst = g.edges()[target[i]];
            if (loop) {
              const bool flip = (mask >> i) & 1u;
              tau.tau_H[src[0]] = dst[flip ? 1 : 0];
              tau.tau_H[src[1]] = dst[flip ? 0 : 1];
            } else {
              for (int h : src) {
                const int want = pi[g.r(h)];
                tau.tau_H[h] = (g.r(dst[0]) == want) ? dst[0] : dst[1];
              }
            }
          }
          assign(gi + 1);
        }
      } while (std::next_permutation(target.begin(), target.end()));
    };
    assign(0);
  });
  return out;
}

}  // namespace

std::vector<Automorphism> automorphisms(const Graph& g) {
  return lift_symmetries(g, labeled(g, std::vector<std::vector<int>>(g.num_vertices())));
}

std::vector<Automorphism> automorphisms(const MarkedGraph& g, MarkingRule rule) {
  return lift_symmetries(g.graph, labeled(g.graph, marking_labels(g, rule)));
}

std::vector<int> induced_edge_permutation(const Graph& g, const Automorphism& tau) {
  std::vector<int> out(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) out[e] = g.edge_of(tau.tau_H[g.edges()[e][0]]);
  return out;
}

AutCycleData aut_sign_and_cycles(const Graph& g, const Automorphism& tau) {
  AutCycleData out;
  out.cyc_V = cycle_type(tau.tau_V);
  out.cyc_E = cycle_type(induced_edge_permutation(g, tau));
  out.cyc_H = cycle_type(tau.tau_H);
  out.sign = out.cyc_E.sign();
  return out;
}

Partition marking_cycle_type(const MarkedGraph& g, const Automorphism& tau) {
  std::vector<int> label_at(g.graph.num_vertices(), -1);
  for (int i = 0; i < g.n(); ++i) {
    if (label_at[g.marking[i]] != -1) throw std::invalid_argument("marking is not injective");
    label_at[g.marking[i]] = i;
  }
  std::vector<int> sigma(g.n());
  for (int i = 0; i < g.n(); ++i) {
    sigma[i] = label_at[tau.tau_V[g.marking[i]]];
    if (sigma[i] < 0) throw std::invalid_argument("automorphism does not preserve marked vertices");
  }
  return cycle_type(sigma);
}

CanonicalKey canonical_key(const Graph& g) {
  return canonical_key(labeled(g, std::vector<std::vector<int>>(g.num_vertices())));
}

CanonicalKey canonical_key(const MarkedGraph& g, MarkingRule rule) {
  return canonical_key(labeled(g.graph, marking_labels(g, rule)));
}

bool isomorphic(const Graph& a, const Graph& b) { return canonical_key(a) == canonical_key(b); }

namespace {

// Symmetric multiplicity matrices (diagonal = loops) with the given edge
// count. Vertices sharing a block id must have nonincreasing valence.
class ShapeEnumerator {
 public:
  ShapeEnumerator(int nv, int ne, std::vector<int> min_valence, std::vector<int> block)
      : nv_(nv), ne_(ne), min_valence_(std::move(min_valence)), block_(std::move(block)),
        mult_(nv, std::vector<int>(nv, 0)), valence_(nv, 0) {}

  void run(const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
    visit_ = &visit;
    step(0, 0, ne_);
  }

 private:
  bool row_ok(int u) const {
    if (valence_[u] < min_valence_[u]) return false;
    if (u > 0 && block_[u] == block_[u - 1] && valence_[u] > valence_[u - 1]) return false;
    return true;
  }

  bool feasible(int from, int remaining) const {
    int need = 0;
    for (int w = from; w < nv_; ++w) need += std::max(0, min_valence_[w] - valence_[w]);
    return need <= 2 * remaining;
  }

  void step(int u, int w, int remaining) {
    if (w == nv_) {
      if (!row_ok(u)) return;
      ++u;
      w = u;
      if (u == nv_) {
        if (remaining == 0) (*visit_)(mult_);
        return;
      }
      if (!feasible(u, remaining)) return;
    }
    const int per = (u == w) ? 2 : 1;
    for (int k = 0; k <= remaining; ++k) {
      mult_[u][w] = mult_[w][u] = k;
      valence_[u] += per * k;
      if (u != w) valence_[w] += k;
      step(u, w + 1, remaining - k);
      valence_[u] -= per * k;
      if (u != w) valence_[w] -= k;
    }
    mult_[u][w] = mult_[w][u] = 0;
  }

  int nv_, ne_;
  std::vector<int> min_valence_, block_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> valence_;
  const std::function<void(const std::vector<std::vector<int>>&)>* visit_ = nullptr;
};

Graph graph_from_multiplicities(const std::vector<std::vector<int>>& mult) {
  const int nv = static_cast<int>(mult.size());
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < nv; ++u) {
    for (int w = u; w < nv; ++w) {
      for (int k = 0; k < mult[u][w]; ++k) edges.emplace_back(u, w);
    }
  }
  return Graph::from_edges(nv, edges);
}

// Nonincreasing count vectors of length nv summing to n, entries <= cap.
void for_each_count_vector(int nv, int n, int cap, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> c(nv, 0);
  std::function<void(int, int, int)> rec = [&](int i, int left, int bound) {
    if (i == nv) {
      if (left == 0) visit(c);
      return;
    }
    for (int x = std::min(bound, left); x >= 0; --x) {
      c[i] = x;
      rec(i + 1, left - x, x);
    }
    c[i] = 0;
  };
  rec(0, n, cap);
}

// Label assignments {0..n-1} -> vertices realizing the count vector c.
void for_each_labeling(const std::vector<int>& c, const std::function<void(const std::vector<int>&)>& visit) {
  const int n = std::accumulate(c.begin(), c.end(), 0);
  std::vector<int> left = c, marking(n, -1);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      visit(marking);
      return;
    }
    for (std::size_t v = 0; v < left.size(); ++v) {
      if (left[v] == 0) continue;
      --left[v];
      marking[i] = static_cast<int>(v);
      rec(i + 1);
      ++left[v];
    }
  };
  rec(0);
}

enum class MarkingKind { Pure, Injective, ModuloSn };

std::vector<MarkedGraph> enumerate_marked(int g, int n, MarkingKind kind) {
  if (g < 0 || n < 0) throw std::invalid_argument("genus and marking count must be nonnegative");
  if (2 * g - 2 + n <= 0) throw std::domain_error("unstable range");
  const MarkingRule rule = kind == MarkingKind::ModuloSn ? MarkingRule::Permuted : MarkingRule::Fixed;
  std::map<CanonicalKey, MarkedGraph> found;
  const int max_vertices = 2 * g - 2 + n;
  for (int nv = 1; nv <= max_vertices; ++nv) {
    const int ne = nv + g - 1;
    if (ne < 0) continue;
    const int cap = kind == MarkingKind::Pure ? n : 1;
    for_each_count_vector(nv, n, cap, [&](const std::vector<int>& c) {
      std::vector<int> min_valence(nv);
      for (int v = 0; v < nv; ++v) min_valence[v] = std::max(nv >= 2 ? 1 : 0, 3 - c[v]);
      ShapeEnumerator shapes(nv, ne, min_valence, c);
      shapes.run([&](const std::vector<std::vector<int>>& mult) {
        Graph graph = graph_from_multiplicities(mult);
        if (!connected(graph)) return;
        auto keep = [&](const std::vector<int>& marking) {
          MarkedGraph mg{graph, marking};
          auto key = canonical_key(mg, rule);
          found.try_emplace(std::move(key), std::move(mg));
        };
        if (kind == MarkingKind::ModuloSn) {
          std::vector<int> marking;
          for (int v = 0; v < nv; ++v) {
            if (c[v] == 1) marking.push_back(v);
          }
          keep(marking);
        } else {
          for_each_labeling(c, keep);
        }
      });
    });
  }
  std::vector<MarkedGraph> out;
  for (auto& [key, mg] : found) out.push_back(std::move(mg));
  return out;
}

}  // namespace

std::vector<Graph> enumerate_stable_graphs(int g) {
  if (g < 2) throw std::domain_error("stable unmarked graphs need genus >= 2");
  std::map<CanonicalKey, Graph> found;
  for (int nv = 1; nv <= 2 * g - 2; ++nv) {
    const int ne = nv + g - 1;
    ShapeEnumerator shapes(nv, ne, std::vector<int>(nv, 3), std::vector<int>(nv, 0));
    shapes.run([&](const std::vector<std::vector<int>>& mult) {
      Graph graph = graph_from_multiplicities(mult);
      if (!connected(graph)) return;
      found.try_emplace(canonical_key(graph), std::move(graph));
    });
  }
  std::vector<Graph> out;
  for (auto& [key, graph] : found) out.push_back(std::move(graph));
  return out;
}

std::vector<MarkedGraph> enumerate_marked_graphs_p(int g, int n) {
  return enumerate_marked(g, n, MarkingKind::Pure);
}

std::vector<MarkedGraph> enumerate_marked_graphs_injective(int g, int n) {
  return enumerate_marked(g, n, MarkingKind::Injective);
}

std::vector<MarkedGraph> enumerate_marked_graphs_modulo_sn(int g, int n) {
  return enumerate_marked(g, n, MarkingKind::ModuloSn);
}

Graph smooth_2_valent(const Graph& g) {
  std::vector<int> s = g.involution(), r = g.attachment();
  std::vector<char> alive_v(g.num_vertices(), 1), alive_h(s.size(), 1);
  std::vector<std::vector<int>> at(g.num_vertices());
  for (std::size_t h = 0; h < r.size(); ++h) at[r[h]].push_back(static_cast<int>(h));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!alive_v[v] || at[v].size() != 2) continue;
      const int h1 = at[v][0], h2 = at[v][1];
      if (s[h1] == h2) continue;  // a lone loop: the smoothed form of a cycle
      const int x1 = s[h1], x2 = s[h2];
      s[x1] = x2;
      s[x2] = x1;
      alive_h[h1] = alive_h[h2] = 0;
      alive_v[v] = 0;
      at[v].clear();
      changed = true;
    }
  }
  std::vector<int> new_v(g.num_vertices(), -1), new_h(s.size(), -1);
  int nv = 0, nh = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (alive_v[v]) new_v[v] = nv++;
  }
  for (std::size_t h = 0; h < s.size(); ++h) {
    if (alive_h[h]) new_h[h] = nh++;
  }
  std::vector<int> s2(nh), r2(nh);
  for (std::size_t h = 0; h < s.size(); ++h) {
    if (!alive_h[h]) continue;
    s2[new_h[h]] = new_h[s[h]];
    r2[new_h[h]] = new_v[r[h]];
  }
  return Graph(nv, std::move(s2), std::move(r2));
}

Graph forget_markings(const MarkedGraph& g) { return smooth_2_valent(g.graph); }

PLaurent z_G_laurent(const Graph& g) {
  PLaurent out;
  const int edge_sign = g.num_edges() % 2 == 0 ? 1 : -1;
  for (const auto& tau : automorphisms(g)) {
    const auto cyc = aut_sign_and_cycles(g, tau);
    PMonomial m = pmonomial_mul(pmonomial_of_cycle_type(cyc.cyc_V, 1), pmonomial_of_cycle_type(cyc.cyc_E, 1));
    m = pmonomial_mul(m, pmonomial_of_cycle_type(cyc.cyc_H, -1));
    out.add(m, Rational(edge_sign * cyc.sign));
  }
  return out;
}

PSeries z_G(const Graph& g, int truncation) { return z_G_laurent(g).to_series(truncation); }

PLaurent z_g_graph_oracle_laurent(int g, unsigned jobs) {
  const auto graphs = enumerate_stable_graphs(g);
  std::vector<PLaurent> parts(graphs.size());
  parallel_for(graphs.size(), jobs, [&](std::size_t i) {
    const auto auts = automorphisms(graphs[i]);
    parts[i] = z_G_laurent(graphs[i]) * Rational(1, static_cast<long>(auts.size()));
  });
  PLaurent out;
  for (const auto& p : parts) out += p;
  return out;
}

PSeries z_g_graph_oracle(int g, int truncation, unsigned jobs) {
  return z_g_graph_oracle_laurent(g, jobs).to_series(truncation);
}

PSeries z_g_chain_oracle(int g, int truncation) {
  if (g < 2) throw std::domain_error("chain-level oracle needs genus >= 2");
  PSeries out(truncation);
  for (int n = 0; n <= truncation; ++n) {
    for (const auto& mg : enumerate_marked_graphs_modulo_sn(g, n)) {
      const auto auts = automorphisms(mg, MarkingRule::Permuted);
      const Rational weight(1, static_cast<long>(auts.size()));
      const int edge_sign = mg.graph.num_edges() % 2 == 0 ? 1 : -1;
      for (const auto& tau : auts) {
        const int sign = edge_sign * aut_sign_and_cycles(mg.graph, tau).sign;
        out.add_term(marking_cycle_type(mg, tau), weight * Rational(sign));
      }
    }
  }
  return out;
}

Rational chi_orb(int g, int n) {
  if (g < 0 || n < 0) throw std::domain_error("negative genus or marking count");
  if (2 * g - 2 + n <= 0) throw std::domain_error("unstable range");
  const Rational magnitude(factorial(g + n - 2), factorial(g));
  const Rational value = magnitude * bernoulli(g);
  return (n + 1) % 2 == 0 ? value : -value;
}

Rational chi_orb_oracle(int g, int n) {
  Rational total;
  for (const auto& mg : enumerate_marked_graphs_p(g, n)) {
    const long order = static_cast<long>(automorphisms(mg, MarkingRule::Fixed).size());
    total += Rational(mg.graph.num_edges() % 2 == 0 ? 1 : -1, order);
  }
  return total;
}

long long kgn_euler_oracle(int g, int n) {
  long long total = 0;
  for (const auto& mg : enumerate_marked_graphs_injective(g, n)) {
    bool alternating = true;
    for (const auto& tau : automorphisms(mg, MarkingRule::Fixed)) {
      if (aut_sign_and_cycles(mg.graph, tau).sign < 0) {
        alternating = false;
        break;
      }
    }
    if (alternating) total += mg.graph.num_edges() % 2 == 0 ? 1 : -1;
  }
  return total;
}

json to_json(const Graph& g) {
  return json{{"vertices", g.num_vertices()},
              {"half_edges", g.num_half_edges()},
              {"s", g.involution()},
              {"r", g.attachment()},
              {"marking", json::array()}};
}

json to_json(const MarkedGraph& g) {
  json j = to_json(g.graph);
  j["marking"] = g.marking;
  return j;
}

Graph graph_from_json(const json& j) {
  auto s = j.at("s").get<std::vector<int>>();
  auto r = j.at("r").get<std::vector<int>>();
  if (j.at("half_edges").get<int>() != static_cast<int>(s.size())) {
    throw std::invalid_argument("half_edges does not match the length of s");
  }
  return Graph(j.at("vertices").get<int>(), std::move(s), std::move(r));
}

MarkedGraph marked_graph_from_json(const json& j) {
  MarkedGraph out{graph_from_json(j), j.value("marking", std::vector<int>{})};
  for (int v : out.marking) {
    if (v < 0 || v >= out.graph.num_vertices()) throw std::invalid_argument("marking out of range");
  }
  return out;
}

}  // namespace topweight
