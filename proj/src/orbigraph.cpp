#include "topweight/orbigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "topweight/arith.hpp"

namespace topweight {

using nlohmann::json;

namespace {

// Editable form: f stored per half-edge, deletions marked, compacted on exit.
struct Editable {
  std::vector<int> s, r, f_vertex, f_half;
  std::vector<char> alive_v, alive_h;

  explicit Editable(const Orbigraph& o)
      : s(o.X.involution()), r(o.X.attachment()), f_vertex(o.f_vertices),
        alive_v(o.X.num_vertices(), 1), alive_h(o.X.num_half_edges(), 1) {
    for (int h = 0; h < o.X.num_half_edges(); ++h) f_half.push_back(o.f_half(h));
  }

  int add_vertex(int f) {
    f_vertex.push_back(f);
    alive_v.push_back(1);
    return static_cast<int>(f_vertex.size()) - 1;
  }

  // New edge between a and b; returns the half-edge at a.
  int add_edge(int a, int b, int f) {
    const int h = static_cast<int>(s.size());
    s.push_back(h + 1);
    s.push_back(h);
    r.push_back(a);
    r.push_back(b);
    f_half.push_back(f);
    f_half.push_back(f);
    alive_h.push_back(1);
    alive_h.push_back(1);
    return h;
  }

  Orbigraph build() const {
    std::vector<int> new_v(alive_v.size(), -1), new_h(alive_h.size(), -1);
    int nv = 0, nh = 0;
    for (std::size_t v = 0; v < alive_v.size(); ++v) {
      if (alive_v[v]) new_v[v] = nv++;
    }
    for (std::size_t h = 0; h < alive_h.size(); ++h) {
      if (alive_h[h]) new_h[h] = nh++;
    }
    std::vector<int> s2(nh), r2(nh), fh(nh);
    for (std::size_t h = 0; h < alive_h.size(); ++h) {
      if (!alive_h[h]) continue;
      if (!alive_h[s[h]] || !alive_v[r[h]]) throw std::logic_error("dangling half-edge");
      s2[new_h[h]] = new_h[s[h]];
      r2[new_h[h]] = new_v[r[h]];
      fh[new_h[h]] = f_half[h];
    }
    Orbigraph out;
    out.X = Graph(nv, std::move(s2), std::move(r2));
    for (std::size_t v = 0; v < alive_v.size(); ++v) {
      if (alive_v[v]) out.f_vertices.push_back(f_vertex[v]);
    }
    for (const auto& e : out.X.edges()) out.f_edges.push_back(fh[e[0]]);
    return out;
  }
};

std::vector<std::vector<int>> half_edges_by_vertex(const Graph& g) {
  std::vector<std::vector<int>> at(g.num_vertices());
  for (int h = 0; h < g.num_half_edges(); ++h) at[g.r(h)].push_back(h);
  return at;
}

}  // namespace

void validate(const Orbigraph& o) {
  if (static_cast<int>(o.f_vertices.size()) != o.X.num_vertices() ||
      static_cast<int>(o.f_edges.size()) != o.X.num_edges()) {
    throw std::invalid_argument("f does not match the graph");
  }
  for (int x : o.f_vertices) {
    if (x <= 0) throw std::invalid_argument("f must be positive");
  }
  for (int x : o.f_edges) {
    if (x <= 0) throw std::invalid_argument("f must be positive");
  }
  for (int h = 0; h < o.X.num_half_edges(); ++h) {
    if (o.f_half(h) % o.f_vertices[o.X.r(h)] != 0) {
      throw std::invalid_argument("f(r(x)) does not divide f([x])");
    }
  }
}

bool is_stable(const Orbigraph& o) {
  const auto at = half_edges_by_vertex(o.X);
  for (int v = 0; v < o.X.num_vertices(); ++v) {
    if (at[v].empty()) return false;
    if (at[v].size() >= 3) continue;
    const bool raised = std::any_of(at[v].begin(), at[v].end(),
                                    [&](int h) { return o.f_half(h) > o.f_vertices[v]; });
    if (!raised) return false;
  }
  return true;
}

Orbigraph quotient_orbigraph(const Graph& g, const Automorphism& tau) {
  if (!is_automorphism(g, tau)) throw std::invalid_argument("not an automorphism");
  const int nv = g.num_vertices(), nh = g.num_half_edges();

  // Edges reversed by some power of tau: tau^i(x) = s(x) for a half-edge x.
  std::vector<char> reversed(g.num_edges(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const int x = g.edges()[e][0], y = g.edges()[e][1];
    for (int h = tau.tau_H[x]; h != x; h = tau.tau_H[h]) {
      if (h == y) {
        reversed[e] = 1;
        break;
      }
    }
  }

  // Subdivision G': midpoint c_e for each reversed edge, and a new half-edge
  // k_x at c_e paired with each half-edge x of e.
  std::vector<int> s = g.involution(), r = g.attachment();
  std::vector<int> tv = tau.tau_V, th = tau.tau_H;
  std::vector<int> midpoint(g.num_edges(), -1), partner(nh, -1);
  int vertex_count = nv;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!reversed[e]) continue;
    midpoint[e] = vertex_count++;
    for (int x : g.edges()[e]) {
      partner[x] = static_cast<int>(s.size());
      s.push_back(x);
      r.push_back(midpoint[e]);
    }
    for (int x : g.edges()[e]) s[x] = partner[x];
  }
  tv.resize(vertex_count);
  th.resize(s.size());
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!reversed[e]) continue;
    const int image = g.edge_of(tau.tau_H[g.edges()[e][0]]);
    tv[midpoint[e]] = midpoint[image];
    for (int x : g.edges()[e]) th[partner[x]] = partner[tau.tau_H[x]];
  }

  // Orbits, numbered by their least element.
  auto orbits = [](const std::vector<int>& perm, std::vector<int>& orbit_of, std::vector<int>& sizes) {
    orbit_of.assign(perm.size(), -1);
    sizes.clear();
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (orbit_of[i] != -1) continue;
      const int id = static_cast<int>(sizes.size());
      int size = 0;
      for (int j = static_cast<int>(i); orbit_of[j] == -1; j = perm[j]) {
        orbit_of[j] = id;
        ++size;
      }
      sizes.push_back(size);
    }
  };
  std::vector<int> v_orbit, v_size, h_orbit, h_size;
  orbits(tv, v_orbit, v_size);
  orbits(th, h_orbit, h_size);

  const int qh = static_cast<int>(h_size.size());
  std::vector<int> qs(qh, -1), qr(qh, -1), rep(qh, -1);
  for (std::size_t h = 0; h < s.size(); ++h) {
    if (rep[h_orbit[h]] == -1) rep[h_orbit[h]] = static_cast<int>(h);
  }
  for (int q = 0; q < qh; ++q) {
    qs[q] = h_orbit[s[rep[q]]];
    qr[q] = v_orbit[r[rep[q]]];
    if (qs[q] == q) throw std::logic_error("quotient half-edge is its own partner");
  }
  Orbigraph out;
  out.X = Graph(static_cast<int>(v_size.size()), std::move(qs), std::move(qr));
  out.f_vertices = v_size;
  for (const auto& e : out.X.edges()) out.f_edges.push_back(h_size[e[0]]);
  return out;
}

int alpha(const Orbigraph& o) { return o.X.num_edges() % 2 == 0 ? 1 : -1; }

PMonomial beta_monomial(const Orbigraph& o) {
  PMonomial m;
  for (int x : o.f_vertices) ++m[x];
  for (int x : o.f_edges) --m[x];
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return m;
}

PSeries beta(const Orbigraph& o, int truncation) {
  PLaurent l;
  l.add(beta_monomial(o), Rational(1));
  return l.to_series(truncation);
}

int chi_pair(const Orbigraph& o) {
  return std::accumulate(o.f_vertices.begin(), o.f_vertices.end(), 0) -
         std::accumulate(o.f_edges.begin(), o.f_edges.end(), 0);
}

std::vector<int> exhalable_edges(const Orbigraph& o) {
  const auto at = half_edges_by_vertex(o.X);
  std::vector<int> out;
  for (int e = 0; e < o.X.num_edges(); ++e) {
    const auto [x, y] = o.X.edges()[e];
    const int v = o.X.r(x), w = o.X.r(y);
    const int fe = o.f_edges[e];
    if (v == w || o.f_vertices[v] != fe || o.f_vertices[w] != fe) continue;
    auto raised_neighbor = [&](int u, int own) {
      if (at[u].size() != 2) return false;
      const int other = at[u][0] == own ? at[u][1] : at[u][0];
      return o.f_half(other) > fe;
    };
    if (raised_neighbor(v, x) || raised_neighbor(w, y)) out.push_back(e);
  }
  return out;
}

Orbigraph exhale(const Orbigraph& o, int e) {
  const auto ex = exhalable_edges(o);
  if (std::find(ex.begin(), ex.end(), e) == ex.end()) throw std::invalid_argument("edge is not exhalable");
  const auto [x, y] = o.X.edges()[e];
  const int keep = std::min(o.X.r(x), o.X.r(y)), drop = std::max(o.X.r(x), o.X.r(y));
  Editable ed(o);
  for (auto& v : ed.r) {
    if (v == drop) v = keep;
  }
  ed.f_vertex[keep] = o.f_edges[e];
  ed.alive_v[drop] = 0;
  ed.alive_h[x] = ed.alive_h[y] = 0;
  return ed.build();
}

std::vector<InhalableElement> inhalable_elements(const Orbigraph& o) {
  const auto at = half_edges_by_vertex(o.X);
  std::vector<InhalableElement> out;
  for (int v = 0; v < o.X.num_vertices(); ++v) {
    const int fv = o.f_vertices[v];
    if (at[v].size() == 2 && o.f_half(at[v][0]) > fv && o.f_half(at[v][1]) > fv) {
      out.push_back({InhalableElement::Kind::Vertex, v});
    }
  }
  for (int h = 0; h < o.X.num_half_edges(); ++h) {
    const int v = o.X.r(h);
    if (at[v].size() >= 3 && o.f_half(h) > o.f_vertices[v]) {
      out.push_back({InhalableElement::Kind::HalfEdge, h});
    }
  }
  return out;
}

Orbigraph inhale(const Orbigraph& o, const InhalableElement& x) {
  const auto in = inhalable_elements(o);
  if (std::find(in.begin(), in.end(), x) == in.end()) throw std::invalid_argument("element is not inhalable");
  int h = x.index;
  if (x.kind == InhalableElement::Kind::Vertex) h = o.X.half_edges_at(x.index)[1];
  const int v = o.X.r(h);
  Editable ed(o);
  const int w = ed.add_vertex(o.f_vertices[v]);
  ed.r[h] = w;
  ed.add_edge(v, w, o.f_vertices[v]);
  return ed.build();
}

Orbigraph maximal_exhalation(const Orbigraph& o) {
  return maximal_exhalation(o, [](std::size_t) { return std::size_t{0}; });
}

Orbigraph maximal_exhalation(const Orbigraph& o, const std::function<std::size_t(std::size_t)>& choose) {
  Orbigraph cur = o;
  while (true) {
    const auto ex = exhalable_edges(cur);
    if (ex.empty()) return cur;
    const std::size_t i = choose(ex.size());
    if (i >= ex.size()) throw std::out_of_range("exhalable edge choice");
    cur = exhale(cur, ex[i]);
  }
}

bool is_static(const Orbigraph& o) { return exhalable_edges(o).empty() && inhalable_elements(o).empty(); }

std::vector<Tail> maximal_tails(const Orbigraph& o) {
  const auto at = half_edges_by_vertex(o.X);
  std::vector<Tail> out;
  for (int v0 = 0; v0 < o.X.num_vertices(); ++v0) {
    if (at[v0].size() != 1) continue;
    Tail t{{at[v0][0]}};
    while (true) {
      const int h = t.half_edges.back();
      const int w = o.X.r(o.X.s(h));
      if (at[w].size() != 2 || o.f_vertices[w] != o.f_half(h)) break;
      const int in = o.X.s(h);
      t.half_edges.push_back(at[w][0] == in ? at[w][1] : at[w][0]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

Orbigraph crop_tail(const Orbigraph& o, const Tail& t) {
  if (t.half_edges.empty()) throw std::invalid_argument("empty tail");
  Editable ed(o);
  const int d = o.f_vertices[o.X.r(t.half_edges[0])];
  for (int i = 0; i < t.length(); ++i) {
    const int h = t.half_edges[i];
    ed.alive_v[o.X.r(h)] = 0;
    ed.alive_h[h] = ed.alive_h[o.X.s(h)] = 0;
  }
  ed.f_vertex[o.X.r(t.half_edges.back())] = d;
  return ed.build();
}

Orbigraph crop_all_tails(const Orbigraph& o) {
  Orbigraph cur = o;
  while (true) {
    bool cropped = false;
    for (const auto& t : maximal_tails(cur)) {
      if (t.length() > 0) {
        cur = crop_tail(cur, t);
        cropped = true;
        break;
      }
    }
    if (!cropped) return cur;
  }
}

bool is_reduced(const Orbigraph& o) {
  const auto tails = maximal_tails(o);
  return std::all_of(tails.begin(), tails.end(), [](const Tail& t) { return t.length() == 0; });
}

bool constant_away_from_leaves(const Orbigraph& o) {
  const Orbigraph c = crop_all_tails(o);
  std::vector<int> values = c.f_edges;
  for (int v = 0; v < c.X.num_vertices(); ++v) {
    if (c.X.valence(v) != 1) values.push_back(c.f_vertices[v]);
  }
  return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

int StaticClass::n() const { return std::accumulate(a.begin(), a.end(), 0); }

bool StaticClass::valid() const {
  if (m <= 0 || r < 0 || s < 0 || g < 0) return false;
  if (static_cast<int>(d.size()) != s || static_cast<int>(a.size()) != s) return false;
  long long weighted = 0;
  for (int i = 0; i < s; ++i) {
    if (d[i] <= 0 || d[i] >= m || m % d[i] != 0 || a[i] <= 0) return false;
    if (i > 0 && d[i - 1] >= d[i]) return false;
    weighted += static_cast<long long>(a[i]) * d[i];
  }
  if (n() + r != k + 1) return false;
  return weighted + g - 1 == static_cast<long long>(k) * m;
}

StaticClass classify_static_reduced(const Orbigraph& o) {
  validate(o);
  if (!is_static(o)) throw std::domain_error("orbigraph is not static");
  if (!is_reduced(o)) throw std::domain_error("orbigraph is not reduced");
  StaticClass c;
  c.r = 1 - (o.X.num_vertices() - o.X.num_edges());
  c.g = 1 - chi_pair(o);
  c.m = std::max(*std::max_element(o.f_vertices.begin(), o.f_vertices.end()),
                 o.f_edges.empty() ? 0 : *std::max_element(o.f_edges.begin(), o.f_edges.end()));
  std::map<int, int> leaves;
  for (int v = 0; v < o.X.num_vertices(); ++v) {
    if (o.X.valence(v) == 1) ++leaves[o.f_vertices[v]];
  }
  for (const auto& [value, count] : leaves) {
    c.d.push_back(value);
    c.a.push_back(count);
  }
  c.s = static_cast<int>(c.d.size());
  c.k = c.n() + c.r - 1;
  if (!c.valid()) throw std::domain_error("orbigraph values violate the class conditions");
  return c;
}

CanonicalKey canonical_key(const Orbigraph& o) {
  LabeledMultigraph lg;
  lg.num_vertices = o.X.num_vertices();
  for (int x : o.f_vertices) lg.vertex_labels.push_back({x});
  const auto pairs = o.X.endpoint_pairs();
  for (int e = 0; e < o.X.num_edges(); ++e) lg.edges.push_back({pairs[e].first, pairs[e].second, o.f_edges[e]});
  return canonical_key(lg);
}

bool isomorphic(const Orbigraph& a, const Orbigraph& b) { return canonical_key(a) == canonical_key(b); }

Rational gamma_formula(int m, int r, int D) {
  if (m < 1 || r < 0 || D < 1 || m % D != 0) throw std::invalid_argument("gamma needs m >= 1, r >= 0, D | m");
  Rational out = Rational(m).pow(r - 1);
  for (auto p : prime_divisors(D)) out *= Rational(1) - Rational(p).pow(-r);
  return out;
}

Rational gamma_oracle(int m, int r, const std::vector<int>& d) {
  if (m < 1 || r < 0) throw std::invalid_argument("gamma needs m >= 1, r >= 0");
  int D = m;
  for (int x : d) D = std::gcd(D, x);
  std::vector<int> z(r, 0);
  std::vector<char> in_subgroup(D);
  std::vector<int> queue;
  long long count = 0;
  while (true) {
    // Closure of {0} under adding each z_i mod D.
    std::fill(in_subgroup.begin(), in_subgroup.end(), 0);
    queue.assign(1, 0);
    in_subgroup[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (int zi : z) {
        const int y = (queue[qi] + zi) % D;
        if (!in_subgroup[y]) {
          in_subgroup[y] = 1;
          queue.push_back(y);
        }
      }
    }
    if (static_cast<int>(queue.size()) == D) ++count;
    int i = 0;
    for (; i < r; ++i) {
      if (++z[i] < m) break;
      z[i] = 0;
    }
    if (i == r) break;
  }
  return Rational(count, m);
}

Rational mu_factor(int m, const std::vector<int>& d, const std::vector<int>& a) {
  if (d.size() != a.size()) throw std::invalid_argument("d and a differ in length");
  Rational out(1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= 0 || m % d[i] != 0) throw std::invalid_argument("d_i must divide m");
    out *= Rational(-moebius(m / d[i])).pow(a[i]);
  }
  return out;
}

long long divisor_chain_signed_count(int n) {
  if (n < 1) throw std::invalid_argument("chains need n >= 1");
  // signed[c] = sum over chains from 1 to c.
  const auto divs = divisors(n);
  std::map<std::int64_t, long long> signed_count;
  for (auto c : divs) {
    if (c == 1) {
      signed_count[c] = 1;
      continue;
    }
    long long total = 0;
    for (auto b : divs) {
      if (b < c && c % b == 0) total -= signed_count[b];
    }
    signed_count[c] = total;
  }
  return signed_count[n];
}

Rational mu_factor_chain_oracle(int m, const std::vector<int>& d, const std::vector<int>& a) {
  if (d.size() != a.size()) throw std::invalid_argument("d and a differ in length");
  Rational out(1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= 0 || m % d[i] != 0) throw std::invalid_argument("d_i must divide m");
    out *= Rational(-divisor_chain_signed_count(m / d[i])).pow(a[i]);
  }
  return out;
}

Rational static_integral(const StaticClass& c) {
  if (!c.valid()) throw std::domain_error("invalid static class");
  const int n = c.n();
  if (c.r == 0 && n == 2) return c.s == 1 ? Rational(-1, 2) : Rational(-1);
  Integer denom = 1;
  for (int x : c.a) denom *= factorial(x);
  return -Rational(factorial(c.r + n - 2), denom * factorial(c.r)) * bernoulli(c.r);
}

json to_json(const Orbigraph& o) {
  json j = to_json(o.X);
  j.erase("marking");
  j["f_vertices"] = o.f_vertices;
  j["f_edges"] = o.f_edges;
  return j;
}

Orbigraph orbigraph_from_json(const json& j) {
  Orbigraph o{graph_from_json(j), j.at("f_vertices").get<std::vector<int>>(), j.at("f_edges").get<std::vector<int>>()};
  validate(o);
  return o;
}

json to_json(const StaticClass& c) {
  return json{{"g", c.g}, {"m", c.m}, {"r", c.r}, {"s", c.s}, {"d", c.d}, {"a", c.a}, {"k", c.k}};
}

}  // namespace topweight
