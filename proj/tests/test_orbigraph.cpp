#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "topweight/arith.hpp"
#include "topweight/orbigraph.hpp"
#include "topweight/zagier.hpp"

using namespace topweight;
using nlohmann::json;

namespace {

Orbigraph make(int nv, const std::vector<std::pair<int, int>>& edges, std::vector<int> fv, std::vector<int> fe) {
  Orbigraph o{Graph::from_edges(nv, edges), std::move(fv), std::move(fe)};
  validate(o);
  return o;
}

// Every (G, tau) with G a stable graph of genus g.
std::vector<std::pair<Graph, Automorphism>> graph_automorphism_pairs(int g) {
  std::vector<std::pair<Graph, Automorphism>> out;
  for (const auto& G : enumerate_stable_graphs(g)) {
    for (const auto& t : automorphisms(G)) out.emplace_back(G, t);
  }
  return out;
}

// Quotients of genus-2 and genus-3 graphs, followed by a few random inhalations.
std::vector<Orbigraph> random_orbigraphs(std::mt19937& rng, int count) {
  static const auto pairs = [] {
    auto p = graph_automorphism_pairs(2);
    auto q = graph_automorphism_pairs(3);
    p.insert(p.end(), q.begin(), q.end());
    return p;
  }();
  std::vector<Orbigraph> out;
  while (static_cast<int>(out.size()) < count) {
    const auto& [G, t] = pairs[rng() % pairs.size()];
    Orbigraph o = quotient_orbigraph(G, t);
    const int steps = static_cast<int>(rng() % 4);
    for (int i = 0; i < steps; ++i) {
      const auto in = inhalable_elements(o);
      if (in.empty()) break;
      o = inhale(o, in[rng() % in.size()]);
    }
    out.push_back(o);
  }
  return out;
}

// Hangs a path leaf - v_1 - ... - v_k onto vertex u, with values d | x_1 | ... | x_k.
Orbigraph attach_tail(const Orbigraph& o, int u, int d, const std::vector<int>& xs, int joining_f) {
  auto pairs = o.X.endpoint_pairs();
  std::vector<int> fv = o.f_vertices, fe = o.f_edges;
  int prev = o.X.num_vertices();
  fv.push_back(d);
  for (int x : xs) {
    const int v = static_cast<int>(fv.size());
    fv.push_back(x);
    pairs.emplace_back(prev, v);
    fe.push_back(x);
    prev = v;
  }
  pairs.emplace_back(prev, u);
  fe.push_back(joining_f);
  return make(static_cast<int>(fv.size()), pairs, fv, fe);
}

PLaurent alpha_beta(const Orbigraph& o, const Rational& weight) {
  PLaurent l;
  l.add(beta_monomial(o), Rational(alpha(o)) * weight);
  return l;
}

// The orbigraph with maximal tails of lengths 0, 0, 1, 2 on a triangle with f = 6.
Orbigraph four_tail_example() {
  // 0 A, 1 B, 2 C, 3 a, 4 a2, 5 a3, 6 b, 7 b2, 8 c2, 9 c3, 10 c4
  return make(11,
              {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 5}, {1, 6}, {6, 7}, {2, 8}, {8, 9}, {8, 10}},
              {6, 6, 6, 6, 2, 1, 6, 3, 6, 2, 3}, {6, 6, 6, 6, 6, 2, 6, 6, 6, 6, 6});
}

}  // namespace

TEST_CASE("validation of orbigraph data") {
  CHECK_NOTHROW(make(2, {{0, 1}}, {1, 2}, {2}));
  CHECK_THROWS_AS(make(2, {{0, 1}}, {1, 2}, {3}), std::invalid_argument);
  CHECK_THROWS_AS(make(2, {{0, 1}}, {1, 0}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(make(2, {{0, 1}}, {1}, {2}), std::invalid_argument);
}

TEST_CASE("figure eight modulo the involution reversing both loops") {
  const Graph G = Graph::from_edges(1, {{0, 0}, {0, 0}});
  const Automorphism flip{{0}, {1, 0, 3, 2}};
  REQUIRE(is_automorphism(G, flip));
  const Orbigraph o = quotient_orbigraph(G, flip);
  // A path c - v - c' with f = 1 on vertices and 2 on both edges.
  const Orbigraph expected = make(3, {{0, 1}, {0, 2}}, {1, 1, 1}, {2, 2});
  CHECK(isomorphic(o, expected));
  CHECK(alpha(o) == 1);
  CHECK(beta_monomial(o) == PMonomial{{1, 3}, {2, -2}});
  CHECK(chi_pair(o) == -1);
  CHECK(is_stable(o));
  // The middle vertex is 2-valent with both edges raised, so it can inhale:
  // this orbigraph is not static.
  CHECK(exhalable_edges(o).empty());
  const auto in = inhalable_elements(o);
  REQUIRE(in.size() == 1);
  CHECK(in[0].kind == InhalableElement::Kind::Vertex);
  CHECK(o.X.valence(in[0].index) == 2);
  CHECK(!is_static(o));
  CHECK(!constant_away_from_leaves(o));
  CHECK_THROWS_AS(classify_static_reduced(o), std::domain_error);
}

TEST_CASE("identity and rotation quotients of the theta graph") {
  const Graph theta = Graph::from_edges(2, {{0, 1}, {0, 1}, {0, 1}});
  const Orbigraph id = quotient_orbigraph(theta, identity_automorphism(theta));
  CHECK(isomorphic(id, Orbigraph{theta, {1, 1}, {1, 1, 1}}));
  CHECK(alpha(id) == -1);
  CHECK(beta_monomial(id) == PMonomial{{1, -1}});

  const Automorphism rotate{{0, 1}, {2, 3, 4, 5, 0, 1}};
  REQUIRE(is_automorphism(theta, rotate));
  const Orbigraph o = quotient_orbigraph(theta, rotate);
  CHECK(isomorphic(o, make(2, {{0, 1}}, {1, 1}, {3})));
  CHECK(beta_monomial(o) == PMonomial{{1, 2}, {3, -1}});
  CHECK(chi_pair(o) == -1);
  // Both vertices are 1-valent: a reduced static orbigraph with two tails of value 1.
  CHECK(is_static(o));
  const StaticClass c = classify_static_reduced(o);
  CHECK(c.g == 2);
  CHECK(c.m == 3);
  CHECK(c.r == 0);
  CHECK(c.d == std::vector<int>{1});
  CHECK(c.a == std::vector<int>{2});
  CHECK(c.k == 1);
}

TEST_CASE("quotients: Euler characteristic and the cycle-index identity") {
  for (int g = 2; g <= 3; ++g) {
    for (const auto& G : enumerate_stable_graphs(g)) {
      const auto auts = automorphisms(G);
      PLaurent sum;
      for (const auto& t : auts) {
        const Orbigraph o = quotient_orbigraph(G, t);
        CHECK_NOTHROW(validate(o));
        CHECK(is_stable(o));
        CHECK(chi_pair(o) == 1 - g);
        // f on vertices and edges is the orbit size, which divides the order of tau.
        int order = 1;
        const auto cycles = aut_sign_and_cycles(G, t);
        for (int x : cycles.cyc_H.parts()) order = std::lcm(order, x);
        for (int x : o.f_vertices) CHECK(order % x == 0);
        for (int x : o.f_edges) CHECK(order % x == 0);
        sum += alpha_beta(o, Rational(1, static_cast<long>(auts.size())));
      }
      CHECK(sum == z_G_laurent(G) * Rational(1, static_cast<long>(auts.size())));
    }
  }
}

TEST_CASE("exhalation flips alpha and preserves beta and chi") {
  std::mt19937 rng(17);
  int exhaled = 0;
  for (const auto& o : random_orbigraphs(rng, 120)) {
    for (int e : exhalable_edges(o)) {
      const Orbigraph x = exhale(o, e);
      CHECK_NOTHROW(validate(x));
      CHECK(alpha(x) == -alpha(o));
      CHECK(beta_monomial(x) == beta_monomial(o));
      CHECK(chi_pair(x) == chi_pair(o));
      ++exhaled;
    }
  }
  CHECK(exhaled > 50);
  const Orbigraph path = make(2, {{0, 1}}, {1, 1}, {2});
  CHECK_THROWS_AS(exhale(path, 0), std::invalid_argument);
}

TEST_CASE("inhaling then exhaling the new edge is the identity") {
  std::mt19937 rng(23);
  int checked = 0;
  for (const auto& o : random_orbigraphs(rng, 400)) {
    for (const auto& x : inhalable_elements(o)) {
      const Orbigraph in = inhale(o, x);
      CHECK_NOTHROW(validate(in));
      CHECK(in.X.num_vertices() == o.X.num_vertices() + 1);
      const int e = in.X.num_edges() - 1;
      const auto ex = exhalable_edges(in);
      REQUIRE(std::find(ex.begin(), ex.end(), e) != ex.end());
      const Orbigraph back = exhale(in, e);
      CHECK(back.X == o.X);
      CHECK(back.f_vertices == o.f_vertices);
      CHECK(back.f_edges == o.f_edges);
      ++checked;
    }
  }
  CHECK(checked >= 50);
  const Orbigraph path = make(2, {{0, 1}}, {1, 1}, {2});
  CHECK_THROWS_AS(inhale(path, {InhalableElement::Kind::HalfEdge, 0}), std::invalid_argument);
}

TEST_CASE("a star with three raised edges") {
  const Orbigraph star = make(4, {{0, 1}, {0, 2}, {0, 3}}, {1, 1, 1, 1}, {2, 2, 2});
  const auto in = inhalable_elements(star);
  REQUIRE(in.size() == 3);
  for (const auto& x : in) {
    CHECK(x.kind == InhalableElement::Kind::HalfEdge);
    CHECK(star.X.r(x.index) == 0);
  }
  CHECK(exhalable_edges(star).empty());
  // Inhaling any subset of the three half-edges exhales back to the star.
  for (int mask = 0; mask < 8; ++mask) {
    Orbigraph o = star;
    for (int i = 0; i < 3; ++i) {
      if (mask >> i & 1) o = inhale(o, in[i]);
    }
    CHECK(o.X.num_edges() == 3 + std::popcount(static_cast<unsigned>(mask)));
    CHECK(static_cast<int>(exhalable_edges(o).size()) == std::popcount(static_cast<unsigned>(mask)));
    CHECK(isomorphic(maximal_exhalation(o), star));
  }
}

TEST_CASE("maximal exhalation does not depend on the order") {
  std::mt19937 rng(31);
  int nontrivial = 0;
  for (const auto& o : random_orbigraphs(rng, 150)) {
    const auto reference = canonical_key(maximal_exhalation(o));
    for (int trial = 0; trial < 5; ++trial) {
      const Orbigraph x = maximal_exhalation(o, [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); });
      CHECK(exhalable_edges(x).empty());
      CHECK(canonical_key(x) == reference);
    }
    nontrivial += exhalable_edges(o).size() > 1;
  }
  CHECK(nontrivial > 10);
}

TEST_CASE("tails of the four-tail example") {
  const Orbigraph o = four_tail_example();
  CHECK(is_static(o));
  CHECK(constant_away_from_leaves(o));
  std::vector<int> lengths;
  for (const auto& t : maximal_tails(o)) lengths.push_back(t.length());
  std::sort(lengths.begin(), lengths.end());
  CHECK(lengths == std::vector<int>{0, 0, 1, 2});
  CHECK(!is_reduced(o));
  CHECK_THROWS_AS(classify_static_reduced(o), std::domain_error);

  const Orbigraph c = crop_all_tails(o);
  CHECK(is_reduced(c));
  CHECK(is_static(c));
  CHECK(c.X.num_vertices() == 8);
  CHECK(chi_pair(c) == chi_pair(o));
  CHECK(beta_monomial(c) == beta_monomial(o));
  const StaticClass cls = classify_static_reduced(c);
  CHECK(cls.m == 6);
  CHECK(cls.r == 1);
  CHECK(cls.d == std::vector<int>{1, 2, 3});
  CHECK(cls.a == std::vector<int>{1, 1, 2});
  CHECK(cls.k == 4);
  CHECK(cls.g == 16);
  CHECK(cls.valid());
  CHECK(crop_all_tails(c).X == c.X);
}

TEST_CASE("cropping random tails preserves chi and beta") {
  std::mt19937 rng(41);
  int cropped = 0;
  for (const auto& base : random_orbigraphs(rng, 100)) {
    // Attach one or two tails with divisor chains inside the divisors of 12.
    Orbigraph o = base;
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
      const int u = static_cast<int>(rng() % o.X.num_vertices());
      std::vector<int> chain;
      int x = 1 + static_cast<int>(rng() % 2);
      const int d = x;
      const int len = static_cast<int>(rng() % 3);
      for (int j = 0; j < len; ++j) {
        x *= 1 + static_cast<int>(rng() % 3);
        chain.push_back(x);
      }
      const int end = chain.empty() ? d : chain.back();
      o = attach_tail(o, u, d, chain, std::lcm(end, o.f_vertices[u]) * (1 + static_cast<int>(rng() % 2)));
    }
    const Orbigraph c = crop_all_tails(o);
    CHECK_NOTHROW(validate(c));
    CHECK(is_reduced(c));
    CHECK(chi_pair(c) == chi_pair(o));
    CHECK(beta_monomial(c) == beta_monomial(o));
    for (const auto& t : maximal_tails(o)) {
      const Orbigraph one = crop_tail(o, t);
      CHECK(chi_pair(one) == chi_pair(o));
      CHECK(one.X.num_edges() == o.X.num_edges() - t.length());
      if (t.length() == 0) CHECK(one.X == o.X);
    }
    cropped += c.X.num_vertices() < o.X.num_vertices();
  }
  CHECK(cropped > 30);
}

TEST_CASE("static orbigraphs are those constant away from leaves after cropping") {
  std::mt19937 rng(43);
  int statics = 0, others = 0;
  for (const auto& o : random_orbigraphs(rng, 200)) {
    for (const Orbigraph& x : {o, maximal_exhalation(o)}) {
      CHECK(is_static(x) == constant_away_from_leaves(x));
      (is_static(x) ? statics : others)++;
    }
  }
  CHECK(statics > 20);
  CHECK(others > 20);
}

TEST_CASE("quotients grouped by static class reproduce each term of the closed formula") {
  for (int g = 2; g <= 3; ++g) {
    INFO("g = " << g);
    std::map<StaticClass, PLaurent> by_class;
    std::map<CanonicalKey, PLaurent> cancelling;
    for (const auto& G : enumerate_stable_graphs(g)) {
      const auto auts = automorphisms(G);
      const Rational weight(1, static_cast<long>(auts.size()));
      for (const auto& t : auts) {
        const Orbigraph o = quotient_orbigraph(G, t);
        const Orbigraph e = maximal_exhalation(o);
        if (is_static(e)) {
          by_class[classify_static_reduced(crop_all_tails(e))] += alpha_beta(o, weight);
        } else {
          CHECK(!inhalable_elements(e).empty());
          cancelling[canonical_key(e)] += alpha_beta(o, weight);
        }
      }
    }
    CHECK(!cancelling.empty());
    for (const auto& [key, sum] : cancelling) CHECK(sum.is_zero());

    std::map<StaticClass, PLaurent> expected;
    for (const auto& t : enumerate_terms(g)) {
      if (term_is_zero(t)) continue;
      expected[StaticClass{t.g, t.m, t.r, t.s, t.d, t.a, t.k}] = term_laurent(t);
    }
    for (const auto& [c, sum] : by_class) {
      CHECK(c.valid());
      CHECK(c.g == g);
      if (expected.count(c)) {
        CHECK(sum == expected[c]);
      } else {
        CHECK(sum.is_zero());
      }
    }
    for (const auto& [c, l] : expected) CHECK(by_class.count(c) == 1);
  }
}

TEST_CASE("gamma: closed form against counting generating tuples") {
  for (int m = 1; m <= 12; ++m) {
    const auto divs = divisors(m);
    std::vector<int> proper(divs.begin(), divs.end() - 1);
    for (int r = 0; r <= 4; ++r) {
      if (r == 4 && m > 8) continue;
      for (unsigned mask = 0; mask < (1u << proper.size()); ++mask) {
        std::vector<int> d;
        int D = m;
        for (std::size_t i = 0; i < proper.size(); ++i) {
          if (mask >> i & 1) {
            d.push_back(proper[i]);
            D = std::gcd(D, proper[i]);
          }
        }
        INFO("m = " << m << ", r = " << r << ", D = " << D);
        CHECK(gamma_oracle(m, r, d) == gamma_formula(m, r, D));
      }
    }
  }
  CHECK(gamma_formula(2, 0, 1) == Rational(1, 2));
  CHECK(gamma_formula(6, 2, 6) == Rational(4));
  CHECK(gamma_formula(6, 0, 2).is_zero());
  CHECK_THROWS_AS(gamma_formula(6, 1, 4), std::invalid_argument);
}

TEST_CASE("Moebius factors and signed divisor chains") {
  for (int n = 1; n <= 60; ++n) CHECK(divisor_chain_signed_count(n) == moebius(n));
  CHECK(mu_factor(6, {2}, {1}) == Rational(1));
  CHECK(mu_factor(4, {1}, {2}) == Rational(0));
  CHECK(mu_factor(6, {1, 2, 3}, {1, 1, 2}) == Rational(-1));
  for (int m = 2; m <= 12; ++m) {
    const auto divs = divisors(m);
    for (std::size_t i = 0; i + 1 < divs.size(); ++i) {
      for (int a = 1; a <= 3; ++a) {
        const std::vector<int> d{static_cast<int>(divs[i])};
        CHECK(mu_factor(m, d, {a}) == mu_factor_chain_oracle(m, d, {a}));
      }
    }
  }
}

TEST_CASE("static integrals and the factorization of term coefficients") {
  CHECK(static_integral(StaticClass{2, 3, 0, 1, {1}, {2}, 1}) == Rational(-1, 2));
  CHECK(static_integral(StaticClass{2, 4, 0, 2, {1, 2}, {1, 1}, 1}) == Rational(-1));
  CHECK(static_integral(StaticClass{2, 2, 1, 1, {1}, {1}, 1}) == Rational(1, 2));
  CHECK_THROWS_AS(static_integral(StaticClass{2, 4, 0, 1, {3}, {1}, 1}), std::domain_error);
  // Each coefficient is the integral times gamma times the Moebius factor.
  for (int g = 2; g <= 6; ++g) {
    for (const auto& t : enumerate_terms(g)) {
      const StaticClass c{t.g, t.m, t.r, t.s, t.d, t.a, t.k};
      CHECK(c.valid());
      CHECK(term_coefficient(t) == static_integral(c) * gamma_formula(t.m, t.r, t.D()) * mu_factor(t.m, t.d, t.a));
    }
  }
}

TEST_CASE("orbigraph JSON round trip") {
  const Orbigraph o = four_tail_example();
  const Orbigraph back = orbigraph_from_json(json::parse(to_json(o).dump()));
  CHECK(back.X == o.X);
  CHECK(back.f_vertices == o.f_vertices);
  CHECK(back.f_edges == o.f_edges);
  json bad = to_json(o);
  bad["f_edges"][0] = 4;  // 4 is not a multiple of f(A) = 6
  CHECK_THROWS(orbigraph_from_json(bad));
  const json c = to_json(classify_static_reduced(crop_all_tails(o)));
  CHECK(c.at("m") == 6);
  CHECK(c.at("g") == 16);
}
