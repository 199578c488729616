#pragma once

// Orbigraphs: quotients of graphs by cyclic automorphism groups, with the
// orbit sizes recorded in f. Exhalation/inhalation, tails and cropping,
// classification of static reduced orbigraphs, and the arithmetic factors
// attached to each class.

#include <compare>
#include <functional>
#include <vector>

#include "json.hpp"
#include "topweight/canonical.hpp"
#include "topweight/graphcore.hpp"
#include "topweight/rational.hpp"
#include "topweight/symfunc.hpp"

namespace topweight {

struct Orbigraph {
  Graph X;
  std::vector<int> f_vertices;  // indexed by vertex
  std::vector<int> f_edges;     // indexed like X.edges()

  int f_half(int h) const { return f_edges[X.edge_of(h)]; }
};

/// Throws std::invalid_argument if f has the wrong shape, is not positive, or
/// f(r(x)) does not divide f([x]) for some half-edge x.
void validate(const Orbigraph& o);
/// Every vertex has positive valence, and a vertex of valence < 3 has an
/// incident half-edge h with f([h]) > f(v).
bool is_stable(const Orbigraph& o);

/// Subdivides the edges reversed by some power of tau, then quotients
/// vertices and half-edges by <tau>. f records orbit sizes.
Orbigraph quotient_orbigraph(const Graph& g, const Automorphism& tau);

/// (-1)^{|E(X)|}
int alpha(const Orbigraph& o);
/// prod_V P_{f(v)} / prod_E P_{f(e)}, i.e. prod_d P_d^{chi(X_d)}.
PMonomial beta_monomial(const Orbigraph& o);
PSeries beta(const Orbigraph& o, int truncation);
/// sum_V f - sum_E f
int chi_pair(const Orbigraph& o);

std::vector<int> exhalable_edges(const Orbigraph& o);
/// Collapses e; the merged vertex keeps the smaller index. Throws
/// std::invalid_argument if e is not exhalable.
Orbigraph exhale(const Orbigraph& o, int e);

struct InhalableElement {
  enum class Kind { Vertex, HalfEdge };
  Kind kind;
  int index;

  friend auto operator<=>(const InhalableElement&, const InhalableElement&) = default;
};

std::vector<InhalableElement> inhalable_elements(const Orbigraph& o);
/// Adds a vertex v' (last) and an edge vv' (last) with f = f(v). For a
/// half-edge h, v' takes h; for a 2-valent vertex, v' takes its second
/// half-edge. Exhaling the new edge gives back the input exactly. Throws
/// std::invalid_argument if x is not inhalable.
Orbigraph inhale(const Orbigraph& o, const InhalableElement& x);

/// Exhales until no exhalable edge remains, always taking the first one.
Orbigraph maximal_exhalation(const Orbigraph& o);
/// As above; choose(n) picks which of the n current exhalable edges to use.
Orbigraph maximal_exhalation(const Orbigraph& o, const std::function<std::size_t(std::size_t)>& choose);

bool is_static(const Orbigraph& o);

/// Half-edges h_0..h_k; v_0 = r(h_0) is 1-valent.
struct Tail {
  std::vector<int> half_edges;
  int length() const { return static_cast<int>(half_edges.size()) - 1; }
};

/// One maximal tail per 1-valent vertex, in vertex order.
std::vector<Tail> maximal_tails(const Orbigraph& o);
Orbigraph crop_tail(const Orbigraph& o, const Tail& t);
/// Crops maximal tails of positive length until none remain.
Orbigraph crop_all_tails(const Orbigraph& o);
/// Every maximal tail has length 0.
bool is_reduced(const Orbigraph& o);
/// After cropping all tails, f is constant on edges and on vertices of
/// valence other than 1.
bool constant_away_from_leaves(const Orbigraph& o);

struct StaticClass {
  int g = 0, m = 0, r = 0, s = 0;
  std::vector<int> d;  // ascending
  std::vector<int> a;
  int k = 0;

  int n() const;
  /// d_i | m, 0 < d_1 < ... < d_s < m, sum a_i + r = k + 1,
  /// sum a_i d_i + g - 1 = k m, all a_i > 0.
  bool valid() const;
  friend auto operator<=>(const StaticClass&, const StaticClass&) = default;
};

/// Throws std::domain_error unless o is static and reduced and the values
/// read off satisfy StaticClass::valid().
StaticClass classify_static_reduced(const Orbigraph& o);

CanonicalKey canonical_key(const Orbigraph& o);
bool isomorphic(const Orbigraph& a, const Orbigraph& b);

/// m^{r-1} prod_{p | D} (1 - p^{-r})
Rational gamma_formula(int m, int r, int D);
/// #{z in (Z/m)^r : the z_i mod D generate Z/D} / m, D = gcd(m, d...).
Rational gamma_oracle(int m, int r, const std::vector<int>& d);

/// prod_i (-mu(m/d_i))^{a_i}
Rational mu_factor(int m, const std::vector<int>& d, const std::vector<int>& a);
/// sum over strictly increasing divisor chains 1 = c_0 | ... | c_l = n of (-1)^l.
long long divisor_chain_signed_count(int n);
/// mu_factor computed from divisor_chain_signed_count.
Rational mu_factor_chain_oracle(int m, const std::vector<int>& d, const std::vector<int>& a);

/// -1/(a_1! ... a_s!) (r+n-2)!/r! B_r, n = sum a_i. Throws
/// std::domain_error on an invalid class.
Rational static_integral(const StaticClass& c);

nlohmann::json to_json(const Orbigraph& o);
Orbigraph orbigraph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StaticClass& c);

}  // namespace topweight
