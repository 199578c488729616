#pragma once

// The closed formula for z_g: enumeration of its index tuples, evaluation of
// each term, the genus 0 and 1 formulas, and Euler characteristic extraction.

#include <compare>
#include <vector>

#include "json.hpp"
#include "topweight/rational.hpp"
#include "topweight/symfunc.hpp"

namespace topweight {

struct ZagierTerm {
  int g = 0;
  int k = 0, m = 0, r = 0, s = 0;
  std::vector<int> d;  // strictly increasing proper divisors of m
  std::vector<int> a;  // positive multiplicities

  int n() const;  // sum a_i
  /// gcd(m, d_1, ..., d_s)
  int D() const;
  /// Conditions on the index tuple: d_i | m, 0 < d_1 < ... < d_s < m,
  /// sum a_i + r = k + 1, sum a_i d_i + g - 1 = k m, k >= 1, a_i >= 1.
  bool valid() const;
  /// Order used for enumeration output: (m, k, r, d, a).
  friend std::strong_ordering operator<=>(const ZagierTerm& x, const ZagierTerm& y);
  friend bool operator==(const ZagierTerm&, const ZagierTerm&) = default;
};

/// All index tuples for genus g, ordered by (m, k, r, d, a). Searches
/// m <= 2g + 2 and k <= g. Throws std::domain_error if g < 2.
std::vector<ZagierTerm> enumerate_terms(int g);
/// Same search with explicit bounds on m and k.
std::vector<ZagierTerm> enumerate_terms_bounded(int g, int max_m, int max_k);

/// A term is identically zero when some mu(m/d_i) = 0, or r = 0 and D > 1.
bool term_is_zero(const ZagierTerm& t);
/// (-1)^{k-r} (k-1)! B_r / r! * m^{r-1} prod_{p | D} (1 - p^{-r})
///   * prod mu(m/d_i)^{a_i} / a_i!
Rational term_coefficient(const ZagierTerm& t);
/// P_m^{-k} prod P_{d_i}^{a_i}
PMonomial term_monomial(const ZagierTerm& t);
PLaurent term_laurent(const ZagierTerm& t);
PSeries term_value(const ZagierTerm& t, int truncation);

/// Sum of all nonzero terms, as an exact Laurent polynomial in the P_i.
PLaurent z_g_laurent(int g, unsigned jobs = 1);
PSeries z_g(int g, int truncation, unsigned jobs = 1);
/// -P_1 sum_{d <= N} mu(d)/d log P_d + (P_1^2 - P_2)/2
PSeries z_0(int truncation);
/// -1/2 sum_{d <= N} phi(d)/d log P_d - P_1^2/(4 P_2) + P_1 - 3/4
PSeries z_1(int truncation);
/// z_0, z_1 or z_g as appropriate; g < 0 throws std::domain_error.
PSeries z_series(int g, int truncation, unsigned jobs = 1);

/// Truncation used when none is requested: 3g + 6.
int default_truncation(int g);

/// n! times the coefficient of p_1^n in z_g.
Rational top_weight_euler(int g, int n, unsigned jobs = 1);
/// (-1)^{n+1} (g+n-2)!/g! B_g. Throws std::domain_error("outside validity
/// range") unless n > g + 1 and 2g - 2 + n > 0.
Rational top_weight_euler_closed(int g, int n);

/// Schur coefficients of the degree-n part of z_g.
SchurTable equivariant_table(int g, int n, unsigned jobs = 1);

nlohmann::json to_json(const ZagierTerm& t);
nlohmann::json terms_to_json(const std::vector<ZagierTerm>& terms);

}  // namespace topweight
