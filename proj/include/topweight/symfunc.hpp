#pragma once

// Truncated symmetric power series in the power-sum basis p_lambda, Laurent
// polynomials in the inhomogeneous power sums P_i = 1 + p_i, and conversion
// to the Schur basis.

#include <map>
#include <vector>

#include "json.hpp"
#include "topweight/arith.hpp"
#include "topweight/rational.hpp"

namespace topweight {

/// Finite sum of c_lambda p_lambda over partitions with |lambda| <= N.
///
/// p_i has degree i. Zero coefficients are never stored, so two series with
/// the same truncation are equal iff their term maps are equal. Series with
/// different truncations compare after truncating both to the smaller one.
class PSeries {
 public:
  using Terms = std::map<Partition, Rational, CanonicalOrder>;

  explicit PSeries(int truncation = 0);

  static PSeries constant(const Rational& c, int truncation);
  static PSeries monomial(const Partition& lambda, const Rational& c, int truncation);

  int truncation() const { return truncation_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of p_lambda; std::out_of_range if |lambda| > N.
  Rational coeff(const Partition& lambda) const;

  /// Adds c p_lambda; terms beyond the truncation are dropped.
  void add_term(const Partition& lambda, const Rational& c);

  /// Requires n <= truncation().
  PSeries truncated(int n) const;
  /// Homogeneous component of degree n, keeping the truncation.
  PSeries degree_part(int n) const;

  PSeries& operator+=(const PSeries& o);
  PSeries& operator-=(const PSeries& o);
  PSeries& operator*=(const Rational& c);
  PSeries operator-() const;

  friend PSeries operator+(PSeries a, const PSeries& b) { return a += b; }
  friend PSeries operator-(PSeries a, const PSeries& b) { return a -= b; }
  friend PSeries operator*(PSeries a, const Rational& c) { return a *= c; }
  friend PSeries operator*(const Rational& c, PSeries a) { return a *= c; }
  friend PSeries operator*(const PSeries& a, const PSeries& b);
  friend bool operator==(const PSeries& a, const PSeries& b);

 private:
  int truncation_;
  Terms terms_;
};

PSeries pseries_add(const PSeries& a, const PSeries& b);
PSeries pseries_mul(const PSeries& a, const PSeries& b);
/// Multiplicative inverse; std::domain_error("non-unit series") when the
/// constant term vanishes.
PSeries pseries_inv(const PSeries& a);
/// log(1 + p_d) truncated at degree n.
PSeries pseries_log_unit(int d, int n);
/// P_m = 1 + p_m.
PSeries P_unit(int m, int n);
/// (1 + p_m)^e via the binomial series, any integer e.
PSeries P_power(int m, int e, int n);
/// psi of a permutation with the given cycle type: the monomial p_lambda.
PSeries psi(const Partition& cycle_type, int n);
/// P_{lambda_1} ... P_{lambda_s}.
PSeries P_of_permutation(const Partition& cycle_type, int n);
Rational coeff(const PSeries& a, const Partition& lambda);

/// Exponent vector of a Laurent monomial prod_i P_i^{e_i}; zero exponents
/// are never stored.
using PMonomial = std::map<int, int>;

/// P-degree sum_i i * e_i.
int pmonomial_degree(const PMonomial& m);
PMonomial pmonomial_mul(const PMonomial& a, const PMonomial& b);
/// Monomial of a permutation's cycle type raised to `power` (+1 or -1 typically).
PMonomial pmonomial_of_cycle_type(const Partition& cycle_type, int power = 1);

/// Finite rational combination of Laurent monomials in the P_i. The P_i are
/// algebraically independent, so equality here is exact equality of symmetric
/// functions, with no truncation involved.
class PLaurent {
 public:
  using Terms = std::map<PMonomial, Rational>;

  void add(const PMonomial& m, const Rational& c);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const PMonomial& m) const;

  PLaurent& operator+=(const PLaurent& o);
  PLaurent& operator-=(const PLaurent& o);
  PLaurent& operator*=(const Rational& c);
  friend PLaurent operator+(PLaurent a, const PLaurent& b) { return a += b; }
  friend PLaurent operator-(PLaurent a, const PLaurent& b) { return a -= b; }
  friend PLaurent operator*(PLaurent a, const Rational& c) { return a *= c; }
  friend bool operator==(const PLaurent&, const PLaurent&) = default;

  /// Largest index i with P_i appearing; 0 for a constant.
  int max_index() const;
  /// Expansion in the p-basis up to degree n.
  PSeries to_series(int n) const;

 private:
  Terms terms_;
};

/// Character of the irreducible S_n representation lambda on the class mu,
/// by the Murnaghan-Nakayama rule. Memoized; safe for concurrent use.
long long mn_character(const Partition& lambda, const Partition& mu);

struct SchurTable {
  int n = 0;
  std::map<Partition, Rational, CanonicalOrder> coefficients;

  friend bool operator==(const SchurTable&, const SchurTable&) = default;
};

/// Coefficients of s_lambda, lambda |- n, in the degree-n part of `a`.
/// Every partition of n appears in the table, zeros included.
SchurTable schur_expand(const PSeries& a, int n);

nlohmann::json to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PSeries& a);
PSeries pseries_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SchurTable& t);
SchurTable schur_table_from_json(const nlohmann::json& j);

}  // namespace topweight
