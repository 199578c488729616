#include "topweight/symfunc.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>

namespace topweight {

using nlohmann::json;

PSeries::PSeries(int truncation) : truncation_(truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
}

PSeries PSeries::constant(const Rational& c, int truncation) {
  return monomial(Partition(), c, truncation);
}

PSeries PSeries::monomial(const Partition& lambda, const Rational& c, int truncation) {
  PSeries out(truncation);
  out.add_term(lambda, c);
  return out;
}

Rational PSeries::coeff(const Partition& lambda) const {
  if (lambda.size() > truncation_) throw std::out_of_range("beyond truncation");
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Rational() : it->second;
}

void PSeries::add_term(const Partition& lambda, const Rational& c) {
  if (lambda.size() > truncation_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(lambda, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PSeries PSeries::truncated(int n) const {
  if (n > truncation_) throw std::out_of_range("beyond truncation");
  PSeries out(n);
  for (const auto& [lambda, c] : terms_) {
    if (lambda.size() > n) break;  // terms are ordered by size
    out.terms_.emplace_hint(out.terms_.end(), lambda, c);
  }
  return out;
}

PSeries PSeries::degree_part(int n) const {
  PSeries out(truncation_);
  for (const auto& [lambda, c] : terms_) {
    if (lambda.size() == n) out.terms_.emplace_hint(out.terms_.end(), lambda, c);
  }
  return out;
}

PSeries& PSeries::operator+=(const PSeries& o) {
  if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
  for (const auto& [lambda, c] : o.terms_) add_term(lambda, c);
  return *this;
}

PSeries& PSeries::operator-=(const PSeries& o) { return *this += -o; }

PSeries& PSeries::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [lambda, v] : terms_) v *= c;
  return *this;
}

PSeries PSeries::operator-() const {
  PSeries out = *this;
  return out *= Rational(-1);
}

PSeries operator*(const PSeries& a, const PSeries& b) {
  const int n = std::min(a.truncation_, b.truncation_);
  PSeries out(n);
  for (const auto& [la, ca] : a.terms_) {
    if (la.size() > n) break;
    for (const auto& [lb, cb] : b.terms_) {
      if (la.size() + lb.size() > n) break;
      out.add_term(la.merged(lb), ca * cb);
    }
  }
  return out;
}

bool operator==(const PSeries& a, const PSeries& b) {
  if (a.truncation_ == b.truncation_) return a.terms_ == b.terms_;
  const int n = std::min(a.truncation_, b.truncation_);
  return a.truncated(n).terms_ == b.truncated(n).terms_;
}

PSeries pseries_add(const PSeries& a, const PSeries& b) { return a + b; }

PSeries pseries_mul(const PSeries& a, const PSeries& b) { return a * b; }

PSeries pseries_inv(const PSeries& a) {
  const Rational c0 = a.coeff(Partition());
  if (c0.is_zero()) throw std::domain_error("non-unit series");
  const int n = a.truncation();
  // Graded recursion: b_0 = 1/c0, b_d = -(1/c0) sum_{j=1}^{d} a_j b_{d-j}.
  std::vector<PSeries> a_deg, b_deg;
  for (int d = 0; d <= n; ++d) a_deg.push_back(a.degree_part(d));
  const Rational inv0 = c0.reciprocal();
  b_deg.push_back(PSeries::constant(inv0, n));
  for (int d = 1; d <= n; ++d) {
    PSeries acc(n);
    for (int j = 1; j <= d; ++j) {
      if (a_deg[j].is_zero() || b_deg[d - j].is_zero()) continue;
      acc += a_deg[j] * b_deg[d - j];
    }
    b_deg.push_back(acc * (-inv0));
  }
  PSeries out(n);
  for (const auto& part : b_deg) out += part;
  return out;
}

PSeries pseries_log_unit(int d, int n) {
  if (d < 1) throw std::invalid_argument("log unit index must be positive");
  PSeries out(n);
  for (int i = 1; i * d <= n; ++i) {
    out.add_term(Partition(std::vector<int>(static_cast<std::size_t>(i), d)),
                 Rational(i % 2 == 1 ? 1 : -1, i));
  }
  return out;
}

PSeries P_unit(int m, int n) { return P_power(m, 1, n); }

PSeries P_power(int m, int e, int n) {
  if (m < 1) throw std::invalid_argument("P index must be positive");
  PSeries out(n);
  for (int i = 0; i * m <= n; ++i) {
    out.add_term(Partition(std::vector<int>(static_cast<std::size_t>(i), m)),
                 Rational(binomial(e, i)));
  }
  return out;
}

PSeries psi(const Partition& cycle_type, int n) { return PSeries::monomial(cycle_type, 1, n); }

PSeries P_of_permutation(const Partition& cycle_type, int n) {
  PSeries out = PSeries::constant(1, n);
  for (int part : cycle_type.parts()) out = out * P_unit(part, n);
  return out;
}

Rational coeff(const PSeries& a, const Partition& lambda) { return a.coeff(lambda); }

int pmonomial_degree(const PMonomial& m) {
  int deg = 0;
  for (const auto& [i, e] : m) deg += i * e;
  return deg;
}

PMonomial pmonomial_mul(const PMonomial& a, const PMonomial& b) {
  PMonomial out = a;
  for (const auto& [i, e] : b) {
    const int v = (out[i] += e);
    if (v == 0) out.erase(i);
  }
  return out;
}

PMonomial pmonomial_of_cycle_type(const Partition& cycle_type, int power) {
  PMonomial out;
  for (int part : cycle_type.parts()) {
    const int v = (out[part] += power);
    if (v == 0) out.erase(part);
  }
  return out;
}

void PLaurent::add(const PMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Rational PLaurent::coeff(const PMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational() : it->second;
}

PLaurent& PLaurent::operator+=(const PLaurent& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

PLaurent& PLaurent::operator-=(const PLaurent& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

PLaurent& PLaurent::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

int PLaurent::max_index() const {
  int out = 0;
  for (const auto& [m, c] : terms_) {
    if (!m.empty()) out = std::max(out, m.rbegin()->first);
  }
  return out;
}

PSeries PLaurent::to_series(int n) const {
  std::map<std::pair<int, int>, PSeries> powers;
  auto power = [&](int i, int e) -> const PSeries& {
    auto it = powers.find({i, e});
    if (it == powers.end()) it = powers.emplace(std::pair{i, e}, P_power(i, e, n)).first;
    return it->second;
  };
  PSeries out(n);
  for (const auto& [m, c] : terms_) {
    PSeries term = PSeries::constant(c, n);
    for (const auto& [i, e] : m) {
      if (i > n) continue;  // P_i = 1 below degree i
      term = term * power(i, e);
    }
    out += term;
  }
  return out;
}

namespace {

using CharKey = std::pair<std::vector<int>, std::vector<int>>;

long long mn_recursive(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t at,
                       std::map<CharKey, long long>& local);

// Strips a rim hook of length k from lambda in every possible way, through
// the beta-set (first column hook lengths) of lambda.
long long strip_hooks(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t at,
                      std::map<CharKey, long long>& local) {
  const int k = mu[at];
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beta(lambda.size());
  for (int i = 0; i < len; ++i) beta[i] = lambda[i] + len - 1 - i;
  std::set<int> beta_set(beta.begin(), beta.end());
  long long total = 0;
  for (int b : beta) {
    const int target = b - k;
    if (target < 0 || beta_set.count(target)) continue;
    int between = 0;
    for (int x : beta) {
      if (x > target && x < b) ++between;
    }
    std::vector<int> next_beta;
    for (int x : beta) next_beta.push_back(x == b ? target : x);
    std::sort(next_beta.begin(), next_beta.end(), std::greater<>());
    std::vector<int> next;
    for (int i = 0; i < len; ++i) {
      const int part = next_beta[i] - (len - 1 - i);
      if (part > 0) next.push_back(part);
    }
    const long long sub = mn_recursive(next, mu, at + 1, local);
    total += (between % 2 == 0 ? sub : -sub);
  }
  return total;
}

std::shared_mutex& char_mutex() {
  static std::shared_mutex m;
  return m;
}

std::map<CharKey, long long>& char_memo() {
  static std::map<CharKey, long long> memo;
  return memo;
}

long long mn_recursive(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t at,
                       std::map<CharKey, long long>& local) {
  if (at == mu.size()) return lambda.empty() ? 1 : 0;
  CharKey key{lambda, std::vector<int>(mu.begin() + static_cast<long>(at), mu.end())};
  if (auto it = local.find(key); it != local.end()) return it->second;
  {
    std::shared_lock lock(char_mutex());
    auto& memo = char_memo();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const long long value = strip_hooks(lambda, mu, at, local);
  local.emplace(std::move(key), value);
  return value;
}

}  // namespace

long long mn_character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) {
    throw std::invalid_argument("mn_character: partitions of different sizes");
  }
  std::map<CharKey, long long> local;
  const long long value = mn_recursive(lambda.parts(), mu.parts(), 0, local);
  std::unique_lock lock(char_mutex());
  char_memo().merge(local);
  return value;
}

SchurTable schur_expand(const PSeries& a, int n) {
  if (n > a.truncation()) throw std::out_of_range("beyond truncation");
  SchurTable table;
  table.n = n;
  const auto parts = partitions_of(n);
  for (const auto& lambda : parts) {
    Rational c;
    for (const auto& [mu, coeff] : a.terms()) {
      if (mu.size() != n) continue;
      c += coeff * Rational(mn_character(lambda, mu));
    }
    table.coefficients.emplace(lambda, c);
  }
  return table;
}

json to_json(const Rational& q) { return json{{"num", q.numerator_str()}, {"den", q.denominator_str()}}; }

Rational rational_from_json(const json& j) {
  return Rational::from_strings(j.at("num").get<std::string>(), j.at("den").get<std::string>());
}

namespace {

json term_json(const Partition& lambda, const Rational& c) {
  return json{{"partition", lambda.parts()}, {"num", c.numerator_str()}, {"den", c.denominator_str()}};
}

Partition partition_from_json(const json& j) {
  auto parts = j.get<std::vector<int>>();
  if (!std::is_sorted(parts.begin(), parts.end(), std::greater<>())) {
    throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  return Partition(std::move(parts));
}

}  // namespace

json to_json(const PSeries& a) {
  json terms = json::array();
  for (const auto& [lambda, c] : a.terms()) terms.push_back(term_json(lambda, c));
  return json{{"truncation", a.truncation()}, {"terms", std::move(terms)}};
}

PSeries pseries_from_json(const json& j) {
  PSeries out(j.at("truncation").get<int>());
  for (const auto& t : j.at("terms")) {
    const Partition lambda = partition_from_json(t.at("partition"));
    const Rational c = rational_from_json(t);
    if (lambda.size() > out.truncation()) throw std::invalid_argument("term beyond truncation");
    if (c.is_zero()) throw std::invalid_argument("zero coefficient in serialized series");
    out.add_term(lambda, c);
  }
  return out;
}

json to_json(const SchurTable& t) {
  json terms = json::array();
  for (const auto& [lambda, c] : t.coefficients) terms.push_back(term_json(lambda, c));
  return json{{"n", t.n}, {"terms", std::move(terms)}};
}

SchurTable schur_table_from_json(const json& j) {
  SchurTable t;
  t.n = j.at("n").get<int>();
  for (const auto& term : j.at("terms")) {
    const Partition lambda = partition_from_json(term.at("partition"));
    if (lambda.size() != t.n) throw std::invalid_argument("Schur table entry of wrong size");
    t.coefficients.emplace(lambda, rational_from_json(term));
  }
  return t;
}

}  // namespace topweight
