#include "topweight/zagier.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "topweight/arith.hpp"
#include "topweight/parallel.hpp"

namespace topweight {

using nlohmann::json;

int ZagierTerm::n() const { return std::accumulate(a.begin(), a.end(), 0); }

int ZagierTerm::D() const {
  int out = m;
  for (int x : d) out = std::gcd(out, x);
  return out;
}

bool ZagierTerm::valid() const {
  if (k < 1 || m < 1 || r < 0 || s < 0) return false;
  if (static_cast<int>(d.size()) != s || static_cast<int>(a.size()) != s) return false;
  long long weighted = 0;
  for (int i = 0; i < s; ++i) {
    if (d[i] <= 0 || d[i] >= m || m % d[i] != 0 || a[i] < 1) return false;
    if (i > 0 && d[i - 1] >= d[i]) return false;
    weighted += static_cast<long long>(a[i]) * d[i];
  }
  return n() + r == k + 1 && weighted + g - 1 == static_cast<long long>(k) * m;
}

std::strong_ordering operator<=>(const ZagierTerm& x, const ZagierTerm& y) {
  return std::tie(x.m, x.k, x.r, x.d, x.a, x.g) <=> std::tie(y.m, y.k, y.r, y.d, y.a, y.g);
}

std::vector<ZagierTerm> enumerate_terms_bounded(int g, int max_m, int max_k) {
  if (g < 2) throw std::domain_error("the closed formula needs g >= 2; use z_0 or z_1");
  std::vector<ZagierTerm> out;
  for (int m = 1; m <= max_m; ++m) {
    std::vector<int> proper;
    for (auto x : divisors(m)) {
      if (x < m) proper.push_back(static_cast<int>(x));
    }
    for (int k = 1; k <= max_k; ++k) {
      const int target = k * m - g + 1;
      if (target < 0) continue;
      for (int r = 0; r <= k + 1; ++r) {
        const int count = k + 1 - r;
        // Multiplicities over the proper divisors with sum a = count and
        // sum a d = target.
        std::vector<int> mult(proper.size(), 0);
        std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int left, int weight) {
          if (i == proper.size()) {
            if (left != 0 || weight != 0) return;
            ZagierTerm t{g, k, m, r, 0, {}, {}};
            for (std::size_t j = 0; j < proper.size(); ++j) {
              if (mult[j] == 0) continue;
              t.d.push_back(proper[j]);
              t.a.push_back(mult[j]);
            }
            t.s = static_cast<int>(t.d.size());
            if (!t.valid()) throw std::logic_error("enumerated an invalid index tuple");
            out.push_back(std::move(t));
            return;
          }
          for (int x = 0; x <= left && x * proper[i] <= weight; ++x) {
            mult[i] = x;
            rec(i + 1, left - x, weight - x * proper[i]);
          }
          mult[i] = 0;
        };
        rec(0, count, target);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ZagierTerm> enumerate_terms(int g) { return enumerate_terms_bounded(g, 2 * g + 2, g); }

bool term_is_zero(const ZagierTerm& t) {
  for (int x : t.d) {
    if (moebius(t.m / x) == 0) return true;
  }
  return t.r == 0 && t.D() > 1;
}

Rational term_coefficient(const ZagierTerm& t) {
  if (!t.valid()) throw std::invalid_argument("invalid index tuple");
  if (term_is_zero(t)) return Rational(0);
  Rational c = Rational(factorial(t.k - 1)) * bernoulli(t.r) / Rational(factorial(t.r));
  if ((t.k - t.r) % 2 != 0) c = -c;
  c *= Rational(t.m).pow(t.r - 1);
  for (auto p : prime_divisors(t.D())) c *= Rational(1) - Rational(p).pow(-t.r);
  for (int i = 0; i < t.s; ++i) {
    c *= Rational(moebius(t.m / t.d[i])).pow(t.a[i]) / Rational(factorial(t.a[i]));
  }
  return c;
}

PMonomial term_monomial(const ZagierTerm& t) {
  PMonomial mono;
  mono[t.m] -= t.k;
  for (int i = 0; i < t.s; ++i) mono[t.d[i]] += t.a[i];
  std::erase_if(mono, [](const auto& kv) { return kv.second == 0; });
  return mono;
}

PLaurent term_laurent(const ZagierTerm& t) {
  PLaurent out;
  out.add(term_monomial(t), term_coefficient(t));
  return out;
}

PSeries term_value(const ZagierTerm& t, int truncation) { return term_laurent(t).to_series(truncation); }

PLaurent z_g_laurent(int g, unsigned jobs) {
  std::vector<ZagierTerm> live;
  for (auto& t : enumerate_terms(g)) {
    if (!term_is_zero(t)) live.push_back(std::move(t));
  }
  std::vector<Rational> coefficients(live.size());
  parallel_for(live.size(), jobs, [&](std::size_t i) { coefficients[i] = term_coefficient(live[i]); });
  PLaurent out;
  for (std::size_t i = 0; i < live.size(); ++i) out.add(term_monomial(live[i]), coefficients[i]);
  return out;
}

PSeries z_g(int g, int truncation, unsigned jobs) { return z_g_laurent(g, jobs).to_series(truncation); }

PSeries z_0(int truncation) {
  PSeries sum(truncation);
  for (int d = 1; d <= truncation; ++d) {
    const int mu = moebius(d);
    if (mu != 0) sum += pseries_log_unit(d, truncation) * Rational(mu, d);
  }
  const PSeries P1 = P_unit(1, truncation);
  return -(P1 * sum) + (P1 * P1 - P_unit(2, truncation)) * Rational(1, 2);
}

PSeries z_1(int truncation) {
  PSeries sum(truncation);
  for (int d = 1; d <= truncation; ++d) sum += pseries_log_unit(d, truncation) * Rational(totient(d), d);
  const PSeries P1 = P_unit(1, truncation);
  return sum * Rational(-1, 2) - P1 * P1 * P_power(2, -1, truncation) * Rational(1, 4) + P1 -
         PSeries::constant(Rational(3, 4), truncation);
}

PSeries z_series(int g, int truncation, unsigned jobs) {
  if (g < 0) throw std::domain_error("negative genus");
  if (g == 0) return z_0(truncation);
  if (g == 1) return z_1(truncation);
  return z_g(g, truncation, jobs);
}

int default_truncation(int g) { return 3 * g + 6; }

Rational top_weight_euler(int g, int n, unsigned jobs) {
  if (n < 0) throw std::domain_error("negative marking count");
  const PSeries z = z_series(g, n, jobs);
  return Rational(factorial(n)) * z.coeff(Partition(std::vector<int>(n, 1)));
}

Rational top_weight_euler_closed(int g, int n) {
  if (g < 0 || n <= g + 1 || 2 * g - 2 + n <= 0) throw std::domain_error("outside validity range");
  const Rational value = Rational(factorial(g + n - 2), factorial(g)) * bernoulli(g);
  return n % 2 == 1 ? value : -value;
}

SchurTable equivariant_table(int g, int n, unsigned jobs) {
  if (n < 0) throw std::domain_error("negative marking count");
  return schur_expand(z_series(g, n, jobs), n);
}

json to_json(const ZagierTerm& t) {
  return json{{"k", t.k}, {"m", t.m}, {"r", t.r}, {"d", t.d}, {"a", t.a}, {"coefficient", to_json(term_coefficient(t))}};
}

json terms_to_json(const std::vector<ZagierTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back(to_json(t));
  return out;
}

}  // namespace topweight
