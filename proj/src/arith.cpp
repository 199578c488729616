#include "topweight/arith.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace topweight {

namespace {

std::vector<std::int64_t> factor_primes(std::int64_t n) {
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

void require_positive(std::int64_t n, const char* what) {
  if (n <= 0) throw std::domain_error(std::string(what) + ": argument must be positive");
}

}  // namespace

Rational bernoulli(int r) {
  if (r < 0) throw std::domain_error("bernoulli: negative index");
  static std::mutex mutex;
  static std::vector<Rational> table;
  std::lock_guard lock(mutex);
  if (static_cast<int>(table.size()) <= r) {
    // Akiyama-Tanigawa: row m of the triangle leaves B_m (with B_1 = +1/2)
    // in slot 0. The whole table is rebuilt up to r.
    const int top = r;
    std::vector<Rational> row(static_cast<std::size_t>(top) + 1);
    table.clear();
    for (int m = 0; m <= top; ++m) {
      row[m] = Rational(1, m + 1);
      for (int j = m; j >= 1; --j) row[j - 1] = Rational(j) * (row[j - 1] - row[j]);
      table.push_back(m == 1 ? -row[0] : row[0]);
    }
  }
  return table[r];
}

int moebius(std::int64_t n) {
  require_positive(n, "moebius");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::int64_t totient(std::int64_t n) {
  require_positive(n, "totient");
  std::int64_t out = n;
  for (std::int64_t p : factor_primes(n)) out = out / p * (p - 1);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  require_positive(n, "divisors");
  std::vector<std::int64_t> low, high;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  require_positive(n, "prime_divisors");
  return factor_primes(n);
}

Integer factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Integer binomial(std::int64_t e, int i) {
  if (i < 0) return 0;
  Integer num = 1;
  for (int j = 0; j < i; ++j) num *= Integer(static_cast<long>(e - j));
  return num / factorial(i);
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  for (int p : parts_) {
    if (p <= 0) throw std::invalid_argument("partition parts must be positive");
    size_ += p;
  }
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> m(static_cast<std::size_t>(size_) + 1, 0);
  for (int p : parts_) ++m[p];
  return m;
}

Integer Partition::centralizer_order() const {
  Integer z = 1;
  const auto m = multiplicities();
  for (std::size_t i = 1; i < m.size(); ++i) {
    for (int j = 0; j < m[i]; ++j) z *= static_cast<long>(i);
    z *= factorial(m[i]);
  }
  return z;
}

int Partition::sign() const { return (size_ - length()) % 2 == 0 ? 1 : -1; }

Partition Partition::merged(const Partition& other) const {
  std::vector<int> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return Partition(std::move(all));
}

bool CanonicalOrder::operator()(const Partition& a, const Partition& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(b.parts().begin(), b.parts().end(), a.parts().begin(),
                                      a.parts().end());
}

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::domain_error("partitions_of: negative size");
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  // Successor in reverse lexicographic order: lower the rightmost part > 1
  // and refill greedily.
  std::vector<int> cur{n};
  while (true) {
    out.emplace_back(cur);
    int rest = 0;
    while (!cur.empty() && cur.back() == 1) {
      cur.pop_back();
      ++rest;
    }
    if (cur.empty()) break;
    const int part = --cur.back();
    ++rest;
    while (rest > 0) {
      const int take = std::min(part, rest);
      cur.push_back(take);
      rest -= take;
    }
  }
  return out;
}

Partition cycle_type(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::vector<int> lengths;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition(std::move(lengths));
}

}  // namespace topweight
