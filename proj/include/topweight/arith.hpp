#pragma once

// Elementary number theory and integer partitions.

#include <cstdint>
#include <vector>

#include "topweight/rational.hpp"

namespace topweight {

/// Bernoulli number B_r with t/(e^t - 1) = sum B_r t^r / r!.
///
/// Note the sign convention: B_1 = -1/2. Values are memoized behind a mutex,
/// so concurrent callers are safe.
Rational bernoulli(int r);

/// Moebius function; throws std::domain_error for n = 0.
int moebius(std::int64_t n);

/// Euler totient; throws std::domain_error for n = 0.
std::int64_t totient(std::int64_t n);

/// All divisors of n, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Distinct prime divisors of n, ascending.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

Integer factorial(int n);

/// binomial(e, i) for any integer e and i >= 0: e(e-1)...(e-i+1)/i!.
Integer binomial(std::int64_t e, int i);

/// A partition stored as a weakly decreasing list of positive parts.
class Partition {
 public:
  Partition() = default;
  /// Parts are sorted into decreasing order; throws on a non-positive part.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// Exponent-vector view: entry i (1 <= i <= size) counts parts equal to i.
  /// Entry 0 is unused and always zero.
  std::vector<int> multiplicities() const;

  /// Centralizer order z_mu = prod i^{m_i} m_i!.
  Integer centralizer_order() const;

  /// Sign of a permutation with this cycle type.
  int sign() const;

  /// Union of the multisets of parts.
  Partition merged(const Partition& other) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Canonical order: by size ascending, then reverse lexicographic on parts,
/// so (4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1).
struct CanonicalOrder {
  bool operator()(const Partition& a, const Partition& b) const;
};

/// All partitions of n, in reverse lexicographic order: (n) first, (1^n) last.
std::vector<Partition> partitions_of(int n);

/// Cycle type of a permutation given as an image vector.
Partition cycle_type(const std::vector<int>& perm);

}  // namespace topweight
