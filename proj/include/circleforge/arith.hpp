#pragma once

// Exact integer helpers shared by every module: integer roots, modular
// products, trial-division factorization, and a small error vocabulary.

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circleforge {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using cplx = std::complex<double>;

/// Raised when an argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a memory or time budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

inline void require_budget(bool ok, const std::string& what) {
  if (!ok) throw BudgetError(what);
}

constexpr u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Least nonnegative residue of n modulo m.
constexpr u64 reduce(i64 n, u64 m) {
  i128 r = static_cast<i128>(n) % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

/// x^k, or ~0 on overflow of 64 bits.
constexpr u64 saturating_pow(u64 x, unsigned k) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= x;
    if (acc > ~u64{0}) return ~u64{0};
  }
  return static_cast<u64>(acc);
}

/// floor(n^(1/k)) in exact integer arithmetic.
constexpr u64 iroot(u64 n, unsigned k) {
  if (k == 1 || n < 2) return n;
  u64 lo = 1, hi = 1;
  while (saturating_pow(hi, k) <= n) hi *= 2;
  // invariant: lo^k <= n < hi^k
  while (hi - lo > 1) {
    u64 mid = lo + (hi - lo) / 2;
    if (saturating_pow(mid, k) <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// ceil(n^(1/k)) for n >= 0.
constexpr u64 iroot_ceil(u64 n, unsigned k) {
  u64 r = iroot(n, k);
  return saturating_pow(r, k) == n ? r : r + 1;
}

struct PrimePower {
  u64 p;
  unsigned e;
  u64 value;
};

/// Trial-division factorization; intended for moduli up to about 10^12.
inline std::vector<PrimePower> factorize(u64 n) {
  std::vector<PrimePower> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower f{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++f.e;
      f.value *= p;
    }
    out.push_back(f);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

/// Primes up to `limit` by the sieve of Eratosthenes.
inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

/// e(x) = exp(2 pi i x).
inline cplx unit_phase(double x) {
  const double t = 2.0 * std::numbers::pi * x;
  return {std::cos(t), std::sin(t)};
}

/// Table of q-th roots of unity, e(j/q) for j in [0, q).
class RootsOfUnity {
 public:
  explicit RootsOfUnity(u64 q) : q_(q), table_(q) {
    for (u64 j = 0; j < q; ++j) {
      // fold to |j/q| <= 1/2 so the angle stays small
      const double x = (2 * j <= q) ? static_cast<double>(j) / q
                                    : -static_cast<double>(q - j) / q;
      table_[j] = unit_phase(x);
    }
  }

  u64 modulus() const { return q_; }
  const cplx& operator[](u64 j) const { return table_[j]; }

 private:
  u64 q_;
  std::vector<cplx> table_;
};

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx z) {
    add_part(re_, re_c_, z.real());
    add_part(im_, im_c_, z.imag());
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

std::string to_string(u128 v);

}  // namespace circleforge
