#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// calls into the library's algorithms; everything is direct enumeration.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

inline cplx e(long double x) {
  const long double t = 2.0L * std::numbers::pi_v<long double> * (x - std::floor(x));
  return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
}

inline u64 pow_mod(u64 x, int k, u64 q) {
  unsigned __int128 r = 1 % q;
  for (int i = 0; i < k; ++i) r = r * (x % q) % q;
  return static_cast<u64>(r);
}

inline u64 ipow(u64 x, int k) {
  u64 r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

inline u64 gcd(u64 a, u64 b) {
  while (b) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// sum_{r=1}^{q} e(a r^k / q), long double phases.
inline cplx gauss(int k, u64 q, u64 a) {
  cplx s = 0;
  for (u64 r = 1; r <= q; ++r) {
    const u64 m = static_cast<u64>(static_cast<unsigned __int128>(a) * pow_mod(r, k, q) % q);
    s += e(static_cast<long double>(m) / q);
  }
  return s;
}

/// R(n) for every n <= X by six nested loops with pruning.
inline std::vector<u64> representation_counts(u64 X) {
  std::vector<u64> R(X + 1, 0);
  for (u64 x5 = 1; ipow(x5, 6) + 5 <= X; ++x5)
    for (u64 x6 = 1; ipow(x5, 6) + ipow(x6, 6) + 4 <= X; ++x6)
      for (u64 x3 = 1; ipow(x5, 6) + ipow(x6, 6) + ipow(x3, 3) + 3 <= X; ++x3)
        for (u64 x4 = 1; ipow(x5, 6) + ipow(x6, 6) + ipow(x3, 3) + ipow(x4, 3) + 2 <= X; ++x4) {
          const u64 base = ipow(x5, 6) + ipow(x6, 6) + ipow(x3, 3) + ipow(x4, 3);
          for (u64 x1 = 1; base + x1 * x1 + 1 <= X; ++x1)
            for (u64 x2 = 1; base + x1 * x1 + x2 * x2 <= X; ++x2) ++R[base + x1 * x1 + x2 * x2];
        }
  return R;
}

/// R(n) for one n: five loops and a perfect-square test for x2.
inline u64 representation_count(u64 n) {
  u64 total = 0;
  for (u64 x5 = 1; ipow(x5, 6) + 5 <= n; ++x5)
    for (u64 x6 = 1; ipow(x5, 6) + ipow(x6, 6) + 4 <= n; ++x6)
      for (u64 x3 = 1; ipow(x5, 6) + ipow(x6, 6) + ipow(x3, 3) + 3 <= n; ++x3)
        for (u64 x4 = 1; ipow(x5, 6) + ipow(x6, 6) + ipow(x3, 3) + ipow(x4, 3) + 2 <= n; ++x4) {
          const u64 base = ipow(x5, 6) + ipow(x6, 6) + ipow(x3, 3) + ipow(x4, 3);
          for (u64 x1 = 1; base + x1 * x1 + 1 <= n; ++x1) {
            const u64 rest = n - base - x1 * x1;
            u64 y = static_cast<u64>(std::sqrt(static_cast<double>(rest)));
            while (y * y > rest) --y;
            while ((y + 1) * (y + 1) <= rest) ++y;
            if (y >= 1 && y * y == rest) ++total;
          }
        }
  return total;
}

/// counts[m] = #{x mod q : x^k = m}.
inline std::vector<u64> power_counts(u64 q, int k) {
  std::vector<u64> c(q, 0);
  for (u64 x = 0; x < q; ++x) ++c[pow_mod(x, k, q)];
  return c;
}

inline std::vector<unsigned __int128> cyclic(const std::vector<unsigned __int128>& a,
                                             const std::vector<unsigned __int128>& b) {
  const u64 q = a.size();
  std::vector<unsigned __int128> c(q, 0);
  for (u64 i = 0; i < q; ++i)
    for (u64 j = 0; j < q; ++j) c[(i + j) % q] += a[i] * b[j];
  return c;
}

/// M_n(q) for every residue n by quadratic-time cyclic convolution.
inline std::vector<unsigned __int128> congruence_distribution(u64 q) {
  auto widen = [](const std::vector<u64>& v) {
    return std::vector<unsigned __int128>(v.begin(), v.end());
  };
  const auto s2 = widen(power_counts(q, 2));
  const auto s3 = widen(power_counts(q, 3));
  const auto s6 = widen(power_counts(q, 6));
  return cyclic(cyclic(cyclic(s2, s2), cyclic(s3, s3)), cyclic(s6, s6));
}

inline int mobius(u64 n) {
  int mu = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

/// A(q;n) = sum_{d | q} mu(q/d) d^{-5} M_n(d).
inline double series_term(u64 q, i64 n) {
  double total = 0;
  for (u64 d = 1; d <= q; ++d) {
    if (q % d) continue;
    const int mu = mobius(q / d);
    if (mu == 0) continue;
    const auto dist = congruence_distribution(d);
    const u64 r = static_cast<u64>(((n % static_cast<i64>(d)) + static_cast<i64>(d)) % static_cast<i64>(d));
    total += mu * static_cast<double>(dist[r]) / std::pow(static_cast<double>(d), 5);
  }
  return total;
}

/// Weyl sum at a/q with long double phases.
inline cplx weyl(int k, u64 P, u64 a, u64 q) {
  cplx s = 0;
  for (u64 x = 1; x <= P; ++x) {
    const u64 m = static_cast<u64>(static_cast<unsigned __int128>(a % q) * pow_mod(x, k, q) % q);
    s += e(static_cast<long double>(m) / q);
  }
  return s;
}

/// #{(x1..x4) in [1,P]^4 : x1^k + x2^k = x3^k + x4^k}.
inline u64 equal_pair_sums(int k, u64 P) {
  u64 c = 0;
  for (u64 a = 1; a <= P; ++a)
    for (u64 b = 1; b <= P; ++b)
      for (u64 x = 1; x <= P; ++x)
        for (u64 y = 1; y <= P; ++y) c += ipow(a, k) + ipow(b, k) == ipow(x, k) + ipow(y, k);
  return c;
}

/// x1^3 - x2^3 = y1^6 + y2^6 - y3^6 - y4^6 with x in [1,P3], y in [1,P6].
inline u64 cube_sixth_solutions(u64 P3, u64 P6) {
  u64 c = 0;
  for (u64 x1 = 1; x1 <= P3; ++x1)
    for (u64 x2 = 1; x2 <= P3; ++x2)
      for (u64 y1 = 1; y1 <= P6; ++y1)
        for (u64 y2 = 1; y2 <= P6; ++y2)
          for (u64 y3 = 1; y3 <= P6; ++y3)
            for (u64 y4 = 1; y4 <= P6; ++y4) {
              const i64 lhs = static_cast<i64>(ipow(x1, 3)) - static_cast<i64>(ipow(x2, 3));
              const i64 rhs = static_cast<i64>(ipow(y1, 6) + ipow(y2, 6)) -
                              static_cast<i64>(ipow(y3, 6) + ipow(y4, 6));
              c += lhs == rhs;
            }
  return c;
}

/// Sum over solutions of y1^6+..+y4^6 = y5^6+..+y8^6 in [1,P]^8.
inline u64 eighth_moment(u64 P) {
  std::map<u64, u64> quad;
  for (u64 a = 1; a <= P; ++a)
    for (u64 b = 1; b <= P; ++b)
      for (u64 c = 1; c <= P; ++c)
        for (u64 d = 1; d <= P; ++d) ++quad[ipow(a, 6) + ipow(b, 6) + ipow(c, 6) + ipow(d, 6)];
  u64 total = 0;
  for (const auto& [value, count] : quad) total += count * count;
  return total;
}

/// Nonzero m with at least two representations x1^3 - x2^3, ascending.
inline std::vector<i64> multiple_differences(u64 P3) {
  std::map<i64, u64> reps;
  for (u64 a = 1; a <= P3; ++a)
    for (u64 b = 1; b <= P3; ++b)
      if (a != b) ++reps[static_cast<i64>(ipow(a, 3)) - static_cast<i64>(ipow(b, 3))];
  std::vector<i64> out;
  for (const auto& [m, c] : reps)
    if (c >= 2) out.push_back(m);
  return out;
}

/// #{(x1,x2,n1,n2) : x1^3 + n1 = x2^3 + n2}.
inline u64 correlation(u64 P3, const std::vector<i64>& Z) {
  u64 c = 0;
  for (u64 a = 1; a <= P3; ++a)
    for (u64 b = 1; b <= P3; ++b)
      for (i64 n1 : Z)
        for (i64 n2 : Z)
          c += static_cast<i64>(ipow(a, 3)) + n1 == static_cast<i64>(ipow(b, 3)) + n2;
  return c;
}

/// K(alpha) by direct summation.
inline cplx exponential_sample(const std::vector<i64>& Z, long double alpha) {
  cplx s = 0;
  for (i64 n : Z) s += e(-alpha * static_cast<long double>(n));
  return s;
}

}  // namespace oracle
