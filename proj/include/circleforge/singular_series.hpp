#pragma once

// Terms A(q;n) of the singular series for two squares, two cubes and two
// sixth powers, the truncated series S(n;W), and exact congruence counts
// M_n(q) that serve as an independent oracle for both.

#include <cstdint>
#include <span>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

/// Default truncation level for predictions.
inline constexpr u64 kDefaultTruncation = 1000;

/// Largest modulus accepted by the exact congruence counter.
inline constexpr u64 kCongruenceModulusLimit = 10000;

struct SeriesTerm {
  u64 q;
  i64 n;
  double value;           // real part of A(q;n)
  double imag_residual;   // imaginary part of the raw complex sum
};

struct SingularSeriesValue {
  i64 n;
  u64 W;
  double value;           // S(n;W)
  double tail_estimate;   // |S(n;2W) - S(n;W)|
};

struct CongruenceCount {
  u64 q;
  i64 n;
  u128 count;
};

/// A(q;n) = sum over a coprime to q of q^{-6} S_2^2 S_3^2 S_6^2 e(-na/q),
/// evaluated from its defining sum (Gauss sums grouped by power classes).
SeriesTerm series_term(u64 q, i64 n);

/// Number of solutions of x1^2+x2^2+x3^3+x4^3+x5^6+x6^6 = n (mod q).
CongruenceCount congruence_count(u64 q, i64 n);

/// congruence_count for one modulus and many n: the residue spectra are
/// convolved once, each count is then a length-q dot product.
class CongruenceCounter {
 public:
  explicit CongruenceCounter(u64 q);

  u64 modulus() const { return q_; }
  CongruenceCount count(i64 n) const;

 private:
  u64 q_;
  std::vector<u64> lower_;   // squares and cubes, four variables
  std::vector<u64> sixths_;  // two sixth powers
};

/// p^{-5h} M_n(p^h).
double local_density(u64 p, i64 n, unsigned h);

/// S(n;W) assembled multiplicatively from prime-power terms.
SingularSeriesValue truncated_singular_series(i64 n, u64 W);

/// Literal sum of series_term(q,n) over q <= W; cross-check path, W <= 500.
double truncated_singular_series_literal(i64 n, u64 W);

/// Precomputed A(p^h; r) for every prime power p^h <= limit and every
/// residue r, with the bookkeeping needed to assemble A(q;n) for q <= limit
/// by multiplicativity. Immutable after construction; safe to share.
class SingularSeriesTable {
 public:
  explicit SingularSeriesTable(u64 limit);

  u64 limit() const { return limit_; }

  /// A(p^h; n) for a prime power p^h <= limit.
  double prime_power_term(u64 prime_power, i64 n) const;

  /// A(q;n) for all q in [0, limit] (index 0 unused) written into `terms`.
  void terms(i64 n, std::vector<double>& terms) const;

  /// S(n;W) and S(n;2W); requires 2W <= limit.
  SingularSeriesValue evaluate(i64 n, u64 W) const;
  SingularSeriesValue evaluate(i64 n, u64 W, std::vector<double>& scratch) const;

  /// S(n;W) with tail estimate for each n in `targets`; order preserved.
  std::vector<SingularSeriesValue> evaluate_batch(std::span<const i64> targets, u64 W) const;

 private:
  u64 limit_;
  std::vector<u64> prime_powers_;              // ascending
  std::vector<std::vector<double>> tables_;    // A(p^h; r), r < p^h, parallel to prime_powers_
  std::vector<u64> leading_part_;              // q -> prime power of its least prime
  std::vector<std::uint32_t> leading_index_;   // q -> index into prime_powers_
};

/// Prime-power terms A(p^h; r) for all residues r, built from the class
/// structure of p^h; exposed for tests.
std::vector<double> prime_power_term_table(u64 prime_power);

}  // namespace circleforge
