#pragma once

// Exact counts R(n) of representations n = x1^2+x2^2+x3^3+x4^3+x5^6+x6^6
// with every x_i >= 1, for single targets and for full ranges.

#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

/// Largest dense spectrum length accepted (entries).
inline constexpr u64 kSpectrumEntryBudget = 200'000'001;

/// Single-target counting budget for n.
inline constexpr i64 kSingleTargetLimit = 1'000'000'000;

/// Full-range counting budget for X.
inline constexpr u64 kRangeLimit = 20'000'000;

/// Below this X the range counter accumulates directly instead of using
/// the modular transform.
inline constexpr u64 kDirectRangeLimit = 16'384;

/// c[m] = #{(x,y) in [1,P]^2 : x^k + y^k = m}, m in [0, 2P^k].
struct PairSpectrum {
  unsigned k;
  u64 P;
  std::vector<std::uint32_t> counts;

  u64 total() const;
};

PairSpectrum pair_spectrum(unsigned k, u64 P);

/// R(n) for n in [0, X]. Stored in 32 bits while every value fits, else 64.
class RangeCounts {
 public:
  RangeCounts(u64 X, std::vector<u64> values);

  u64 limit() const { return X_; }
  u64 operator[](u64 n) const;
  bool narrow() const { return std::holds_alternative<std::vector<std::uint32_t>>(values_); }
  /// Sum of R(n) over n <= X.
  u64 total() const;

 private:
  u64 X_;
  std::variant<std::vector<std::uint32_t>, std::vector<u64>> values_;
};

enum class RangePath { Automatic, Direct, Transform };

/// R(n) by meet-in-the-middle: cube and sixth-power tuples joined against
/// square-pair counts computed segment by segment.
u64 rep_count_single(i64 n);

/// g(m) = #{(x3,x4,x5,x6) in [1,P3]^2 x [1,P6]^2 : x3^3+x4^3+x5^6+x6^6 = m},
/// over the full range m <= 2 P3^3 + 2 P6^6 with P_k = floor(X^{1/k}).
std::vector<std::uint32_t> cube_sixth_spectrum(u64 X);

/// R(n) for every n <= X by exact convolution of square-pair counts with g.
/// `square_pairs`, when given, must be pair_spectrum(2, floor(sqrt X)).
RangeCounts rep_count_range(u64 X, RangePath path = RangePath::Automatic,
                            const PairSpectrum* square_pairs = nullptr);

/// "WSPC1" spectrum cache: magic, LE u64 k, P, L, then L LE u32 counts, then
/// LE u64 sum of counts mod 2^64.
void write_spectrum(const std::filesystem::path& path, const PairSpectrum& spectrum);
PairSpectrum read_spectrum(const std::filesystem::path& path);

/// Loads pair_spectrum(k, P) from `cache_dir` or builds and stores it.
PairSpectrum cached_pair_spectrum(unsigned k, u64 P, const std::filesystem::path& cache_dir);

}  // namespace circleforge
