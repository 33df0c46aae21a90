#pragma once

// Exact counts behind the mean values of f_3 and f_6: I1, I2, the eighth
// moment of f_6, the set of integers with several representations as a
// difference of two cubes, and the correlation count of cubes against a
// sample set.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

enum class MomentLabel { I1, I2, Hua8, L52 };

std::string to_string(MomentLabel label);

struct MomentCount {
  MomentLabel label = MomentLabel::I1;
  u64 X = 0;   // ambient scale when the count is stated in terms of X
  u64 P3 = 0;
  u64 P6 = 0;
  u64 sample_size = 0;
  u64 count = 0;
  /// Labelled pieces summing to `count` (diagonal / unique / multiple ...).
  std::vector<std::pair<std::string, u64>> parts = {};

  u64 part(const std::string& name) const;
};

struct MultiplicitySet {
  u64 P3;
  std::vector<i64> members;  // strictly increasing, zero excluded
  u64 max_multiplicity;
};

/// Sorted distinct values with multiplicities.
struct SparseSpectrum {
  std::vector<i64> values;
  std::vector<u64> counts;

  /// Tallies `samples`; uses a dense counting array when the value range is
  /// at most 10^8 and sorting otherwise.
  static SparseSpectrum tally(std::vector<i64> samples);
  u64 at(i64 value) const;
  u64 total() const;
};

/// sum_m (s*s)[m]^2 where s*s is the additive self-convolution of `s`:
/// the number of solutions of a + b = c + d with weights.
u128 sumset_collisions(const SparseSpectrum& s);

MomentCount count_I2(u64 P6);
MomentCount count_I1(u64 X);
MomentCount hua_moment8(u64 P6);
MultiplicitySet cube_multiplicity(u64 P3);
MomentCount correlation_L52(u64 P3, std::span<const i64> sample);

}  // namespace circleforge
