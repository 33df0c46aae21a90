#pragma once

// Complete exponential sums S_k(q,a), the multiplicative majorant w_k(q),
// and the leading constant of the asymptotic formula for R(n).

#include <cstdint>
#include <utility>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

/// Throws PreconditionError unless k is one of the exponents 2, 3, 6.
void require_exponent(int k);

struct GaussSumValue {
  int k;
  u64 q;
  u64 a;
  cplx value;
};

struct MajorantValue {
  int k;
  u64 q;
  double value;
};

struct LeadingConstant {
  double value;               // (27/32) 2^(1/3) Gamma(4/3)^6
  double gamma_product_form;  // Gamma(3/2)^2 Gamma(4/3)^2 Gamma(7/6)^2 / Gamma(2)
};

/// Worst case of |q^{-1} S_k(q,a)| / w_k(q) over q <= q_max and coprime a.
struct MajorantSurvey {
  int k;
  u64 q_max;
  u64 q;
  u64 a;
  double ratio;
};

/// S_k(q,a) = sum_{r=1}^{q} e(a r^k / q) by direct summation.
GaussSumValue gauss_sum(int k, u64 q, u64 a);

MajorantValue wk_majorant(int k, u64 q);

MajorantSurvey majorant_ratio_survey(int k, u64 q_max);

LeadingConstant leading_constant();

/// Sparse table of m -> #{r mod q : r^k = m (mod q)}.
struct ResidueSpectrum {
  u64 q;
  unsigned k;
  std::vector<std::pair<u64, u64>> terms;  // (m, count), m ascending

  static ResidueSpectrum build(u64 q, unsigned k);
  /// Dense form, length q.
  std::vector<u64> dense() const;
  /// S_k(q,a) regrouped by residue class of r^k.
  cplx exponential_sum(u64 a, const RootsOfUnity& roots) const;
};

/// Orbits of Z/qZ under multiplication by the subgroup of k-th powers of
/// units. S_k(q,.) and S_d(q,.) for d | k are constant on unit orbits.
class PowerClassPartition {
 public:
  PowerClassPartition(u64 q, unsigned k);

  u64 modulus() const { return q_; }
  std::size_t orbit_count() const { return reps_.size(); }
  u64 representative(std::size_t orbit) const { return reps_[orbit]; }
  bool unit_orbit(std::size_t orbit) const { return gcd(reps_[orbit], q_) == 1; }
  std::uint32_t orbit_of(u64 r) const { return label_[r]; }

 private:
  u64 q_;
  std::vector<std::uint32_t> label_;
  std::vector<u64> reps_;
};

}  // namespace circleforge
