#include "circleforge/power_residue.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "circleforge/parallel.hpp"

namespace circleforge {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

void require_exponent(int k) {
  require(k == 2 || k == 3 || k == 6,
          "exponent k must be 2, 3 or 6 (got " + std::to_string(k) + ")");
}

GaussSumValue gauss_sum(int k, u64 q, u64 a) {
  require_exponent(k);
  require(q >= 1, "modulus q must be positive");
  require(a >= 1 && a <= q, "residue a must satisfy 1 <= a <= q");
  require(gcd(a, q) == 1, "residue a must be coprime to q");
  const RootsOfUnity roots(q);
  CompensatedSum sum;
  for (u64 r = 1; r <= q; ++r) {
    const u64 rk = powmod(r, static_cast<u64>(k), q);
    sum.add(roots[mulmod(a, rk, q)]);
  }
  return {k, q, a, sum.value()};
}

MajorantValue wk_majorant(int k, u64 q) {
  require_exponent(k);
  require(q >= 1, "modulus q must be positive");
  double value = 1.0;
  for (const auto& f : factorize(q)) {
    // f.e = u*k + v with 1 <= v <= k
    const unsigned u = (f.e - 1) / static_cast<unsigned>(k);
    const unsigned v = f.e - u * static_cast<unsigned>(k);
    const double p = static_cast<double>(f.p);
    if (v == 1) {
      value *= k * std::pow(p, -static_cast<double>(u) - 0.5);
    } else {
      value *= std::pow(p, -static_cast<double>(u) - 1.0);
    }
  }
  return {k, q, value};
}

MajorantSurvey majorant_ratio_survey(int k, u64 q_max) {
  require_exponent(k);
  require(q_max >= 1 && q_max <= 10000, "q_max must lie in [1, 10^4]");

  struct Best {
    double ratio = -1;
    u64 q = 0, a = 0;
  };
  std::vector<Best> per_block(worker_count());
  parallel_blocks(q_max, 64, [&](std::size_t begin, std::size_t end, std::size_t block) {
    Best best;
    for (u64 q = begin + 1; q <= end; ++q) {
      const RootsOfUnity roots(q);
      const auto spectrum = ResidueSpectrum::build(q, static_cast<unsigned>(k));
      const PowerClassPartition classes(q, static_cast<unsigned>(k));
      const double w = wk_majorant(k, q).value;
      for (std::size_t o = 0; o < classes.orbit_count(); ++o) {
        if (!classes.unit_orbit(o)) continue;
        const u64 a = q == 1 ? 1 : classes.representative(o);
        const double ratio = std::abs(spectrum.exponential_sum(a, roots)) / q / w;
        if (ratio > best.ratio) best = {ratio, q, a};
      }
    }
    per_block[block] = best;
  });
  // blocks cover ascending q ranges; strict comparison keeps the smallest q on ties
  Best best;
  for (const auto& b : per_block) {
    if (b.ratio > best.ratio) best = b;
  }
  return {k, q_max, best.q, best.a, best.ratio};
}

LeadingConstant leading_constant() {
  const double g43 = std::tgamma(4.0 / 3.0);
  const double value = 27.0 / 32.0 * std::cbrt(2.0) * std::pow(g43, 6);
  const double g32 = std::tgamma(1.5);
  const double g76 = std::tgamma(7.0 / 6.0);
  const double product = g32 * g32 * g43 * g43 * g76 * g76 / std::tgamma(2.0);
  return {value, product};
}

ResidueSpectrum ResidueSpectrum::build(u64 q, unsigned k) {
  std::vector<u64> counts(q, 0);
  for (u64 r = 0; r < q; ++r) ++counts[powmod(r, k, q)];
  ResidueSpectrum s{q, k, {}};
  for (u64 m = 0; m < q; ++m) {
    if (counts[m] != 0) s.terms.emplace_back(m, counts[m]);
  }
  return s;
}

std::vector<u64> ResidueSpectrum::dense() const {
  std::vector<u64> out(q, 0);
  for (const auto& [m, c] : terms) out[m] = c;
  return out;
}

cplx ResidueSpectrum::exponential_sum(u64 a, const RootsOfUnity& roots) const {
  CompensatedSum sum;
  for (const auto& [m, c] : terms) {
    sum.add(static_cast<double>(c) * roots[mulmod(a, m, q)]);
  }
  return sum.value();
}

PowerClassPartition::PowerClassPartition(u64 q, unsigned k)
    : q_(q), label_(q, std::numeric_limits<std::uint32_t>::max()) {
  std::vector<bool> in_group(q, false);
  std::vector<u64> group;
  for (u64 u = 0; u < q; ++u) {
    if (gcd(u, q) != 1) continue;
    const u64 t = powmod(u, k, q);
    if (!in_group[t]) {
      in_group[t] = true;
      group.push_back(t);
    }
  }
  for (u64 r = 0; r < q; ++r) {
    if (label_[r] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(r);
    for (u64 t : group) label_[mulmod(r, t, q)] = id;
  }
}

}  // namespace circleforge
