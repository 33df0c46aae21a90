#include "circleforge/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circleforge/ntt.hpp"
#include "circleforge/parallel.hpp"
#include "circleforge/power_residue.hpp"

namespace circleforge {

namespace {

// Everything A(q;.) needs: the sixth-power class partition of Z/q and the
// weight q^{-6} S_2^2 S_3^2 S_6^2 on each unit class.
struct TermContext {
  u64 q;
  RootsOfUnity roots;
  PowerClassPartition classes;
  std::vector<cplx> weight;  // per orbit; zero on non-unit orbits

  explicit TermContext(u64 modulus)
      : q(modulus), roots(modulus), classes(modulus, 6), weight(classes.orbit_count(), 0.0) {
    const auto s2 = ResidueSpectrum::build(q, 2);
    const auto s3 = ResidueSpectrum::build(q, 3);
    const auto s6 = ResidueSpectrum::build(q, 6);
    const double scale = std::pow(static_cast<double>(q), -6.0);
    for (std::size_t o = 0; o < classes.orbit_count(); ++o) {
      if (!classes.unit_orbit(o)) continue;
      const u64 a = classes.representative(o);
      const cplx g2 = s2.exponential_sum(a, roots);
      const cplx g3 = s3.exponential_sum(a, roots);
      const cplx g6 = s6.exponential_sum(a, roots);
      weight[o] = scale * (g2 * g2) * (g3 * g3) * (g6 * g6);
    }
  }

  // sum over units a of weight(a) e(-r a / q)
  cplx term(u64 r) const {
    CompensatedSum sum;
    for (u64 a = 0; a < q; ++a) {
      const std::uint32_t o = classes.orbit_of(a);
      if (!classes.unit_orbit(o)) continue;
      const u64 phase = (q - mulmod(r, a, q)) % q;
      sum.add(weight[o] * roots[phase]);
    }
    return sum.value();
  }
};

}  // namespace

SeriesTerm series_term(u64 q, i64 n) {
  require(q >= 1, "modulus q must be positive");
  const TermContext ctx(q);
  const cplx value = ctx.term(reduce(n, q));
  return {q, n, value.real(), value.imag()};
}

CongruenceCounter::CongruenceCounter(u64 q) : q_(q) {
  require(q >= 1, "modulus q must be positive");
  require(q <= kCongruenceModulusLimit,
          "congruence_count modulus " + std::to_string(q) + " exceeds the limit " +
              std::to_string(kCongruenceModulusLimit));
  const auto c2 = ResidueSpectrum::build(q, 2).dense();
  const auto c3 = ResidueSpectrum::build(q, 3).dense();
  const auto c6 = ResidueSpectrum::build(q, 6).dense();
  lower_ = cyclic_convolution(cyclic_convolution(c2, c2), cyclic_convolution(c3, c3));
  sixths_ = cyclic_convolution(c6, c6);
}

CongruenceCount CongruenceCounter::count(i64 n) const {
  const u64 target = reduce(n, q_);
  u128 total = 0;
  for (u64 m = 0; m < q_; ++m) {
    total += static_cast<u128>(lower_[m]) * sixths_[(target + q_ - m) % q_];
  }
  return {q_, n, total};
}

CongruenceCount congruence_count(u64 q, i64 n) { return CongruenceCounter(q).count(n); }

double local_density(u64 p, i64 n, unsigned h) {
  require(is_prime(p), "local_density needs a prime p (got " + std::to_string(p) + ")");
  require(h >= 1, "local_density needs h >= 1");
  const u64 q = saturating_pow(p, h);
  require(q <= kCongruenceModulusLimit, "p^h exceeds the congruence-count limit");
  const auto count = congruence_count(q, n).count;
  return static_cast<double>(count) * std::pow(static_cast<double>(p), -5.0 * h);
}

std::vector<double> prime_power_term_table(u64 prime_power) {
  const TermContext ctx(prime_power);
  // A(q; r t) = A(q; r) for t a sixth power of a unit, so one evaluation
  // per orbit suffices
  std::vector<double> per_orbit(ctx.classes.orbit_count());
  for (std::size_t o = 0; o < per_orbit.size(); ++o) {
    per_orbit[o] = ctx.term(ctx.classes.representative(o)).real();
  }
  std::vector<double> table(prime_power);
  for (u64 r = 0; r < prime_power; ++r) table[r] = per_orbit[ctx.classes.orbit_of(r)];
  return table;
}

SingularSeriesTable::SingularSeriesTable(u64 limit)
    : limit_(limit), leading_part_(limit + 1, 0), leading_index_(limit + 1, 0) {
  require(limit >= 1, "singular-series table limit must be positive");
  for (u64 p : primes_up_to(limit)) {
    for (u64 pp = p; pp <= limit; pp *= p) prime_powers_.push_back(pp);
  }
  std::sort(prime_powers_.begin(), prime_powers_.end());
  std::vector<std::uint32_t> index_of(limit + 1, 0);
  for (std::size_t i = 0; i < prime_powers_.size(); ++i) index_of[prime_powers_[i]] = static_cast<std::uint32_t>(i);

  // least prime factor sieve, then split off the full power of that prime
  std::vector<u64> least(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (least[i] != 0) continue;
    for (u64 j = i; j <= limit; j += i) {
      if (least[j] == 0) least[j] = i;
    }
  }
  for (u64 q = 2; q <= limit; ++q) {
    u64 part = 1;
    u64 rest = q;
    while (rest % least[q] == 0) {
      rest /= least[q];
      part *= least[q];
    }
    leading_part_[q] = part;
    leading_index_[q] = index_of[part];
  }

  tables_.resize(prime_powers_.size());
  parallel_blocks(prime_powers_.size(), 8, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) tables_[i] = prime_power_term_table(prime_powers_[i]);
  });
}

double SingularSeriesTable::prime_power_term(u64 prime_power, i64 n) const {
  require(prime_power >= 2 && prime_power <= limit_ && leading_part_[prime_power] == prime_power,
          "not a tabulated prime power: " + std::to_string(prime_power));
  return tables_[leading_index_[prime_power]][reduce(n, prime_power)];
}

void SingularSeriesTable::terms(i64 n, std::vector<double>& out) const {
  out.assign(limit_ + 1, 0.0);
  if (limit_ >= 1) out[1] = 1.0;
  for (u64 q = 2; q <= limit_; ++q) {
    const u64 part = leading_part_[q];
    if (part == q) {
      out[q] = tables_[leading_index_[q]][reduce(n, q)];
    } else {
      out[q] = out[part] * out[q / part];
    }
  }
}

SingularSeriesValue SingularSeriesTable::evaluate(i64 n, u64 W) const {
  std::vector<double> scratch;
  return evaluate(n, W, scratch);
}

SingularSeriesValue SingularSeriesTable::evaluate(i64 n, u64 W, std::vector<double>& scratch) const {
  require(W >= 1, "truncation W must be positive");
  require(2 * W <= limit_, "truncation 2W exceeds the table limit");
  terms(n, scratch);
  double partial = 0.0;
  for (u64 q = 1; q <= W; ++q) partial += scratch[q];
  double doubled = partial;
  for (u64 q = W + 1; q <= 2 * W; ++q) doubled += scratch[q];
  return {n, W, partial, std::abs(doubled - partial)};
}

std::vector<SingularSeriesValue> SingularSeriesTable::evaluate_batch(std::span<const i64> targets,
                                                                     u64 W) const {
  std::vector<SingularSeriesValue> out(targets.size());
  parallel_blocks(targets.size(), 256, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> scratch;
    for (std::size_t i = begin; i < end; ++i) out[i] = evaluate(targets[i], W, scratch);
  });
  return out;
}

SingularSeriesValue truncated_singular_series(i64 n, u64 W) {
  require(W >= 1, "truncation W must be positive");
  require(n >= 1, "target n must be positive");
  const SingularSeriesTable table(2 * W);
  return table.evaluate(n, W);
}

double truncated_singular_series_literal(i64 n, u64 W) {
  require(W >= 1 && W <= 500, "literal summation supports 1 <= W <= 500");
  double sum = 0.0;
  for (u64 q = 1; q <= W; ++q) sum += series_term(q, n).value;
  return sum;
}

}  // namespace circleforge
