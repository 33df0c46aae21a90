#include "circleforge/moments.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace circleforge {

std::string to_string(MomentLabel label) {
  switch (label) {
    case MomentLabel::I1: return "I1";
    case MomentLabel::I2: return "I2";
    case MomentLabel::Hua8: return "HUA8";
    case MomentLabel::L52: return "L52";
  }
  return "?";
}

u64 MomentCount::part(const std::string& name) const {
  for (const auto& [key, value] : parts) {
    if (key == name) return value;
  }
  throw std::out_of_range("no part named " + name);
}

SparseSpectrum SparseSpectrum::tally(std::vector<i64> samples) {
  SparseSpectrum s;
  if (samples.empty()) return s;
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const i64 lo = *lo_it;
  const u64 range = static_cast<u64>(*hi_it - lo);
  if (range <= 100'000'000 && range <= 16 * samples.size()) {
    std::vector<std::uint32_t> dense(range + 1, 0);
    for (i64 v : samples) ++dense[static_cast<u64>(v - lo)];
    for (u64 i = 0; i <= range; ++i) {
      if (dense[i] == 0) continue;
      s.values.push_back(lo + static_cast<i64>(i));
      s.counts.push_back(dense[i]);
    }
    return s;
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size();) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    s.values.push_back(samples[i]);
    s.counts.push_back(j - i);
    i = j;
  }
  return s;
}

u64 SparseSpectrum::at(i64 value) const {
  const auto it = std::lower_bound(values.begin(), values.end(), value);
  if (it == values.end() || *it != value) return 0;
  return counts[static_cast<std::size_t>(it - values.begin())];
}

u64 SparseSpectrum::total() const {
  u64 sum = 0;
  for (u64 c : counts) sum += c;
  return sum;
}

u128 sumset_collisions(const SparseSpectrum& s) {
  const std::size_t n = s.values.size();
  if (n == 0) return 0;
  const auto& v = s.values;
  constexpr std::size_t kBuffer = std::size_t{1} << 22;

  // sums v[i] + v[j], j >= i, lying in [lo, hi)
  auto column_range = [&](std::size_t i, i64 lo, i64 hi) {
    auto first = std::lower_bound(v.begin() + static_cast<std::ptrdiff_t>(i), v.end(), lo - v[i]);
    auto last = std::lower_bound(first, v.end(), hi - v[i]);
    return std::pair{first - v.begin(), last - v.begin()};
  };
  auto window_size = [&](i64 lo, i64 hi) {
    u64 size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [a, b] = column_range(i, lo, hi);
      size += static_cast<u64>(b - a);
    }
    return size;
  };

  const i64 top = 2 * v.back() + 1;
  const u128 pairs = static_cast<u128>(n) * (n + 1) / 2;
  const u128 span = static_cast<u128>(top - 2 * v.front());
  i64 width = std::max<i64>(1, static_cast<i64>(span * kBuffer / pairs));
  u128 collisions = 0;
  std::vector<std::pair<i64, u64>> buffer;
  for (i64 lo = 2 * v.front(); lo < top;) {
    i64 hi = lo + std::min(width, top - lo);
    u64 size = window_size(lo, hi);
    while (size > 2 * kBuffer && hi - lo > 1) {
      hi = lo + (hi - lo) / 2;
      size = window_size(lo, hi);
    }
    buffer.clear();
    buffer.reserve(size);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [a, b] = column_range(i, lo, hi);
      for (auto j = static_cast<std::size_t>(a); j < static_cast<std::size_t>(b); ++j) {
        const u64 weight = s.counts[i] * s.counts[j] * (i == j ? 1 : 2);
        buffer.emplace_back(v[i] + v[j], weight);
      }
    }
    std::sort(buffer.begin(), buffer.end());
    for (std::size_t i = 0; i < buffer.size();) {
      u128 run = 0;
      std::size_t j = i;
      for (; j < buffer.size() && buffer[j].first == buffer[i].first; ++j) run += buffer[j].second;
      collisions += run * run;
      i = j;
    }
    width = hi - lo;
    if (size < kBuffer / 4) width *= 2;
    lo = hi;
  }
  return collisions;
}

namespace {

u64 narrow_count(u128 v) {
  require_budget(v <= ~u64{0}, "count exceeds 64 bits");
  return static_cast<u64>(v);
}

std::vector<i64> powers(u64 P, unsigned k) {
  std::vector<i64> out;
  out.reserve(P);
  for (u64 x = 1; x <= P; ++x) out.push_back(static_cast<i64>(saturating_pow(x, k)));
  return out;
}

}  // namespace

MomentCount count_I2(u64 P6) {
  require(P6 >= 1, "P6 must be positive");
  require_budget(P6 <= 3000, "count_I2 budget is P6 <= 3000");
  auto sixths = powers(P6, 6);
  const auto single = SparseSpectrum::tally(std::move(sixths));
  MomentCount out;
  out.label = MomentLabel::I2;
  out.P6 = P6;
  out.count = narrow_count(sumset_collisions(single));
  return out;
}

MomentCount hua_moment8(u64 P6) {
  require(P6 >= 1, "P6 must be positive");
  require_budget(P6 <= 200, "hua_moment8 budget is P6 <= 200");
  const auto sixths = powers(P6, 6);
  std::vector<i64> pair_sums;
  pair_sums.reserve(P6 * P6);
  for (i64 a : sixths) {
    for (i64 b : sixths) pair_sums.push_back(a + b);
  }
  const auto pairs = SparseSpectrum::tally(std::move(pair_sums));
  MomentCount out;
  out.label = MomentLabel::Hua8;
  out.P6 = P6;
  out.count = narrow_count(sumset_collisions(pairs));
  return out;
}

MomentCount count_I1(u64 X) {
  require(X >= 1, "X must be positive");
  require_budget(X <= 100'000'000, "count_I1 budget is X <= 10^8");
  const u64 P3 = iroot(X, 3);
  const u64 P6 = iroot(X, 6);

  const auto cubes = powers(P3, 3);
  std::vector<i64> differences;
  differences.reserve(P3 * P3);
  for (i64 a : cubes) {
    for (i64 b : cubes) differences.push_back(a - b);
  }
  const auto cube_side = SparseSpectrum::tally(std::move(differences));

  const auto sixths = powers(P6, 6);
  std::vector<i64> pair_sums;
  for (i64 a : sixths) {
    for (i64 b : sixths) pair_sums.push_back(a + b);
  }
  std::vector<i64> signed_sums;
  signed_sums.reserve(pair_sums.size() * pair_sums.size());
  for (i64 a : pair_sums) {
    for (i64 b : pair_sums) signed_sums.push_back(a - b);
  }
  const auto sixth_side = SparseSpectrum::tally(std::move(signed_sums));

  u128 diagonal = 0, single = 0, multiple = 0;
  std::size_t i = 0, j = 0;
  while (i < cube_side.values.size() && j < sixth_side.values.size()) {
    const i64 a = cube_side.values[i], b = sixth_side.values[j];
    if (a < b) {
      ++i;
    } else if (b < a) {
      ++j;
    } else {
      const u128 reps = cube_side.counts[i];
      const u128 rho = sixth_side.counts[j];
      if (a == 0) {
        diagonal += reps * rho;
      } else if (reps == 1) {
        single += rho;
      } else {
        multiple += reps * rho;
      }
      ++i;
      ++j;
    }
  }
  MomentCount out;
  out.label = MomentLabel::I1;
  out.X = X;
  out.P3 = P3;
  out.P6 = P6;
  out.count = narrow_count(diagonal + single + multiple);
  out.parts = {{"diagonal", narrow_count(diagonal)},
               {"single_representation", narrow_count(single)},
               {"multiple_representation", narrow_count(multiple)}};
  return out;
}

MultiplicitySet cube_multiplicity(u64 P3) {
  require(P3 >= 1, "P3 must be positive");
  require_budget(P3 <= 10'000, "cube_multiplicity budget is P3 <= 10^4");
  using Entry = std::tuple<i64, u64, u64>;  // (x1^3 - x2^3, x1, x2), x1 > x2
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto cube = [](u64 x) { return static_cast<i64>(x * x * x); };
  for (u64 x2 = 1; x2 < P3; ++x2) heap.emplace(cube(x2 + 1) - cube(x2), x2 + 1, x2);

  MultiplicitySet out{P3, {}, P3 >= 2 ? 1u : 0u};
  std::vector<i64> positive;
  i64 current = 0;
  u64 run = 0;
  auto close_run = [&] {
    if (run >= 2) positive.push_back(current);
    out.max_multiplicity = std::max<u64>(out.max_multiplicity, run);
  };
  while (!heap.empty()) {
    const auto [value, x1, x2] = heap.top();
    heap.pop();
    if (value == current) {
      ++run;
    } else {
      close_run();
      current = value;
      run = 1;
    }
    if (x1 < P3) heap.emplace(cube(x1 + 1) - cube(x2), x1 + 1, x2);
  }
  close_run();
  out.members.reserve(2 * positive.size());
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) out.members.push_back(-*it);
  out.members.insert(out.members.end(), positive.begin(), positive.end());
  return out;
}

MomentCount correlation_L52(u64 P3, std::span<const i64> sample) {
  require(P3 >= 1, "P3 must be positive");
  require_budget(P3 <= 10'000, "correlation budget is P3 <= 10^4");
  require_budget(sample.size() <= 100'000, "correlation budget is |Z| <= 10^5");
  std::vector<i64> z(sample.begin(), sample.end());
  std::sort(z.begin(), z.end());
  require(std::adjacent_find(z.begin(), z.end()) == z.end(), "sample set Z has duplicate entries");

  MomentCount out;
  out.label = MomentLabel::L52;
  out.P3 = P3;
  out.sample_size = z.size();
  const u64 diagonal = P3 * z.size();
  u128 off = 0;
  if (z.size() >= 2) {
    const i64 reach = z.back() - z.front();
    const auto cubes = powers(P3, 3);
    std::vector<i64> differences;
    for (i64 a : cubes) {
      for (i64 b : cubes) {
        if (a != b && std::abs(a - b) <= reach) differences.push_back(a - b);
      }
    }
    const auto spectrum = SparseSpectrum::tally(std::move(differences));
    const u128 by_difference = static_cast<u128>(spectrum.values.size()) * z.size();
    const u128 by_pair = static_cast<u128>(z.size()) * z.size();
    if (by_difference <= by_pair) {
      // x1^3 - x2^3 = d = n2 - n1: count pairs in Z at distance d
      for (std::size_t t = 0; t < spectrum.values.size(); ++t) {
        const i64 d = spectrum.values[t];
        u64 matches = 0;
        std::size_t hi = 0;
        for (std::size_t lo = 0; lo < z.size(); ++lo) {
          const i64 want = z[lo] + d;
          while (hi < z.size() && z[hi] < want) ++hi;
          if (hi < z.size() && z[hi] == want) ++matches;
        }
        off += static_cast<u128>(spectrum.counts[t]) * matches;
      }
    } else {
      for (i64 n1 : z) {
        for (i64 n2 : z) {
          if (n1 != n2) off += spectrum.at(n2 - n1);
        }
      }
    }
  }
  out.count = narrow_count(diagonal + off);
  out.parts = {{"diagonal", diagonal}, {"off_diagonal", narrow_count(off)}};
  return out;
}

}  // namespace circleforge
