#include "circleforge/representation.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <string>

#include "circleforge/ntt.hpp"
#include "circleforge/power_residue.hpp"

namespace circleforge {

u64 PairSpectrum::total() const {
  u64 sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

PairSpectrum pair_spectrum(unsigned k, u64 P) {
  require_exponent(static_cast<int>(k));
  require(P >= 1, "pair spectrum bound P must be positive");
  const u64 top = saturating_pow(P, k);
  require_budget(top < kSpectrumEntryBudget / 2,
                 "pair spectrum for k=" + std::to_string(k) + ", P=" + std::to_string(P) +
                     " needs 2P^k+1 = " + (top == ~u64{0} ? std::string("(overflow)")
                                                          : std::to_string(2 * top + 1)) +
                     " entries; budget is " + std::to_string(kSpectrumEntryBudget));
  PairSpectrum s{k, P, std::vector<std::uint32_t>(2 * top + 1, 0)};
  std::vector<u64> powers(P + 1);
  for (u64 x = 1; x <= P; ++x) powers[x] = saturating_pow(x, k);
  for (u64 x = 1; x <= P; ++x) {
    for (u64 y = 1; y <= P; ++y) ++s.counts[powers[x] + powers[y]];
  }
  return s;
}

RangeCounts::RangeCounts(u64 X, std::vector<u64> values) : X_(X) {
  require(values.size() == X + 1, "range counts need X+1 entries");
  const bool fits = std::all_of(values.begin(), values.end(), [](u64 v) {
    return v <= std::numeric_limits<std::uint32_t>::max();
  });
  if (fits) {
    values_ = std::vector<std::uint32_t>(values.begin(), values.end());
  } else {
    values_ = std::move(values);
  }
}

u64 RangeCounts::operator[](u64 n) const {
  return std::visit([n](const auto& v) { return static_cast<u64>(v.at(n)); }, values_);
}

u64 RangeCounts::total() const {
  return std::visit(
      [](const auto& v) {
        u64 sum = 0;
        for (auto x : v) sum += x;
        return sum;
      },
      values_);
}

u64 rep_count_single(i64 n) {
  require(n >= 1, "target n must be positive");
  require_budget(n <= kSingleTargetLimit,
                 "single-target budget is n <= " + std::to_string(kSingleTargetLimit));
  if (n < 6) return 0;
  const u64 N = static_cast<u64>(n);
  const u64 P3 = iroot(N, 3);
  const u64 P6 = iroot(N, 6);

  // the residual left for x1^2 + x2^2 is at least 2, and cubes need >= 2
  std::vector<u64> sixth_pairs;
  for (u64 a = 1; a <= P6; ++a) {
    for (u64 b = 1; b <= P6; ++b) {
      const u64 s = saturating_pow(a, 6) + saturating_pow(b, 6);
      if (s + 4 <= N) sixth_pairs.push_back(s);
    }
  }
  std::vector<u64> cubes(P3 + 1);
  for (u64 x = 1; x <= P3; ++x) cubes[x] = x * x * x;

  const u64 residual_end = N - 4 + 1;  // residuals lie in [2, N-4]
  const u64 segment = std::min<u64>(residual_end, u64{1} << 22);
  std::vector<std::uint32_t> r22(segment);
  u64 total = 0;
  for (u64 lo = 2; lo < residual_end; lo += segment) {
    const u64 hi = std::min(lo + segment, residual_end);
    std::fill(r22.begin(), r22.end(), 0);
    for (u64 x1 = 1; x1 * x1 + 1 < hi; ++x1) {
      const u64 sq = x1 * x1;
      const u64 first = lo > sq + 1 ? iroot_ceil(lo - sq, 2) : 1;
      const u64 last = iroot(hi - 1 - sq, 2);
      for (u64 x2 = first; x2 <= last; ++x2) ++r22[sq + x2 * x2 - lo];
    }
    for (u64 s6 : sixth_pairs) {
      for (u64 x3 = 1; x3 <= P3 && s6 + cubes[x3] + 3 <= N; ++x3) {
        const u64 c = N - s6 - cubes[x3];
        if (c < lo + 1) break;  // c shrinks as x3 grows
        const u64 last = std::min(P3, iroot(c - lo, 3));
        const u64 first = c + 1 > hi ? std::max<u64>(1, iroot_ceil(c + 1 - hi, 3)) : 1;
        for (u64 x4 = first; x4 <= last; ++x4) total += r22[c - cubes[x4] - lo];
      }
    }
  }
  return total;
}

std::vector<std::uint32_t> cube_sixth_spectrum(u64 X) {
  require(X >= 1, "range bound X must be positive");
  const u64 P3 = iroot(X, 3);
  const u64 P6 = iroot(X, 6);
  const u64 length = 2 * P3 * P3 * P3 + 2 * saturating_pow(P6, 6) + 1;
  require_budget(length <= kSpectrumEntryBudget,
                 "cube/sixth spectrum needs " + std::to_string(length) + " entries");
  std::vector<std::uint32_t> g(length, 0);
  std::vector<u64> sixths;
  for (u64 a = 1; a <= P6; ++a) {
    for (u64 b = 1; b <= P6; ++b) sixths.push_back(saturating_pow(a, 6) + saturating_pow(b, 6));
  }
  for (u64 x3 = 1; x3 <= P3; ++x3) {
    for (u64 x4 = 1; x4 <= P3; ++x4) {
      const u64 c = x3 * x3 * x3 + x4 * x4 * x4;
      for (u64 s : sixths) ++g[c + s];
    }
  }
  return g;
}

RangeCounts rep_count_range(u64 X, RangePath path, const PairSpectrum* square_pairs) {
  require(X >= 1, "range bound X must be positive");
  require_budget(X <= kRangeLimit, "range budget is X <= " + std::to_string(kRangeLimit));
  const u64 P2 = iroot(X, 2);
  PairSpectrum built;
  if (square_pairs == nullptr) {
    built = pair_spectrum(2, P2);
    square_pairs = &built;
  }
  require(square_pairs->k == 2 && square_pairs->P == P2,
          "square-pair spectrum does not match floor(sqrt X)");

  std::vector<u64> squares(X + 1, 0);
  for (u64 m = 0; m <= X; ++m) squares[m] = square_pairs->counts[m];
  std::vector<u64> tuples(X + 1, 0);
  {
    const auto full = cube_sixth_spectrum(X);
    std::copy_n(full.begin(), std::min<std::size_t>(full.size(), X + 1), tuples.begin());
  }

  if (path == RangePath::Automatic) {
    path = X <= kDirectRangeLimit ? RangePath::Direct : RangePath::Transform;
  }
  std::vector<u64> values;
  if (path == RangePath::Direct) {
    values.assign(X + 1, 0);
    for (u64 s = 0; s <= X; ++s) {
      if (squares[s] == 0) continue;
      for (u64 m = 0; s + m <= X; ++m) values[s + m] += squares[s] * tuples[m];
    }
  } else {
    values = exact_convolution(squares, tuples, X + 1);
  }
  return RangeCounts(X, std::move(values));
}

namespace {

constexpr std::array<char, 5> kMagic{'W', 'S', 'P', 'C', '1'};

void put_u64(std::ostream& out, u64 v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> bytes{};
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

u64 get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw std::runtime_error("truncated spectrum cache");
  }
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace

void write_spectrum(const std::filesystem::path& path, const PairSpectrum& spectrum) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, spectrum.k);
  put_u64(out, spectrum.P);
  put_u64(out, spectrum.counts.size());
  u64 sum = 0;
  for (auto c : spectrum.counts) {
    put_u32(out, c);
    sum += c;
  }
  put_u64(out, sum);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

PairSpectrum read_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw std::runtime_error(path.string() + " is not a WSPC1 spectrum");
  }
  const u64 k = get_u64(in);
  const u64 P = get_u64(in);
  const u64 length = get_u64(in);
  if ((k != 2 && k != 3 && k != 6) || P == 0 || length > kSpectrumEntryBudget ||
      length != 2 * saturating_pow(P, static_cast<unsigned>(k)) + 1) {
    throw std::runtime_error(path.string() + " has an inconsistent WSPC1 header");
  }
  PairSpectrum s{static_cast<unsigned>(k), P, std::vector<std::uint32_t>(length)};
  std::vector<unsigned char> raw(length * 4);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw std::runtime_error("truncated spectrum cache " + path.string());
  }
  u64 sum = 0;
  for (u64 i = 0; i < length; ++i) {
    const std::uint32_t v = raw[4 * i] | (raw[4 * i + 1] << 8) | (raw[4 * i + 2] << 16) |
                            (static_cast<std::uint32_t>(raw[4 * i + 3]) << 24);
    s.counts[i] = v;
    sum += v;
  }
  if (get_u64(in) != sum) throw std::runtime_error(path.string() + " fails its sum-check");
  return s;
}

PairSpectrum cached_pair_spectrum(unsigned k, u64 P, const std::filesystem::path& cache_dir) {
  const auto path = cache_dir / ("pairs_k" + std::to_string(k) + "_P" + std::to_string(P) + ".wspc");
  if (std::filesystem::exists(path)) {
    try {
      auto s = read_spectrum(path);
      if (s.k == k && s.P == P) return s;
    } catch (const std::runtime_error&) {
      // stale or damaged cache; rebuild below
    }
  }
  auto s = pair_spectrum(k, P);
  std::filesystem::create_directories(cache_dir);
  write_spectrum(path, s);
  return s;
}

}  // namespace circleforge
