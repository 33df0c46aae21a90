#include "circleforge/ntt.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "circleforge/parallel.hpp"

namespace circleforge {

namespace {

constexpr std::array<NttPrime, 3> kPrimes{{
    {2013265921u, 31u, 27},
    {1811939329u, 13u, 26},
    {469762049u, 3u, 26},
}};

// Garner reconstruction from residues modulo the first `count` primes.
u128 reconstruct(const std::array<std::uint32_t, 3>& residues, std::size_t count) {
  u128 value = residues[0];
  u128 product = kPrimes[0].modulus;
  for (std::size_t i = 1; i < count; ++i) {
    const u64 p = kPrimes[i].modulus;
    const u64 current = static_cast<u64>(value % p);
    const u64 prod_mod = static_cast<u64>(product % p);
    const u64 diff = (residues[i] + p - current) % p;
    const u64 t = mulmod(diff, powmod(prod_mod, p - 2, p), p);
    value += product * t;
    product *= p;
  }
  return value;
}

}  // namespace

std::span<const NttPrime> ntt_primes() { return kPrimes; }

void ntt_transform(std::vector<std::uint32_t>& data, const NttPrime& prime, bool inverse) {
  const std::size_t n = data.size();
  const u64 p = prime.modulus;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  std::vector<std::uint32_t> twiddle;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = powmod(prime.generator, (p - 1) / len, p);
    if (inverse) w = powmod(w, p - 2, p);
    const std::size_t half = len / 2;
    twiddle.resize(half);
    twiddle[0] = 1;
    for (std::size_t k = 1; k < half; ++k) {
      twiddle[k] = static_cast<std::uint32_t>(mulmod(twiddle[k - 1], w, p));
    }
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const u64 u = data[start + k];
        const u64 v = static_cast<u64>(data[start + k + half]) * twiddle[k] % p;
        data[start + k] = static_cast<std::uint32_t>(u + v >= p ? u + v - p : u + v);
        data[start + k + half] = static_cast<std::uint32_t>(u >= v ? u - v : u + p - v);
      }
    }
  }
  if (inverse) {
    const u64 n_inv = powmod(n % p, p - 2, p);
    for (auto& x : data) x = static_cast<std::uint32_t>(x * n_inv % p);
  }
}

std::size_t moduli_needed(u128 bound) {
  u128 product = 1;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) {
    product *= kPrimes[i].modulus;
    if (i >= 1 && product > bound) return i + 1;
  }
  throw BudgetError("convolution bound " + to_string(bound) +
                    " exceeds the product of the available NTT moduli");
}

std::vector<u64> exact_convolution(std::span<const u64> a, std::span<const u64> b,
                                   std::size_t out_len) {
  if (out_len == 0 || a.empty() || b.empty()) return std::vector<u64>(out_len, 0);
  a = a.first(std::min(a.size(), out_len));
  b = b.first(std::min(b.size(), out_len));

  struct Stats {
    u64 max = 0, nnz = 0;
    u128 sum = 0;
  };
  auto stats = [](std::span<const u64> v) {
    Stats s;
    for (u64 x : v) {
      s.max = std::max(s.max, x);
      s.nnz += (x != 0);
      s.sum += x;
    }
    return s;
  };
  const Stats sa = stats(a), sb = stats(b);
  const u128 bound = std::min({static_cast<u128>(std::min(sa.nnz, sb.nnz)) * sa.max * sb.max,
                               sa.sum * sb.max, sb.sum * sa.max});
  require_budget(bound <= ~u64{0},
                 "convolution coefficients may reach " + to_string(bound) + ", beyond 64 bits");
  const std::size_t moduli = moduli_needed(bound);

  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t n = std::bit_ceil(full);
  for (std::size_t i = 0; i < moduli; ++i) {
    require_budget(std::countr_zero(n) <= static_cast<int>(kPrimes[i].two_adicity),
                   "transform length " + std::to_string(n) + " exceeds NTT capacity");
  }

  std::vector<std::vector<std::uint32_t>> residues(moduli);
  parallel_blocks(moduli, 1, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t m = begin; m < end; ++m) {
      const NttPrime& prime = kPrimes[m];
      std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
      for (std::size_t i = 0; i < a.size(); ++i) fa[i] = static_cast<std::uint32_t>(a[i] % prime.modulus);
      for (std::size_t i = 0; i < b.size(); ++i) fb[i] = static_cast<std::uint32_t>(b[i] % prime.modulus);
      ntt_transform(fa, prime, false);
      ntt_transform(fb, prime, false);
      for (std::size_t i = 0; i < n; ++i) {
        fa[i] = static_cast<std::uint32_t>(static_cast<u64>(fa[i]) * fb[i] % prime.modulus);
      }
      fb = {};
      ntt_transform(fa, prime, true);
      fa.resize(std::min(out_len, full));
      residues[m] = std::move(fa);
    }
  });

  std::vector<u64> out(out_len, 0);
  const std::size_t produced = std::min(out_len, full);
  for (std::size_t i = 0; i < produced; ++i) {
    std::array<std::uint32_t, 3> r{};
    for (std::size_t m = 0; m < moduli; ++m) r[m] = residues[m][i];
    out[i] = static_cast<u64>(reconstruct(r, moduli));
  }
  return out;
}

std::vector<u64> cyclic_convolution(std::span<const u64> a, std::span<const u64> b) {
  require(a.size() == b.size() && !a.empty(), "cyclic convolution needs equal nonzero lengths");
  const std::size_t q = a.size();
  const auto linear = exact_convolution(a, b, 2 * q - 1);
  std::vector<u64> out(q, 0);
  for (std::size_t i = 0; i < linear.size(); ++i) out[i % q] += linear[i];
  return out;
}

}  // namespace circleforge
