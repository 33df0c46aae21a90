#pragma once

// Exact integer convolution by number-theoretic transforms over several
// NTT-friendly primes, reconstructed by the Chinese remainder theorem.

#include <cstddef>
#include <span>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

struct NttPrime {
  std::uint32_t modulus;
  std::uint32_t generator;
  unsigned two_adicity;
};

/// Primes usable by exact_convolution, in the order they are taken.
std::span<const NttPrime> ntt_primes();

/// In-place cyclic NTT of length data.size() (a power of two) modulo p.
void ntt_transform(std::vector<std::uint32_t>& data, const NttPrime& p, bool inverse);

/// Number of primes whose product exceeds `bound` (at least two).
std::size_t moduli_needed(u128 bound);

/// Linear convolution c[i] = sum_j a[j] b[i-j] for i < out_len, exact.
/// The coefficient bound min(nnz a * max a * max b, sum a * max b,
/// sum b * max a) must be certified by the modulus product and fit 64 bits;
/// otherwise BudgetError.
std::vector<u64> exact_convolution(std::span<const u64> a, std::span<const u64> b,
                                   std::size_t out_len);

/// Cyclic convolution modulo length q = a.size() = b.size().
std::vector<u64> cyclic_convolution(std::span<const u64> a, std::span<const u64> b);

}  // namespace circleforge
