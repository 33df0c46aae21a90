#pragma once

// Predictions C S(n;W) n against exact R(n), and the empirical count of n
// whose error exceeds n / psi(n).

#include <string>
#include <string_view>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

/// Records below this n are kept but marked pre-asymptotic.
inline constexpr i64 kAsymptoticThreshold = 1000;

/// Range budget for scan.
inline constexpr u64 kScanLimit = 10'000'000;

/// psi(t) = (log t)^A or t^delta with 0 < delta <= 0.1.
struct PsiSpec {
  enum class Kind { LogPower, Power };
  Kind kind = Kind::LogPower;
  double parameter = 1.0;

  /// "log" | "log^A" | "pow:delta"
  static PsiSpec parse(std::string_view text);
  double operator()(double t) const;
  std::string describe() const;
};

struct PredictionRecord {
  i64 n = 0;
  u64 R = 0;
  u64 W = 0;
  double S_W = 0;
  double tail_estimate = 0;
  double main = 0;
  double abs_err = 0;
  double rel_err = 0;
  bool exceptional = false;
  bool pre_asymptotic = false;
};

/// Fills main, abs_err, rel_err and pre_asymptotic from n, R, S_W.
void complete_record(PredictionRecord& record);

/// abs_err > n / psi(n); psi(n) <= 0 never flags.
bool is_exceptional(const PredictionRecord& record, const PsiSpec& psi);

/// Record for one n >= 6 (flag left unset).
PredictionRecord predict(i64 n, u64 W);

struct DyadicCount {
  i64 lo;  // interval [lo, hi]
  i64 hi;
  u64 exceptional;
  u64 size;
};

struct ScanReport {
  u64 X = 0;
  PsiSpec psi;
  u64 W = 0;
  u64 E = 0;             // 1 <= n <= X
  u64 E_asymptotic = 0;  // n >= kAsymptoticThreshold
  std::vector<DyadicCount> dyadic_counts;  // [1,1], then (2^j, 2^{j+1}] capped at X
  i64 quantile_min_n = 0;                  // population used for the quantiles
  double rel_err_q50 = 0;
  double rel_err_q90 = 0;
  double rel_err_q99 = 0;
  std::vector<PredictionRecord> records;   // empty unless requested
};

ScanReport scan(u64 X, const PsiSpec& psi, u64 W, bool keep_records = true);

/// Builds the aggregate fields of a report from complete records.
void summarize(ScanReport& report, const std::vector<PredictionRecord>& records);

}  // namespace circleforge
