#include "circleforge/scan.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <limits>

#include "circleforge/power_residue.hpp"
#include "circleforge/representation.hpp"
#include "circleforge/singular_series.hpp"

namespace circleforge {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  require(ec == std::errc{} && ptr == end && !text.empty(),
          "cannot parse " + std::string(what) + " in psi: '" + std::string(text) + "'");
  return value;
}

}  // namespace

PsiSpec PsiSpec::parse(std::string_view text) {
  if (text == "log") return {Kind::LogPower, 1.0};
  if (text.starts_with("log^")) {
    const double A = parse_number(text.substr(4), "exponent");
    require(A > 0 && std::isfinite(A), "log^A needs A > 0");
    return {Kind::LogPower, A};
  }
  if (text.starts_with("pow:")) {
    const double delta = parse_number(text.substr(4), "delta");
    require(delta > 0 && delta <= 0.1, "pow:delta needs 0 < delta <= 0.1");
    return {Kind::Power, delta};
  }
  throw PreconditionError("psi must be 'log', 'log^A' or 'pow:delta', got '" + std::string(text) + "'");
}

double PsiSpec::operator()(double t) const {
  if (kind == Kind::Power) return std::pow(t, parameter);
  const double l = std::log(t);
  return l <= 0 ? 0.0 : std::pow(l, parameter);
}

std::string PsiSpec::describe() const {
  char buf[64];
  if (kind == Kind::Power) {
    std::snprintf(buf, sizeof buf, "pow:%.12g", parameter);
  } else if (parameter == 1.0) {
    return "log";
  } else {
    std::snprintf(buf, sizeof buf, "log^%.12g", parameter);
  }
  return buf;
}

void complete_record(PredictionRecord& r) {
  r.main = leading_constant().value * r.S_W * static_cast<double>(r.n);
  r.abs_err = std::abs(static_cast<double>(r.R) - r.main);
  r.rel_err = r.main > 0 ? r.abs_err / r.main : std::numeric_limits<double>::infinity();
  r.pre_asymptotic = r.n < kAsymptoticThreshold;
}

bool is_exceptional(const PredictionRecord& r, const PsiSpec& psi) {
  const double p = psi(static_cast<double>(r.n));
  if (p <= 0) return false;
  return r.abs_err > static_cast<double>(r.n) / p;
}

PredictionRecord predict(i64 n, u64 W) {
  require(n >= 6, "predictions need n >= 6");
  require(W >= 1, "truncation W must be at least 1");
  PredictionRecord r;
  r.n = n;
  r.W = W;
  r.R = rep_count_single(n);
  const auto s = truncated_singular_series(n, W);
  r.S_W = s.value;
  r.tail_estimate = s.tail_estimate;
  complete_record(r);
  return r;
}

void summarize(ScanReport& report, const std::vector<PredictionRecord>& records) {
  report.E = 0;
  report.E_asymptotic = 0;
  report.dyadic_counts.clear();
  const auto X = static_cast<i64>(report.X);
  report.dyadic_counts.push_back({1, 1, 0, 0});
  for (i64 lo = 1; lo < X; lo *= 2) report.dyadic_counts.push_back({lo + 1, std::min(2 * lo, X), 0, 0});
  for (const auto& r : records) {
    if (r.n < 1 || r.n > X) continue;
    // interval index: 0 for n = 1, else j + 1 with 2^j < n <= 2^{j+1}
    const std::size_t slot = r.n == 1 ? 0 : std::bit_width(static_cast<u64>(r.n - 1));
    auto& bucket = report.dyadic_counts[slot];
    ++bucket.size;
    if (r.exceptional) {
      ++bucket.exceptional;
      ++report.E;
      if (r.n >= kAsymptoticThreshold) ++report.E_asymptotic;
    }
  }
  std::vector<double> errors;
  report.quantile_min_n = kAsymptoticThreshold;
  for (const auto& r : records) {
    if (r.n >= kAsymptoticThreshold) errors.push_back(r.rel_err);
  }
  if (errors.empty()) {
    report.quantile_min_n = 6;
    for (const auto& r : records) {
      if (r.n >= 6) errors.push_back(r.rel_err);
    }
  }
  std::sort(errors.begin(), errors.end());
  // nearest-rank percentile
  auto rank = [&](double p) {
    if (errors.empty()) return 0.0;
    const auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(errors.size())));
    return errors[std::clamp<std::size_t>(k, 1, errors.size()) - 1];
  };
  report.rel_err_q50 = rank(0.50);
  report.rel_err_q90 = rank(0.90);
  report.rel_err_q99 = rank(0.99);
}

ScanReport scan(u64 X, const PsiSpec& psi, u64 W, bool keep_records) {
  require(X >= 1, "range bound X must be positive");
  require(W >= 1, "truncation W must be at least 1");
  require_budget(X <= kScanLimit, "scan budget is X <= 10^7");
  const auto counts = rep_count_range(X);
  const SingularSeriesTable table(2 * W);
  std::vector<i64> targets(X);
  for (u64 i = 0; i < X; ++i) targets[i] = static_cast<i64>(i + 1);
  const auto series = table.evaluate_batch(targets, W);

  std::vector<PredictionRecord> records(X);
  for (u64 i = 0; i < X; ++i) {
    auto& r = records[i];
    r.n = targets[i];
    r.W = W;
    r.R = counts[i + 1];
    r.S_W = series[i].value;
    r.tail_estimate = series[i].tail_estimate;
    complete_record(r);
    r.exceptional = is_exceptional(r, psi);
  }
  ScanReport report;
  report.X = X;
  report.psi = psi;
  report.W = W;
  summarize(report, records);
  if (keep_records) report.records = std::move(records);
  return report;
}

}  // namespace circleforge
