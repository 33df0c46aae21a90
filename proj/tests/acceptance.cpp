// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "circleforge/arcs.hpp"
#include "circleforge/moments.hpp"
#include "circleforge/power_residue.hpp"
#include "circleforge/representation.hpp"
#include "circleforge/scan.hpp"
#include "circleforge/singular_series.hpp"
#include "command.hpp"
#include "oracles.hpp"

using namespace circleforge;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double slope(double x0, double y0, double x1, double y1) {
  return std::log(y1 / y0) / std::log(x1 / x0);
}

Verdict criterion1() {
  Verdict v;
  const auto c = leading_constant();
  const double rel = std::abs(c.value - c.gamma_product_form) / c.value;
  v.check(rel <= 1e-12, "relative gap " + fmt("%.3e", rel));
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto brute = oracle::representation_counts(2000);
  const auto range = rep_count_range(2000);
  u64 mismatches = 0;
  for (u64 n = 0; n <= 2000; ++n) mismatches += range[n] != brute[n];
  v.check(mismatches == 0, "range(2000) mismatches " + std::to_string(mismatches));
  std::mt19937_64 rng(2026);
  u64 single_mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const u64 n = 1 + rng() % 100'000;
    single_mismatches += rep_count_single(static_cast<i64>(n)) != oracle::representation_count(n);
  }
  v.check(single_mismatches == 0, "single n<=1e5 mismatches " + std::to_string(single_mismatches) + "/200");
  return v;
}

Verdict criterion3() {
  Verdict v;
  std::mt19937_64 rng(3);
  std::vector<i64> targets;
  for (int i = 0; i < 20; ++i) targets.push_back(1 + static_cast<i64>(rng() % 1'000'000));
  double worst = 0;
  u64 moduli = 0;
  for (u64 p : primes_up_to(10'000)) {
    u64 pp = p;
    for (unsigned h = 1; pp <= 10'000; ++h, pp *= p) {
      ++moduli;
      const CongruenceCounter counter(pp);
      const double scale = std::pow(static_cast<double>(pp), -5.0);
      for (i64 n : targets) {
        double sum = 0;
        u64 d = 1;
        for (unsigned j = 0; j <= h; ++j, d *= p) sum += series_term(d, n).value;
        const double density = static_cast<double>(counter.count(n).count) * scale;
        worst = std::max(worst, std::abs(sum - density));
      }
    }
  }
  v.check(worst <= 1e-8, std::to_string(moduli) + " prime powers, max gap " + fmt("%.3e", worst));
  bool closed = true;
  for (i64 n : {0, 1, 2, 3, 1000001}) {
    closed = closed && congruence_count(2, n).count == 32;
    closed = closed && series_term(1, n).value + series_term(2, n).value == 1.0;
  }
  v.check(closed, "A(1)+A(2)=1 and M_n(2)=32");
  return v;
}

Verdict criterion4() {
  Verdict v;
  std::mt19937_64 rng(4);
  double worst = 0;
  int tested = 0;
  while (tested < 200) {
    const u64 q1 = 1 + rng() % 200, q2 = 1 + rng() % 200;
    if (gcd(q1, q2) != 1 || q1 == 1 || q2 == 1) continue;
    ++tested;
    const i64 n = 1 + static_cast<i64>(rng() % 1'000'000);
    worst = std::max(worst, std::abs(series_term(q1 * q2, n).value -
                                     series_term(q1, n).value * series_term(q2, n).value));
  }
  v.check(worst <= 1e-8, "200 pairs, max gap " + fmt("%.3e", worst));
  return v;
}

Verdict criterion5() {
  Verdict v;
  const SingularSeriesTable table(4000);
  std::vector<i64> all;
  for (i64 n = 1; n <= 10'000; ++n) all.push_back(n);
  double lowest = 1e300;
  for (const auto& s : table.evaluate_batch(all, 1000)) lowest = std::min(lowest, s.value);
  v.check(lowest > 0.05, "min S(n;1000) over n<=1e4 = " + fmt("%.6f", lowest));
  std::mt19937_64 rng(5);
  std::vector<i64> sample;
  for (int i = 0; i < 100; ++i) sample.push_back(1 + static_cast<i64>(rng() % 1'000'000));
  const auto s500 = table.evaluate_batch(sample, 500);
  const auto s1000 = table.evaluate_batch(sample, 1000);
  const auto s2000 = table.evaluate_batch(sample, 2000);
  std::vector<double> early, late;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    early.push_back(std::abs(s1000[i].value - s500[i].value));
    late.push_back(std::abs(s2000[i].value - s1000[i].value));
  }
  const double m_early = median(early), m_late = median(late);
  v.check(m_late < m_early, "median |S2000-S1000| " + fmt("%.3e", m_late) + " < median |S1000-S500| " +
                                fmt("%.3e", m_early));
  return v;
}

Verdict criterion6() {
  Verdict v;
  v.check(count_I2(2).count == 6, "I2(2)=" + std::to_string(count_I2(2).count));
  v.check(hua_moment8(2).count == 70, "Hua8(2)=" + std::to_string(hua_moment8(2).count));
  const u64 i1 = count_I1(64).count, brute = oracle::cube_sixth_solutions(4, 2);
  v.check(i1 == brute, "I1(64)=" + std::to_string(i1) + " brute " + std::to_string(brute));
  const std::vector<i64> single{654321};
  v.check(correlation_L52(100, single).count == 100, "L52 singleton = P3");
  const auto m = cube_multiplicity(16).members;
  v.check(std::binary_search(m.begin(), m.end(), i64{721}), "721 in multiplicity set at P3=16");
  return v;
}

// thresholds frozen after the calibration run
Verdict criterion7() {
  Verdict v;
  const double i1 = static_cast<double>(count_I1(1'000'000).count) / std::pow(1e6, 2.0 / 3.0);
  v.check(i1 <= 3.5, "I1(1e6)/X^(2/3) = " + fmt("%.4f", i1));
  const double h25 = static_cast<double>(hua_moment8(25).count);
  const double h50 = static_cast<double>(hua_moment8(50).count);
  const double h100 = static_cast<double>(hua_moment8(100).count);
  const double hs1 = slope(25, h25, 50, h50), hs2 = slope(50, h50, 100, h100);
  v.check(std::max(hs1, hs2) <= 5.0, "Hua8 slopes " + fmt("%.3f", hs1) + ", " + fmt("%.3f", hs2));
  const double c500 = static_cast<double>(cube_multiplicity(500).members.size());
  const double c1000 = static_cast<double>(cube_multiplicity(1000).members.size());
  const double c2000 = static_cast<double>(cube_multiplicity(2000).members.size());
  const double cs1 = slope(500, c500, 1000, c1000), cs2 = slope(1000, c1000, 2000, c2000);
  v.check(std::max(cs1, cs2) <= 1.6, "card slopes " + fmt("%.3f", cs1) + ", " + fmt("%.3f", cs2));
  const double i2 = static_cast<double>(count_I2(200).count) / (2.0 * 200 * 200);
  v.check(std::abs(i2 - 1) <= 0.25, "I2(200)/(2P^2) = " + fmt("%.4f", i2));
  return v;
}

Verdict criterion8() {
  Verdict v;
  const auto J = singular_integral_J(10'000, 10'000, 50);
  const double ratio = J.J.value.real() / J.gamma_form;
  v.check(std::abs(ratio - 1) <= 0.10, "J(n=X=1e4,W=50)/(Gamma-product n) = " + fmt("%.5f", ratio));
  const auto inner = singular_integral_J(5001, 10'000, 50);
  v.detail += " (info: n=5001 ratio " + fmt("%.5f", inner.J.value.real() / inner.gamma_form) + ")";

  double worst_major = std::max(J.J.halving_change, inner.J.halving_change);
  const auto single = major_arc_integral(5000, 10'000, 1);
  const double closed = single.fstar_integral.value.real() / (leading_constant().value * 5000);
  v.check(std::abs(closed - 1) <= 0.15, "W=1 f*-integral / closed form = " + fmt("%.4f", closed));
  worst_major = std::max({worst_major, single.f_integral.halving_change, single.fstar_integral.halving_change});
  std::vector<double> normalized;
  for (auto [X, W] : {std::pair<u64, u64>{1000, 2}, {10'000, 3}, {100'000, 4}}) {
    const auto r = major_arc_integral(static_cast<i64>(X - X / 10), X, W);
    worst_major = std::max({worst_major, r.f_integral.halving_change, r.fstar_integral.halving_change});
    normalized.push_back(std::abs(r.f_integral.value - r.fstar_integral.value) /
                         (std::pow(static_cast<double>(W), 4) * std::pow(static_cast<double>(X), 5.0 / 6)));
  }
  const bool trend = normalized[0] <= 0.1 && normalized[1] <= normalized[0] && normalized[2] <= normalized[1];
  v.check(trend, "|f-f*|/(W^4 X^(5/6)) " + fmt("%.4f", normalized[0]) + ", " + fmt("%.4f", normalized[1]) +
                     ", " + fmt("%.4f", normalized[2]));
  v.check(worst_major <= 0.01, "max major-arc halving change " + fmt("%.2e", worst_major));

  double worst_pruned = 0;
  const auto small = pruned_integral_diagnostic(1000, 8, ExceptionalSample(cli::sample_integers(501, 1000, 20, 8)));
  const auto large =
      pruned_integral_diagnostic(10'000, 20, ExceptionalSample(cli::sample_integers(5001, 10'000, 50, 8)));
  for (const auto* r : {&small, &large}) {
    worst_pruned = std::max({worst_pruned, r->T0.halving_change, r->T1.halving_change, r->T2.halving_change});
  }
  v.check(worst_pruned <= 0.02, "max pruned halving change " + fmt("%.2e", worst_pruned));
  return v;
}

Verdict criterion9() {
  Verdict v;
  const auto psi = PsiSpec::parse("log");
  std::vector<double> medians, proportions;
  std::string line;
  for (u64 X : {10'000u, 100'000u, 1'000'000u}) {
    const auto report = scan(X, psi, 1000, false);
    medians.push_back(report.rel_err_q50);
    proportions.push_back(static_cast<double>(report.E) / static_cast<double>(X));
    line += " X=" + std::to_string(X) + ": median " + fmt("%.4f", medians.back()) + " E/X " +
            fmt("%.4f", proportions.back()) + ";";
  }
  v.check(medians[1] < medians[0] && medians[2] < medians[1], "medians decrease");
  v.check(proportions[1] < proportions[0] && proportions[2] < proportions[1], "E/X decreases");
  v.detail += line;
  return v;
}

Verdict criterion10() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / "circleforge_acceptance_cache";
  std::filesystem::remove_all(dir);
  auto invoke = [](std::vector<std::string> args) {
    args.insert(args.begin(), "circleforge");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream help, out, err;
    auto config = cli::parse_arguments(static_cast<int>(argv.size()), argv.data(), help);
    const int code = cli::run(*config, out, err);
    return std::pair{code, out.str()};
  };
  const std::vector<std::vector<std::string>> commands{
      {"gauss", "--k", "6", "--q", "343", "--a", "2"},
      {"sseries", "--limit", "100", "--trunc", "60"},
      {"count", "--limit", "20000", "--format", "csv"},
      {"moments", "--kind", "L52", "--P", "50", "--sample", "60", "--seed", "11"},
      {"moments", "--kind", "HUA8", "--P", "20"},
      {"arcs", "--limit", "1000", "--Q", "8", "--sample", "10", "--seed", "5"},
      {"arcs", "--limit", "2000", "--trunc", "2"},
      {"predict", "--n", "777777"},
      {"scan", "--limit", "5000", "--trunc", "200", "--format", "csv"},
  };
  int reproducible = 0;
  for (const auto& args : commands) {
    const auto a = invoke(args), b = invoke(args);
    reproducible += a.first == 0 && a == b;
  }
  v.check(reproducible == static_cast<int>(commands.size()),
          "byte-identical reruns " + std::to_string(reproducible) + "/" + std::to_string(commands.size()));

  std::filesystem::create_directories(dir);
  bool exact = true;
  for (unsigned k : {2u, 3u, 6u}) {
    const auto s = pair_spectrum(k, k == 6 ? 10 : 60);
    write_spectrum(dir / "s.wspc", s);
    const auto back = read_spectrum(dir / "s.wspc");
    exact = exact && back.k == s.k && back.P == s.P && back.counts == s.counts;
  }
  const auto plain = invoke({"count", "--limit", "30000", "--format", "csv"});
  const auto cold = invoke({"count", "--limit", "30000", "--format", "csv", "--cache-dir", dir.string()});
  const auto warm = invoke({"count", "--limit", "30000", "--format", "csv", "--cache-dir", dir.string()});
  exact = exact && plain == cold && cold == warm;
  v.check(exact, "cache round-trips exact");
  std::filesystem::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double seconds;  // runtime limit, 0 for none
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 1, criterion1},     {2, 60, criterion2},    {3, 300, criterion3}, {4, 60, criterion4},
      {5, 600, criterion5},   {6, 60, criterion6},    {7, 600, criterion7}, {8, 600, criterion8},
      {9, 1800, criterion9},  {10, 0, criterion10},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds > 0) v.check(elapsed < c.seconds, "runtime " + fmt("%.1f", elapsed) + "s < " + fmt("%.0f", c.seconds) + "s");
    all = all && v.pass;
    std::printf("criterion %d: %s  %s\n", c.id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
