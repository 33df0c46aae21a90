#include "circleforge/arcs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "circleforge/parallel.hpp"
#include "circleforge/power_residue.hpp"
#include "circleforge/quadrature.hpp"

namespace circleforge {

namespace {

/// frac(alpha * m) for a double alpha. alpha = M / 2^E exactly; when
/// E <= 128 the product is reduced in wrapping 128-bit arithmetic, which is
/// exact. Tiny alpha falls back to long double.
class DyadicPhase {
 public:
  explicit DyadicPhase(double alpha) : alpha_(alpha) {
    if (alpha == 0.0) return;
    int e = 0;
    const double f = std::frexp(alpha, &e);
    mantissa_ = static_cast<u128>(static_cast<u64>(std::ldexp(f, 53)));
    exponent_ = 53 - e;
    exact_ = exponent_ <= 128;
  }

  double frac(u128 m_wrapped, long double m_real) const {
    if (mantissa_ == 0) return 0.0;
    if (exact_) {
      u128 prod = mantissa_ * m_wrapped;
      if (exponent_ < 128) prod &= (u128{1} << exponent_) - 1;
      return std::ldexp(static_cast<double>(prod), -exponent_);
    }
    const long double t = static_cast<long double>(alpha_) * m_real;
    return static_cast<double>(t - std::floor(t));
  }

 private:
  double alpha_;
  u128 mantissa_ = 0;
  int exponent_ = 0;
  bool exact_ = true;
};

/// e(j/q) with the angle folded into [-1/2, 1/2].
cplx fraction_phase(u64 j, u64 q) {
  if (2 * j <= q) return unit_phase(static_cast<double>(j) / static_cast<double>(q));
  return unit_phase(-static_cast<double>(q - j) / static_cast<double>(q));
}

double frac_of(double t) { return t - std::floor(t); }

void require_weyl(int k, u64 P) {
  require_exponent(k);
  require(P >= 1, "Weyl sum bound P must be positive");
  require_budget(P <= kWeylSumLimit, "Weyl sum budget is P <= 10^7");
}

u128 wrapping_pow(u64 x, int k) {
  u128 r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

cplx weyl_sum(int k, u64 P, double alpha) {
  require_weyl(k, P);
  require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0,1)");
  const DyadicPhase phase(alpha);
  CompensatedSum sum;
  for (u64 x = 1; x <= P; ++x) {
    long double real = 1;
    for (int i = 0; i < k; ++i) real *= static_cast<long double>(x);
    sum.add(unit_phase(phase.frac(wrapping_pow(x, k), real)));
  }
  return sum.value();
}

cplx weyl_sum(int k, u64 P, Rational alpha) {
  require_weyl(k, P);
  require(alpha.den >= 1, "denominator must be positive");
  const u64 r = reduce(alpha.num, alpha.den);
  CompensatedSum sum;
  for (u64 x = 1; x <= P; ++x) {
    const u64 xk = powmod(x % alpha.den, static_cast<u64>(k), alpha.den);
    sum.add(fraction_phase(mulmod(r, xk, alpha.den), alpha.den));
  }
  return sum.value();
}

cplx weyl_sum(int k, u64 P, const ArcPoint& alpha) {
  require_weyl(k, P);
  require(alpha.q >= 1, "denominator must be positive");
  CompensatedSum sum;
  const double q = static_cast<double>(alpha.q);
  for (u64 x = 1; x <= P; ++x) {
    const u64 residue = mulmod(alpha.a % alpha.q, powmod(x % alpha.q, static_cast<u64>(k), alpha.q),
                               alpha.q);
    double xk = 1;
    for (int i = 0; i < k; ++i) xk *= static_cast<double>(x);
    sum.add(unit_phase(static_cast<double>(residue) / q + frac_of(alpha.beta * xk)));
  }
  return sum.value();
}

cplx vk_integral(int k, u64 P, double beta) {
  require_exponent(k);
  require(P >= 1, "integration bound P must be positive");
  const double Pd = static_cast<double>(P);
  if (beta == 0.0) return Pd;
  const double b = std::abs(beta);
  const double Pk = std::pow(Pd, k);
  const double oscillation = b * Pk;
  require_budget(oscillation <= kOscillationBudget,
                 "v_k oscillation |beta| P^k = " + std::to_string(oscillation) +
                     " exceeds 10^6; tolerance 1e-8 P would not be attained");
  auto integrand = [b, k](double g) {
    double gk = 1;
    for (int i = 0; i < k; ++i) gk *= g;
    return unit_phase(frac_of(b * gk));
  };
  // panel ends at quarter periods of the phase b g^k
  const auto quarters = static_cast<std::size_t>(std::floor(4.0 * oscillation));
  const double inv_k = 1.0 / k;
  cplx total = 0.0;
  double lo = 0.0;
  for (std::size_t j = 1; j <= quarters + 1; ++j) {
    double hi = j <= quarters ? std::pow(static_cast<double>(j) / (4.0 * b), inv_k) : Pd;
    hi = std::min(hi, Pd);
    if (hi <= lo) continue;
    total += integrate_adaptive(integrand, lo, hi, 1e-8 * (hi - lo)).value;
    lo = hi;
  }
  return beta < 0 ? std::conj(total) : total;
}

cplx major_arc_approx(int k, u64 q, u64 a, double beta, u64 P) {
  require(q >= 1, "modulus q must be positive");
  if (q == 1) a = 1;
  const cplx s = gauss_sum(k, q, a).value;
  return s / static_cast<double>(q) * vk_integral(k, P, beta);
}

std::string to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::Major: return "MAJOR";
    case ArcKind::Annulus: return "ANNULUS";
    case ArcKind::Peak: return "PEAK";
    case ArcKind::Minor: return "MINOR";
  }
  return "?";
}

std::optional<std::pair<u64, u64>> least_denominator(double alpha, u64 q_max, double delta) {
  if (q_max == 0) return std::nullopt;
  auto check = [&](u64 q) -> std::optional<std::pair<u64, u64>> {
    const double qa = static_cast<double>(q) * alpha;
    const double a = std::nearbyint(qa);
    if (std::abs(qa - a) <= delta) return std::pair{q, static_cast<u64>(a)};
    return std::nullopt;
  };
  if (auto hit = check(1)) return hit;
  // convergents p_j / q_j of alpha in [0,1): a_0 = 0
  u64 q_prev = 0, q_cur = 1;
  double x = alpha;
  for (int step = 0; step < 64; ++step) {
    const double f = x - std::floor(x);
    if (f < 1e-15) break;
    x = 1.0 / f;
    const double digit = std::floor(x);
    if (digit > static_cast<double>(q_max)) break;
    const u128 q_next = static_cast<u128>(digit) * q_cur + q_prev;
    if (q_next > q_max) break;
    q_prev = q_cur;
    q_cur = static_cast<u64>(q_next);
    if (auto hit = check(q_cur)) return hit;
  }
  return std::nullopt;
}

ArcClassification classify_arc(double alpha, double Q, double X, double W) {
  require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0,1)");
  require(X >= 1.0, "X must be at least 1");
  require(Q >= 1.0 && Q <= 2.0 * std::sqrt(X), "Q must satisfy 1 <= Q <= 2 X^{1/2}");
  require(W >= 1.0, "W must be at least 1");
  ArcClassification out{};
  if (const auto outer = least_denominator(alpha, static_cast<u64>(Q), Q / X)) {
    const bool inner = least_denominator(alpha, static_cast<u64>(Q / 2), Q / (2 * X)).has_value();
    out.level = ArcLabel{outer->first, outer->second, inner ? ArcKind::Major : ArcKind::Annulus, Q, X};
  }
  const auto w_max = static_cast<u64>(W);
  for (u64 q = 1; q <= w_max; ++q) {
    const double a = std::nearbyint(static_cast<double>(q) * alpha);
    if (std::abs(alpha - a / static_cast<double>(q)) <= W / X) {
      out.peak = ArcLabel{q, static_cast<u64>(a), ArcKind::Peak, W, X};
      return out;
    }
  }
  out.peak = ArcLabel{1, static_cast<u64>(std::nearbyint(alpha)), ArcKind::Minor, W, X};
  return out;
}

double peak_majorant(double alpha, const ArcLabel& label, u64 P2) {
  const double P = static_cast<double>(P2);
  const double q = static_cast<double>(label.q);
  const double offset = std::abs(q * alpha - static_cast<double>(label.a));
  return P / std::sqrt(q + P * P * offset);
}

PeakRatioSurvey peak_ratio_survey(u64 X, double Q, std::size_t grid_points) {
  require(grid_points >= 1, "survey needs grid points");
  const u64 P2 = iroot(X, 2);
  struct Best {
    std::size_t samples = 0;
    double ratio = 0;
    double alpha = 0;
  };
  std::vector<Best> blocks(worker_count() + 1);
  parallel_blocks(grid_points, 1024, [&](std::size_t begin, std::size_t end, std::size_t block) {
    Best best;
    for (std::size_t i = begin; i < end; ++i) {
      const double alpha = static_cast<double>(i) / static_cast<double>(grid_points);
      const auto label = classify_arc(alpha, Q, static_cast<double>(X), 1.0).level;
      if (!label || label->kind != ArcKind::Annulus) continue;
      ++best.samples;
      const ArcPoint point{label->q, label->a,
                           alpha - static_cast<double>(label->a) / static_cast<double>(label->q)};
      const double ratio = std::abs(weyl_sum(2, P2, point)) / peak_majorant(alpha, *label, P2);
      if (ratio > best.ratio) {
        best.ratio = ratio;
        best.alpha = alpha;
      }
    }
    blocks[block] = best;
  });
  PeakRatioSurvey out{X, Q, 0, 0.0, 0.0};
  for (const auto& b : blocks) {
    out.samples += b.samples;
    if (b.ratio > out.sup_ratio) {
      out.sup_ratio = b.ratio;
      out.alpha_at_sup = b.alpha;
    }
  }
  return out;
}

ExceptionalSample::ExceptionalSample(std::vector<i64> members, std::vector<cplx> eta)
    : members_(std::move(members)), eta_(std::move(eta)) {
  if (eta_.empty()) eta_.assign(members_.size(), cplx{1.0, 0.0});
  require(eta_.size() == members_.size(), "one eta per member of Z is required");
  for (const auto& e : eta_) require(std::abs(std::abs(e) - 1.0) <= 1e-12, "eta must be unimodular");
  std::vector<i64> sorted = members_;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "Z has duplicate members");
}

ExceptionalSample ExceptionalSample::unweighted() const { return ExceptionalSample(members_); }

cplx sample_K(const ExceptionalSample& sample, double alpha) {
  const DyadicPhase phase(alpha);
  CompensatedSum sum;
  const auto members = sample.members();
  const auto eta = sample.eta();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const i64 n = members[i];
    const double theta = phase.frac(static_cast<u128>(static_cast<i128>(n)),
                                    static_cast<long double>(n));
    sum.add(eta[i] * std::conj(unit_phase(theta)));
  }
  return sum.value();
}

cplx sample_K(const ExceptionalSample& sample, const ArcPoint& alpha) {
  CompensatedSum sum;
  const auto members = sample.members();
  const auto eta = sample.eta();
  const double q = static_cast<double>(alpha.q);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const i64 n = members[i];
    const u64 residue = mulmod(alpha.a % alpha.q, reduce(n, alpha.q), alpha.q);
    const double theta = static_cast<double>(residue) / q + frac_of(alpha.beta * static_cast<double>(n));
    sum.add(eta[i] * std::conj(unit_phase(theta)));
  }
  return sum.value();
}

QuadratureEstimate make_estimate(cplx fine, cplx coarse, std::size_t grid_points) {
  const double scale = std::abs(fine);
  double change = 0.0;
  if (scale > 0) {
    change = std::abs(fine - coarse) / scale;
  } else if (std::abs(coarse) > 0) {
    change = std::numeric_limits<double>::infinity();
  }
  return {fine, coarse, change, grid_points};
}

u64 default_peak_width(u64 X) {
  require(X >= 1, "X must be positive");
  u64 W = 1;
  while (saturating_pow(W, 10) < X) ++W;
  return W;
}

namespace {

/// A piece of an arc in beta coordinates around a/q.
struct Segment {
  u64 q;
  u64 a;
  double lo;
  double hi;
};

template <std::size_t N>
using Values = std::array<cplx, N>;

/// Composite 4-point Gauss-Legendre over every segment with panels no wider
/// than h; returns per-segment sums in segment order.
template <std::size_t N, class F>
std::vector<Values<N>> integrate_segments(const std::vector<Segment>& segments, double h, F&& f,
                                          std::size_t& points) {
  static const GaussRule rule = gauss_legendre_rule(4);
  struct Panel {
    std::size_t segment;
    double lo;
    double hi;
  };
  std::vector<Panel> panels;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (seg.hi <= seg.lo) continue;
    const auto count = static_cast<std::size_t>(std::ceil((seg.hi - seg.lo) / h));
    for (std::size_t j = 0; j < count; ++j) {
      const double lo = seg.lo + (seg.hi - seg.lo) * static_cast<double>(j) / count;
      const double hi = seg.lo + (seg.hi - seg.lo) * static_cast<double>(j + 1) / count;
      panels.push_back({s, lo, hi});
    }
  }
  std::vector<Values<N>> panel_values(panels.size());
  parallel_blocks(panels.size(), 16, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& panel = panels[i];
      const auto& seg = segments[panel.segment];
      const double mid = 0.5 * (panel.lo + panel.hi), half = 0.5 * (panel.hi - panel.lo);
      Values<N> acc{};
      for (std::size_t r = 0; r < rule.nodes.size(); ++r) {
        const Values<N> v = f(ArcPoint{seg.q, seg.a, mid + half * rule.nodes[r]});
        for (std::size_t c = 0; c < N; ++c) acc[c] += rule.weights[r] * half * v[c];
      }
      panel_values[i] = acc;
    }
  });
  std::vector<Values<N>> out(segments.size(), Values<N>{});
  for (std::size_t i = 0; i < panels.size(); ++i) {
    for (std::size_t c = 0; c < N; ++c) out[panels[i].segment][c] += panel_values[i][c];
  }
  points += panels.size() * rule.nodes.size();
  return out;
}

/// e(-n alpha) at alpha = a/q + beta.
cplx target_phase(i64 n, const ArcPoint& p) {
  const u64 residue = mulmod(p.a % p.q, reduce(n, p.q), p.q);
  return std::conj(fraction_phase(residue, p.q) * unit_phase(frac_of(p.beta * static_cast<double>(n))));
}

struct Interval {
  double lo;
  double hi;
};

/// [lo, hi) minus the union of `blockers`.
std::vector<Interval> subtract(Interval base, std::vector<Interval> blockers) {
  std::sort(blockers.begin(), blockers.end(), [](auto x, auto y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  double cursor = base.lo;
  for (const auto& b : blockers) {
    if (b.hi <= cursor || b.lo >= base.hi) continue;
    if (b.lo > cursor) out.push_back({cursor, b.lo});
    cursor = std::max(cursor, b.hi);
  }
  if (cursor < base.hi) out.push_back({cursor, base.hi});
  return out;
}

std::vector<std::pair<u64, u64>> fractions_up_to(u64 q_max) {
  std::vector<std::pair<u64, u64>> out{{1, 0}, {1, 1}};
  for (u64 q = 2; q <= q_max; ++q) {
    for (u64 a = 1; a < q; ++a) {
      if (gcd(a, q) == 1) out.emplace_back(q, a);
    }
  }
  return out;
}

std::vector<ArcIntegral> collect_arcs(const std::vector<Segment>& segments,
                                      const std::vector<cplx>& values, double Q, std::size_t points_each) {
  std::vector<ArcIntegral> arcs;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!arcs.empty() && arcs.back().q == segments[i].q && arcs.back().a == segments[i].a) {
      arcs.back().integral += values[i];
      arcs.back().grid_points += points_each;
    } else {
      arcs.push_back({segments[i].q, segments[i].a, Q, values[i], points_each});
    }
  }
  std::stable_sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) {
    return std::pair{x.q, x.a} < std::pair{y.q, y.a};
  });
  // merge pieces of the same arc that were not adjacent
  std::vector<ArcIntegral> merged;
  for (const auto& arc : arcs) {
    if (!merged.empty() && merged.back().q == arc.q && merged.back().a == arc.a) {
      merged.back().integral += arc.integral;
      merged.back().grid_points += arc.grid_points;
    } else {
      merged.push_back(arc);
    }
  }
  return merged;
}

std::size_t segment_points(const Segment& s, double h) {
  if (s.hi <= s.lo) return 0;
  return 4 * static_cast<std::size_t>(std::ceil((s.hi - s.lo) / h));
}

}  // namespace

MajorArcReport major_arc_integral(i64 n, u64 X, u64 W, std::size_t grid) {
  require(n >= 1, "target n must be positive");
  require(X >= 2, "X must be at least 2");
  require_budget(X <= 100'000, "major-arc quadrature budget is X <= 10^5");
  require(W >= 1, "W must be at least 1");
  require(grid >= kDefaultGrid, "grid must give spacing at most 1/(10 X)");
  const u64 P2 = iroot(X, 2), P3 = iroot(X, 3), P6 = iroot(X, 6);
  const double Xd = static_cast<double>(X);
  const double radius = static_cast<double>(W) / Xd;

  // least-q rule: overlaps go to the arc with smaller (q, a)
  const auto fractions = fractions_up_to(W);
  std::vector<Interval> spans;
  for (const auto& [q, a] : fractions) {
    const double c = static_cast<double>(a) / static_cast<double>(q);
    spans.push_back({std::max(0.0, c - radius), std::min(1.0, c + radius)});
  }
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    std::vector<Interval> blockers;
    for (std::size_t j = 0; j < fractions.size(); ++j) {
      if (fractions[j] < fractions[i]) blockers.push_back(spans[j]);
    }
    const auto [q, a] = fractions[i];
    const double c = static_cast<double>(a) / static_cast<double>(q);
    for (const auto& piece : subtract(spans[i], blockers)) {
      segments.push_back({q, a, piece.lo - c, piece.hi - c});
    }
  }
  std::sort(segments.begin(), segments.end(), [](const auto& x, const auto& y) {
    return std::tuple{x.q, x.a, x.lo} < std::tuple{y.q, y.a, y.lo};
  });

  // local factor (S2 S3 S6 / q^3)^2 per arc
  auto local_factor = [](u64 q, u64 a) {
    const u64 r = q == 1 ? 1 : a;
    const cplx s = gauss_sum(2, q, r).value * gauss_sum(3, q, r).value * gauss_sum(6, q, r).value /
                   std::pow(static_cast<double>(q), 3);
    return s * s;
  };
  std::vector<cplx> factors;
  for (const auto& seg : segments) factors.push_back(local_factor(seg.q, seg.a));

  auto run = [&](double h, std::size_t& points) {
    return integrate_segments<2>(
        segments, h,
        [&](const ArcPoint& p) {
          const cplx f = weyl_sum(2, P2, p) * weyl_sum(3, P3, p) * weyl_sum(6, P6, p);
          const cplx v = vk_integral(2, P2, p.beta) * vk_integral(3, P3, p.beta) *
                         vk_integral(6, P6, p.beta);
          const cplx phase = target_phase(n, p);
          return Values<2>{f * f * phase, v * v * phase};
        },
        points);
  };
  const double h = 1.0 / (static_cast<double>(grid) * Xd);
  std::size_t coarse_points = 0, fine_points = 0;
  const auto coarse = run(h, coarse_points);
  const auto fine = run(h / 2, fine_points);

  cplx f_coarse = 0, f_fine = 0, s_coarse = 0, s_fine = 0;
  std::vector<cplx> f_values, s_values;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    f_coarse += coarse[i][0];
    s_coarse += factors[i] * coarse[i][1];
    f_fine += fine[i][0];
    s_fine += factors[i] * fine[i][1];
    f_values.push_back(fine[i][0]);
    s_values.push_back(factors[i] * fine[i][1]);
  }
  MajorArcReport report{n, X, W, grid, make_estimate(f_fine, f_coarse, fine_points),
                        make_estimate(s_fine, s_coarse, fine_points), {}, {}};
  const double Wd = static_cast<double>(W);
  report.arcs = collect_arcs(segments, f_values, Wd, 0);
  report.arcs_star = collect_arcs(segments, s_values, Wd, 0);
  // grid points per arc from the fine run
  for (auto* list : {&report.arcs, &report.arcs_star}) {
    for (auto& arc : *list) {
      for (const auto& seg : segments) {
        if (seg.q == arc.q && seg.a == arc.a) arc.grid_points += segment_points(seg, h / 2);
      }
    }
  }
  return report;
}

SingularIntegral singular_integral_J(i64 n, u64 X, u64 W, std::size_t grid) {
  require(X >= 2, "X must be at least 2");
  require_budget(X <= 1'000'000, "singular integral budget is X <= 10^6");
  require(n > static_cast<i64>(X / 2) && n <= static_cast<i64>(X), "n must lie in (X/2, X]");
  require(W >= 1, "W must be at least 1");
  require(grid >= kDefaultGrid, "grid must give spacing at most 1/(10 X)");
  const u64 P2 = iroot(X, 2), P3 = iroot(X, 3), P6 = iroot(X, 6);
  const double radius = static_cast<double>(W) / static_cast<double>(X);
  const std::vector<Segment> whole{{1, 0, -radius, radius}};
  auto run = [&](double h, std::size_t& points) {
    return integrate_segments<1>(
        whole, h,
        [&](const ArcPoint& p) {
          const cplx v = vk_integral(2, P2, p.beta) * vk_integral(3, P3, p.beta) *
                         vk_integral(6, P6, p.beta);
          return Values<1>{v * v * std::conj(unit_phase(frac_of(p.beta * static_cast<double>(n))))};
        },
        points)[0][0];
  };
  const double h = 1.0 / (static_cast<double>(grid) * static_cast<double>(X));
  std::size_t coarse_points = 0, fine_points = 0;
  const cplx coarse = run(h, coarse_points);
  const cplx fine = run(h / 2, fine_points);
  return {n, X, W, make_estimate(fine, coarse, fine_points),
          leading_constant().gamma_product_form * static_cast<double>(n)};
}

PrunedReport pruned_integral_diagnostic(u64 X, double Q, const ExceptionalSample& sample,
                                        std::size_t grid) {
  require(X >= 2, "X must be at least 2");
  require_budget(X <= 10'000, "pruned diagnostic budget is X <= 10^4");
  const double Xd = static_cast<double>(X);
  require(Q >= 1.0 && Q <= std::sqrt(Xd), "Q must satisfy 1 <= Q <= X^{1/2}");
  require(grid >= kDefaultGrid, "grid must give spacing at most 1/(10 X)");
  const u64 P2 = iroot(X, 2), P3 = iroot(X, 3), P6 = iroot(X, 6);
  const u64 q_outer = static_cast<u64>(Q), q_inner = static_cast<u64>(Q / 2);

  // every endpoint of M(Q) and M(Q/2); membership is constant between them
  std::vector<double> breaks{0.0, 1.0};
  for (const auto& [q, a] : fractions_up_to(q_outer)) {
    const double c = static_cast<double>(a) / static_cast<double>(q);
    const double r = Q / (static_cast<double>(q) * Xd);
    breaks.push_back(c - r);
    breaks.push_back(c + r);
    if (q <= q_inner) {
      breaks.push_back(c - r / 2);
      breaks.push_back(c + r / 2);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<Segment> segments;
  double measure = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(0.0, breaks[i]), hi = std::min(1.0, breaks[i + 1]);
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi);
    const auto outer = least_denominator(mid, q_outer, Q / Xd);
    if (!outer || least_denominator(mid, q_inner, Q / (2 * Xd))) continue;
    const auto [q, a] = *outer;
    const double c = static_cast<double>(a) / static_cast<double>(q);
    if (!segments.empty() && segments.back().q == q && segments.back().a == a &&
        segments.back().hi == lo - c) {
      segments.back().hi = hi - c;
    } else {
      segments.push_back({q, a, lo - c, hi - c});
    }
    measure += hi - lo;
  }

  auto run = [&](double h, std::size_t& points) {
    return integrate_segments<3>(
        segments, h,
        [&](const ArcPoint& p) {
          const double K = std::abs(sample_K(sample, p));
          if (K == 0.0) return Values<3>{};
          const double f2 = std::norm(weyl_sum(2, P2, p));
          const double f3 = std::norm(weyl_sum(3, P3, p));
          const double f6 = std::norm(weyl_sum(6, P6, p));
          const double alpha = p.value();
          const double peak = peak_majorant(alpha, ArcLabel{p.q, p.a, ArcKind::Annulus, Q, Xd}, P2);
          const double f3_star = std::norm(major_arc_approx(3, p.q, p.a, p.beta, P3));
          return Values<3>{cplx{f2 * f3 * f6 * K}, cplx{peak * peak * f3 * f6 * K},
                           cplx{peak * peak * f3_star * f6 * K}};
        },
        points);
  };
  const double h = 1.0 / (static_cast<double>(grid) * Xd);
  std::size_t coarse_points = 0, fine_points = 0;
  std::vector<Values<3>> coarse, fine;
  if (sample.size() > 0) {
    coarse = run(h, coarse_points);
    fine = run(h / 2, fine_points);
  } else {
    coarse.assign(segments.size(), Values<3>{});
    fine = coarse;
    for (const auto& s : segments) fine_points += segment_points(s, h / 2);
  }
  Values<3> c_total{}, f_total{};
  std::vector<cplx> t0_values;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      c_total[c] += coarse[i][c];
      f_total[c] += fine[i][c];
    }
    t0_values.push_back(fine[i][0]);
  }
  const double Z = static_cast<double>(sample.size());
  PrunedReport report{X,
                      Q,
                      grid,
                      sample.size(),
                      measure,
                      make_estimate(f_total[0], c_total[0], fine_points),
                      make_estimate(f_total[1], c_total[1], fine_points),
                      make_estimate(f_total[2], c_total[2], fine_points),
                      collect_arcs(segments, t0_values, Q, 0),
                      Xd * std::sqrt(Z),
                      std::pow(Xd, 1.0 - kPrunedShapeDelta * kPrunedShapeDelta) * Z,
                      kPrunedShapeDelta};
  for (auto& arc : report.arcs) {
    for (const auto& seg : segments) {
      if (seg.q == arc.q && seg.a == arc.a) arc.grid_points += segment_points(seg, h / 2);
    }
  }
  return report;
}

ApproximationSurvey approximation_survey(int k, u64 X, u64 W, u64 q_max, std::size_t beta_steps) {
  require_exponent(k);
  require(X >= 1 && W >= 1 && q_max >= 1, "survey parameters must be positive");
  require(beta_steps >= 2, "survey needs at least two beta values");
  const u64 P = iroot(X, static_cast<unsigned>(k));
  const double radius = static_cast<double>(W) / static_cast<double>(X);
  std::vector<std::pair<u64, u64>> fractions{{1, 1}};
  for (u64 q = 2; q <= q_max; ++q) {
    for (u64 a = 1; a < q; ++a) {
      if (gcd(a, q) == 1) fractions.emplace_back(q, a);
    }
  }
  std::vector<ApproximationSurvey> best(fractions.size(), {k, X, W, 0.0, 1, 1, 0.0});
  parallel_blocks(fractions.size(), 8, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto [q, a] = fractions[i];
      const cplx gauss = gauss_sum(k, q, a).value / static_cast<double>(q);
      for (std::size_t j = 0; j < beta_steps; ++j) {
        const double beta = -radius + 2 * radius * static_cast<double>(j) / (beta_steps - 1);
        const cplx f = weyl_sum(k, P, ArcPoint{q, a, beta});
        const cplx f_star = gauss * vk_integral(k, P, beta);
        const double ratio = std::abs(f - f_star) / std::sqrt(static_cast<double>(q));
        if (ratio > best[i].max_ratio) best[i] = {k, X, W, ratio, q, a, beta};
      }
    }
  });
  ApproximationSurvey out{k, X, W, 0.0, 1, 1, 0.0};
  for (const auto& b : best) {
    if (b.max_ratio > out.max_ratio) out = b;
  }
  return out;
}

}  // namespace circleforge
