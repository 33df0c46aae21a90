#pragma once

// Weyl sums f_k, the integrals v_k, the major-arc approximation f_k*, arc
// classification, and toy-scale quadrature over major arcs and annuli.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

/// Largest P accepted per Weyl sum evaluation.
inline constexpr u64 kWeylSumLimit = 10'000'000;

/// |beta| P^k above this is rejected by vk_integral.
inline constexpr double kOscillationBudget = 1e6;

/// Panels per 1/X in the arc quadratures.
inline constexpr std::size_t kDefaultGrid = 10;

/// Exact rational point num/den; the numerator is reduced mod den.
struct Rational {
  i64 num;
  u64 den;
};

/// alpha = a/q + beta, kept apart so phases near a/q stay accurate.
struct ArcPoint {
  u64 q;
  u64 a;
  double beta;

  double value() const { return static_cast<double>(a) / static_cast<double>(q) + beta; }
};

cplx weyl_sum(int k, u64 P, double alpha);
cplx weyl_sum(int k, u64 P, Rational alpha);
cplx weyl_sum(int k, u64 P, const ArcPoint& alpha);

/// v_k(beta) = int_0^P e(beta g^k) dg.
cplx vk_integral(int k, u64 P, double beta);

/// f_k* = q^{-1} S_k(q,a) v_k(beta). a = 0 is accepted for q = 1.
cplx major_arc_approx(int k, u64 q, u64 a, double beta, u64 P);

enum class ArcKind { Major, Annulus, Peak, Minor };

std::string to_string(ArcKind kind);

struct ArcLabel {
  u64 q;
  u64 a;
  ArcKind kind;
  double Q;  // level parameter (W for Peak / Minor)
  double X;
};

/// Labels at level Q (Major when alpha is in M(Q/2), Annulus when in
/// N(Q) = M(Q) \ M(Q/2), empty outside M(Q)) and for the peak arcs P(W).
/// A Minor label carries the nearest fraction with denominator 1.
struct ArcClassification {
  std::optional<ArcLabel> level;
  ArcLabel peak;
};

/// Least q <= q_max with |q alpha - a| <= delta, found among the
/// continued-fraction convergents of alpha.
std::optional<std::pair<u64, u64>> least_denominator(double alpha, u64 q_max, double delta);

ArcClassification classify_arc(double alpha, double Q, double X, double W);

/// f~_2 = P2 (q + P2^2 |q alpha - a|)^{-1/2}.
double peak_majorant(double alpha, const ArcLabel& label, u64 P2);

struct PeakRatioSurvey {
  u64 X;
  double Q;
  std::size_t samples;  // grid points that fell in N(Q)
  double sup_ratio;     // max |f_2| / f~_2
  double alpha_at_sup;
};

/// sup |f_2(alpha)| / f~_2(alpha) over an equally spaced grid of [0,1)
/// restricted to N(Q).
PeakRatioSurvey peak_ratio_survey(u64 X, double Q, std::size_t grid_points);

/// A finite set Z of integers with unimodular weights eta (default 1).
class ExceptionalSample {
 public:
  explicit ExceptionalSample(std::vector<i64> members, std::vector<cplx> eta = {});

  std::span<const i64> members() const { return members_; }
  std::span<const cplx> eta() const { return eta_; }
  std::size_t size() const { return members_.size(); }
  /// The same set with every eta = 1.
  ExceptionalSample unweighted() const;

 private:
  std::vector<i64> members_;
  std::vector<cplx> eta_;
};

/// K(alpha) = sum_n eta_n e(-n alpha).
cplx sample_K(const ExceptionalSample& sample, double alpha);
cplx sample_K(const ExceptionalSample& sample, const ArcPoint& alpha);

/// Integral over one arc (or the part of it kept by the least-q rule).
struct ArcIntegral {
  u64 q;
  u64 a;
  double Q;
  cplx integral;
  std::size_t grid_points;
};

/// A quadrature result at step h together with the value at step 2h.
struct QuadratureEstimate {
  cplx value;
  cplx coarse;
  double halving_change;  // |value - coarse| / |value|
  std::size_t grid_points;
};

QuadratureEstimate make_estimate(cplx fine, cplx coarse, std::size_t grid_points);

struct MajorArcReport {
  i64 n;
  u64 X;
  u64 W;
  std::size_t grid;
  QuadratureEstimate f_integral;
  QuadratureEstimate fstar_integral;
  std::vector<ArcIntegral> arcs;       // f-integral per arc, sorted by (q, a)
  std::vector<ArcIntegral> arcs_star;  // f*-integral per arc
};

/// Default W for the diagnostics: ceil(X^0.1).
u64 default_peak_width(u64 X);

/// Composite quadrature of f2^2 f3^2 f6^2 e(-n alpha) and of its f*
/// analogue over the union of P(q,a), q <= W.
MajorArcReport major_arc_integral(i64 n, u64 X, u64 W, std::size_t grid = kDefaultGrid);

struct SingularIntegral {
  i64 n;
  u64 X;
  u64 W;
  QuadratureEstimate J;
  double gamma_form;  // Gamma-product * n
};

/// J(n;W) = int_{|beta| <= W/X} v2^2 v3^2 v6^2 e(-beta n) d beta.
SingularIntegral singular_integral_J(i64 n, u64 X, u64 W, std::size_t grid = kDefaultGrid);

struct PrunedReport {
  u64 X;
  double Q;
  std::size_t grid;
  std::size_t sample_size;
  double measure;  // Lebesgue measure of N(Q)
  QuadratureEstimate T0;
  QuadratureEstimate T1;
  QuadratureEstimate T2;
  std::vector<ArcIntegral> arcs;  // T0 per arc
  double sqrt_shape;              // X |Z|^{1/2}
  double linear_shape;            // X^{1 - delta^2} |Z|
  double delta;
};

/// Shape exponent used for the X^{1-delta^2} |Z| column.
inline constexpr double kPrunedShapeDelta = 0.1;

/// T0 = int_N(Q) |f2^2 f3^2 f6^2 K|, T1 with f2 replaced by f~_2, T2 with
/// f3 further replaced by f3*.
PrunedReport pruned_integral_diagnostic(u64 X, double Q, const ExceptionalSample& sample,
                                        std::size_t grid = kDefaultGrid);

/// Largest |f_k - f_k*| / q^{1/2} over q <= q_max, coprime a, and
/// `beta_steps` values of beta in [-W/X, W/X], with P_k = floor(X^{1/k}).
struct ApproximationSurvey {
  int k;
  u64 X;
  u64 W;
  double max_ratio;
  u64 q;
  u64 a;
  double beta;
};

ApproximationSurvey approximation_survey(int k, u64 X, u64 W, u64 q_max, std::size_t beta_steps);

}  // namespace circleforge
