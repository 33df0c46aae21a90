#pragma once

// One-dimensional quadrature for smooth complex integrands: fixed
// Gauss-Legendre panels and adaptive Gauss-Kronrod (7/15) bisection.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre_rule(std::size_t n);

template <class F>
cplx integrate_panel(F&& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

/// Composite rule over [a, b] with panels no wider than `max_width`.
template <class F>
cplx integrate_composite(F&& f, double a, double b, double max_width, const GaussRule& rule,
                         std::size_t* evaluations = nullptr) {
  if (b <= a) return 0.0;
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / max_width));
  cplx sum = 0.0;
  for (std::size_t j = 0; j < panels; ++j) {
    const double lo = a + (b - a) * static_cast<double>(j) / panels;
    const double hi = a + (b - a) * static_cast<double>(j + 1) / panels;
    sum += integrate_panel(f, lo, hi, rule);
  }
  if (evaluations) *evaluations += panels * rule.nodes.size();
  return sum;
}

struct AdaptiveResult {
  cplx value;
  double error;
  bool converged;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7)
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<cplx, cplx> kronrod15(F& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const cplx center = f(mid);
  cplx kronrod = kKronrodWeights[7] * center;
  cplx gauss = kGaussWeights[3] * center;
  for (std::size_t i = 0; i < 7; ++i) {
    const cplx pair = f(mid - half * kKronrodNodes[i]) + f(mid + half * kKronrodNodes[i]);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {half * kronrod, half * gauss};
}

template <class F>
AdaptiveResult adaptive_step(F& f, double a, double b, double tol, int depth) {
  const auto [k, g] = kronrod15(f, a, b);
  const double err = std::abs(k - g);
  if (err <= tol || depth == 0) return {k, err, err <= tol};
  const double mid = 0.5 * (a + b);
  const auto left = adaptive_step(f, a, mid, 0.5 * tol, depth - 1);
  const auto right = adaptive_step(f, mid, b, 0.5 * tol, depth - 1);
  return {left.value + right.value, left.error + right.error, left.converged && right.converged};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7/15 with bisection until |K15 - G7| <= tol.
template <class F>
AdaptiveResult integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 30) {
  return detail::adaptive_step(f, a, b, tol, max_depth);
}

}  // namespace circleforge
