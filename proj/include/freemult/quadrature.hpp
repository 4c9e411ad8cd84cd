#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace freemult {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights by Newton iteration on the Legendre recurrence.
inline GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace detail {

inline const GaussRule& gl7() {
  static const GaussRule rule = make_gauss_legendre(7);
  return rule;
}

inline const GaussRule& gl15() {
  static const GaussRule rule = make_gauss_legendre(15);
  return rule;
}

template <class F>
double apply_rule(const GaussRule& rule, F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + hw * rule.nodes[i]);
  return hw * sum;
}

}  // namespace detail

struct QuadOptions {
  double tol = 1e-9;  // absolute target for the whole integral
  double cap = std::numeric_limits<double>::infinity();  // early +inf bail (nonnegative integrands)
  bool nonnegative = false;
  int max_depth = 60;
};

/// Adaptive Gauss-Legendre over the panels delimited by `breaks` (sorted).
/// Panels are halved until the GL7/GL15 discrepancy meets the local share of
/// the tolerance. With `nonnegative` set, an accumulated value beyond `cap`
/// returns +inf immediately; this is how divergent kernel integrals are
/// reported rather than looping forever.
template <class F>
double integrate_adaptive(F&& f, std::span<const double> breaks, const QuadOptions& opt = {}) {
  if (breaks.size() < 2) throw std::invalid_argument("integrate_adaptive: need at least one panel");
  const double total_width = breaks.back() - breaks.front();
  if (!(total_width > 0.0)) return 0.0;

  struct Panel {
    double a, b, tol;
    int depth;
  };
  std::vector<Panel> stack;
  stack.reserve(128);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (b <= a) continue;
    stack.push_back({a, b, opt.tol * (b - a) / total_width, 0});
  }

  double total = 0.0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double coarse = detail::apply_rule(detail::gl7(), f, p.a, p.b);
    const double fine = detail::apply_rule(detail::gl15(), f, p.a, p.b);
    const double err = std::abs(fine - coarse);
    if (err <= std::max(p.tol, 1e-14 * std::abs(fine)) || p.depth >= opt.max_depth) {
      total += fine;
      if (opt.nonnegative && total > opt.cap) return std::numeric_limits<double>::infinity();
      if (std::isinf(total) || std::isnan(total)) return total;
    } else {
      const double mid = 0.5 * (p.a + p.b);
      stack.push_back({p.a, mid, 0.5 * p.tol, p.depth + 1});
      stack.push_back({mid, p.b, 0.5 * p.tol, p.depth + 1});
    }
  }
  return total;
}

template <class F>
double integrate_adaptive(F&& f, double a, double b, const QuadOptions& opt = {}) {
  const double breaks[2] = {a, b};
  return integrate_adaptive(std::forward<F>(f), std::span<const double>(breaks, 2), opt);
}

/// Least-squares slope of y against x.
inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares_slope: need >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace freemult
