#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace freemult {

using cplx = std::complex<double>;

/// Truncated formal power series: coefficients c[0..order], arithmetic exact
/// through `order` (terms beyond it are dropped, never approximated).
class PowerSeries {
 public:
  explicit PowerSeries(int order) : c_(static_cast<std::size_t>(order) + 1, cplx(0.0)) {
    if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
  }

  static PowerSeries constant(cplx value, int order) {
    PowerSeries s(order);
    s.c_[0] = value;
    return s;
  }

  static PowerSeries identity(int order) {
    PowerSeries s(order);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const cplx& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  std::span<const cplx> coefficients() const { return c_; }

  PowerSeries truncated(int order) const {
    PowerSeries out(order);
    const int m = std::min(order, this->order());
    for (int k = 0; k <= m; ++k) out.c_[k] = c_[k];
    return out;
  }

  /// Multiply by z (shift coefficients up).
  PowerSeries shifted_up() const {
    PowerSeries out(order());
    for (int k = order(); k >= 1; --k) out.c_[k] = c_[k - 1];
    return out;
  }

  /// Divide by z; requires a vanishing constant term.
  PowerSeries shifted_down() const {
    if (std::abs(c_[0]) > 1e-13)
      throw std::domain_error("PowerSeries: division by z needs zero constant term");
    PowerSeries out(order());
    for (int k = 0; k < order(); ++k) out.c_[k] = c_[k + 1];
    return out;
  }

  PowerSeries derivative() const {
    PowerSeries out(order());
    for (int k = 1; k <= order(); ++k) out.c_[k - 1] = static_cast<double>(k) * c_[k];
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (int k = 0; k <= out.order(); ++k) out.c_[k] = a.c_[k] + b.c_[k];
    return out;
  }

  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (int k = 0; k <= out.order(); ++k) out.c_[k] = a.c_[k] - b.c_[k];
    return out;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (int i = 0; i <= out.order(); ++i) {
      if (a.c_[i] == cplx(0.0)) continue;
      for (int j = 0; i + j <= out.order(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  friend PowerSeries operator*(cplx s, const PowerSeries& a) {
    PowerSeries out = a;
    for (auto& v : out.c_) v *= s;
    return out;
  }

 private:
  std::vector<cplx> c_;
};

/// a / b with b(0) != 0, by the standard coefficient recurrence.
inline PowerSeries divide(const PowerSeries& a, const PowerSeries& b) {
  if (std::abs(b[0]) < 1e-300) throw std::domain_error("PowerSeries divide: zero constant term");
  const int n = std::min(a.order(), b.order());
  PowerSeries q(n);
  for (int k = 0; k <= n; ++k) {
    cplx acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b[0];
  }
  return q;
}

/// s(g(z)) truncated; requires g(0) = 0 so the composition is well defined order by order.
inline PowerSeries compose(const PowerSeries& s, const PowerSeries& g) {
  if (std::abs(g[0]) > 1e-13) throw std::domain_error("PowerSeries compose: inner series must vanish at 0");
  const int n = std::min(s.order(), g.order());
  PowerSeries inner = g.truncated(n);
  inner[0] = 0.0;
  PowerSeries result = PowerSeries::constant(s[n], n);
  for (int k = n - 1; k >= 0; --k) {
    result = result * inner;
    result[0] += s[k];
  }
  return result;
}

/// exp of a series (arbitrary constant term): exp(c0) * E where E solves E' = (g - c0)' E.
inline PowerSeries exp_series(const PowerSeries& g) {
  const int n = g.order();
  PowerSeries e(n);
  e[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    cplx acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * g[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return std::exp(g[0]) * e;
}

/// Compositional inverse: g with s(g(z)) = z through the common order.
/// Newton iteration on the truncated composition; the residual is always
/// re-checked, a failure there means the inversion is ill conditioned.
inline PowerSeries compositional_inverse(const PowerSeries& s, double residual_tol = 1e-10) {
  if (std::abs(s[0]) > 1e-13)
    throw std::domain_error("compositional inverse: series must vanish at 0");
  if (std::abs(s[1]) <= 1e-12)
    throw std::domain_error("compositional inverse: zero first coefficient");
  const int n = s.order();
  const PowerSeries ds = s.derivative();
  PowerSeries g(n);
  g[1] = 1.0 / s[1];
  int steps = 2;
  for (int m = n; m > 1; m /= 2) ++steps;
  for (int it = 0; it < steps + 2; ++it) {
    PowerSeries res = compose(s, g) - PowerSeries::identity(n);
    g = g - divide(res, compose(ds, g));
    g[0] = 0.0;
  }
  const PowerSeries res = compose(s, g) - PowerSeries::identity(n);
  const double scale = std::max(1.0, s.max_abs());
  if (res.max_abs() > residual_tol * scale)
    throw std::runtime_error("compositional inverse: residual check failed");
  return g;
}

}  // namespace freemult
