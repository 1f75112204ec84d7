#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

namespace rbsect {

/// Real polynomial of degree at most four, c[i] multiplies t^i.
struct Poly {
  std::array<double, 5> c{};

  Poly() = default;
  Poly(double c0, double c1 = 0, double c2 = 0, double c3 = 0, double c4 = 0)
      : c{c0, c1, c2, c3, c4} {}

  double operator()(double t) const {
    return (((c[4] * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
  }

  Poly derivative() const { return {c[1], 2 * c[2], 3 * c[3], 4 * c[4], 0}; }

  /// Degree after dropping leading terms that are negligible on |t| <= scale.
  int effective_degree(double scale) const;

  bool is_negligible(double scale) const { return effective_degree(scale) < 0; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    for (std::size_t i = 0; i < 5; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    for (std::size_t i = 0; i < 5; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  friend Poly operator*(double s, const Poly& a) {
    Poly r;
    for (std::size_t i = 0; i < 5; ++i) r.c[i] = s * a.c[i];
    return r;
  }
  // Product truncated to degree four; callers only multiply quadratics.
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; i + j < 5; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
};

/// Up to eight sorted roots; fixed capacity keeps hot loops allocation free.
struct Roots {
  std::array<double, 8> v{};
  std::size_t n = 0;

  void push(double t) {
    if (n < v.size()) v[n++] = t;
  }
  const double* begin() const { return v.data(); }
  const double* end() const { return v.data() + n; }
  std::size_t size() const { return n; }
  bool empty() const { return n == 0; }
  double operator[](std::size_t i) const { return v[i]; }
};

namespace detail {

Roots sign_change_roots(const Poly& p, double lo, double hi);
double bisect_root(const Poly& p, double a, double b, double fa);
void sort_unique(Roots& r, double tol);

}  // namespace detail

/// Real roots of p in [lo, hi], sorted ascending.
///
/// A breakpoint (an interval end or a critical point of p) with
/// |p(t)| <= tol(t) is reported as a root, which is how tangential
/// contacts and endpoint contacts are recognised. Between breakpoints p is
/// monotone, so strict sign changes are isolated and bisected to machine
/// precision.
template <class Tol>
Roots real_roots(const Poly& p, double lo, double hi, Tol&& tol) {
  Roots out;
  if (!(lo <= hi)) return out;
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const int deg = p.effective_degree(scale);
  if (deg <= 0) return out;

  std::array<double, 8> brk{};
  std::size_t nb = 0;
  brk[nb++] = lo;
  if (deg >= 2) {
    for (double t : detail::sign_change_roots(p.derivative(), lo, hi))
      if (t > lo && t < hi) brk[nb++] = t;
  }
  brk[nb++] = hi;

  std::array<double, 8> val{};
  std::array<bool, 8> near{};
  for (std::size_t i = 0; i < nb; ++i) {
    val[i] = p(brk[i]);
    near[i] = std::abs(val[i]) <= tol(brk[i]);
    if (near[i]) out.push(brk[i]);
  }
  for (std::size_t i = 0; i + 1 < nb; ++i) {
    if (near[i] || near[i + 1]) continue;
    if ((val[i] < 0) != (val[i + 1] < 0))
      out.push(detail::bisect_root(p, brk[i], brk[i + 1], val[i]));
  }
  detail::sort_unique(out, 4 * 2.2e-16 * scale);
  return out;
}

inline Roots real_roots(const Poly& p, double lo, double hi) {
  return real_roots(p, lo, hi, [](double) { return 0.0; });
}

}  // namespace rbsect
