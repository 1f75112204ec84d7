#include "rbsect/polynomial.hpp"

#include <algorithm>

namespace rbsect {

int Poly::effective_degree(double scale) const {
  std::array<double, 5> mag{};
  double s = 1, big = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    mag[i] = std::abs(c[i]) * s;
    big = std::max(big, mag[i]);
    s *= scale;
  }
  if (big == 0) return -1;
  for (int i = 4; i >= 0; --i)
    if (mag[static_cast<std::size_t>(i)] > 1e-14 * big) return i;
  return -1;
}

namespace detail {

double bisect_root(const Poly& p, double a, double b, double fa) {
  const bool neg_a = fa < 0;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = p(m);
    if (fm == 0) return m;
    if ((fm < 0) == neg_a)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

// Roots found purely from sign changes; used for critical points where a
// missed double root only means a monotone stretch is not split.
Roots sign_change_roots(const Poly& p, double lo, double hi) {
  Roots out;
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const int deg = p.effective_degree(scale);
  if (deg <= 0) return out;
  if (deg == 1) {
    const double t = -p.c[0] / p.c[1];
    if (t >= lo && t <= hi) out.push(t);
    return out;
  }
  std::array<double, 8> brk{};
  std::size_t nb = 0;
  brk[nb++] = lo;
  for (double t : sign_change_roots(p.derivative(), lo, hi))
    if (t > lo && t < hi) brk[nb++] = t;
  brk[nb++] = hi;
  for (std::size_t i = 0; i + 1 < nb; ++i) {
    const double fa = p(brk[i]), fb = p(brk[i + 1]);
    if (fa == 0) {
      out.push(brk[i]);
      continue;
    }
    if ((fa < 0) != (fb < 0) && fb != 0) out.push(bisect_root(p, brk[i], brk[i + 1], fa));
  }
  if (p(hi) == 0) out.push(hi);
  sort_unique(out, 4 * 2.2e-16 * scale);
  return out;
}

void sort_unique(Roots& r, double tol) {
  std::sort(r.v.begin(), r.v.begin() + static_cast<std::ptrdiff_t>(r.n));
  std::size_t w = 0;
  for (std::size_t i = 0; i < r.n; ++i)
    if (w == 0 || r.v[i] - r.v[w - 1] > tol) r.v[w++] = r.v[i];
  r.n = w;
}

}  // namespace detail
}  // namespace rbsect
