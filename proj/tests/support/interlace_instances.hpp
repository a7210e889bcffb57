#pragma once

// Constructed interlacing / non-interlacing polynomial pairs with decisive
// separations, shared by the unit and acceptance suites.

#include <algorithm>
#include <vector>

#include "matclass/interlacing.hpp"
#include "matclass/rng.hpp"

namespace matclass::test {

inline std::vector<double> poly_from_roots(const std::vector<double>& roots, double lead = 1.0) {
  std::vector<double> c{lead};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * r;
    }
    c = std::move(next);
  }
  return c;
}

struct InstancePair {
  RealPolynomial p, q;
};

// Strictly interlacing: sorted p-roots with comfortable gaps, q-roots
// strictly inside the gaps.
inline InstancePair make_interlacing(int deg, CounterRng& rng) {
  std::vector<double> x(static_cast<size_t>(deg));
  double cur = rng.uniform(-3.0, -2.0);
  for (auto& v : x) {
    cur += 0.3 + rng.uniform(0.0, 0.8);
    v = cur;
  }
  std::vector<double> y(static_cast<size_t>(deg) - 1);
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    const double gap = x[i + 1] - x[i];
    y[i] = x[i] + gap * rng.uniform(0.2, 0.8);
  }
  return {RealPolynomial(poly_from_roots(x, rng.uniform(0.5, 2.0))),
          RealPolynomial(poly_from_roots(y, rng.uniform(0.5, 2.0)))};
}

// Decisively non-interlacing; mode 0 displaces a q-root outside the hull,
// mode 1 crowds two q-roots into one gap, mode 2 gives p a complex pair.
inline InstancePair make_non_interlacing(int deg, CounterRng& rng, int mode) {
  if (mode == 2 && deg >= 2) {
    std::vector<double> x(static_cast<size_t>(deg) - 2);
    double cur = rng.uniform(-3.0, -2.0);
    for (auto& v : x) {
      cur += 0.4 + rng.uniform(0.0, 0.6);
      v = cur;
    }
    std::vector<double> pc = poly_from_roots(x);
    const double b = rng.uniform(-0.5, 0.5);
    const double c = b * b / 4.0 + rng.uniform(0.5, 2.0);  // negative discriminant
    const std::vector<double> quad{1.0, b, c};
    std::vector<double> full(pc.size() + 2, 0.0);
    for (size_t i = 0; i < pc.size(); ++i)
      for (size_t j = 0; j < 3; ++j) full[i + j] += pc[i] * quad[j];
    std::vector<double> y(static_cast<size_t>(deg) - 1);
    double yc = rng.uniform(-3.0, -2.0);
    for (auto& v : y) {
      yc += 0.4 + rng.uniform(0.0, 0.5);
      v = yc;
    }
    return {RealPolynomial(std::move(full)), RealPolynomial(poly_from_roots(y))};
  }
  std::vector<double> x(static_cast<size_t>(deg));
  double cur = rng.uniform(-3.0, -2.0);
  for (auto& v : x) {
    cur += 0.3 + rng.uniform(0.0, 0.8);
    v = cur;
  }
  std::vector<double> y(static_cast<size_t>(deg) - 1);
  for (size_t i = 0; i + 1 < x.size(); ++i) y[i] = x[i] + (x[i + 1] - x[i]) * rng.uniform(0.2, 0.8);
  if (mode == 0) {
    y.back() = x.back() + 0.5 + rng.uniform(0.0, 1.0);
  } else if (y.size() >= 2) {
    y[0] = x[0] + (x[1] - x[0]) * 0.3;
    y[1] = x[0] + (x[1] - x[0]) * 0.7;
  } else {
    y.back() = x.back() + 0.5;
  }
  std::sort(y.begin(), y.end());
  return {RealPolynomial(poly_from_roots(x)), RealPolynomial(poly_from_roots(y))};
}

}  // namespace matclass::test
