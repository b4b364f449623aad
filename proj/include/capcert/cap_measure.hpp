#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "capcert/geometry.hpp"

namespace capcert {

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1] (QUADPACK constants).
inline constexpr double kK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gauss_kronrod_15(const F& f, double a, double b, double& value,
                             double& err) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(mid - half * kK15Nodes[i]);
    fv[14 - i] = f(mid + half * kK15Nodes[i]);
  }
  fv[7] = f(mid);
  double k15 = 0.0;
  for (int i = 0; i < 7; ++i) k15 += kK15Weights[i] * (fv[i] + fv[14 - i]);
  k15 += kK15Weights[7] * fv[7];
  double g7 = kG7Weights[3] * fv[7];
  for (int i = 0; i < 3; ++i) g7 += kG7Weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  value = k15 * half;
  err = std::abs(k15 - g7) * half;
}

/// Adaptive bisection driven by the Kronrod error estimate. The relative
/// tolerance is measured against the running total of the whole interval.
template <class F>
inline double integrate_adaptive(const F& f, double a, double b, double rel_tol) {
  struct Panel {
    double a, b, value, err;
  };
  Panel root{};
  root.a = a;
  root.b = b;
  gauss_kronrod_15(f, a, b, root.value, root.err);
  std::vector<Panel> panels{root};
  for (int round = 0; round < 4000; ++round) {
    double total = 0.0, total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      total_err += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    if (total_err <= rel_tol * std::abs(total) + 1e-300) return total;
    Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    Panel left{}, right{};
    left.a = p.a;
    left.b = mid;
    right.a = mid;
    right.b = p.b;
    gauss_kronrod_15(f, left.a, left.b, left.value, left.err);
    gauss_kronrod_15(f, right.a, right.b, right.value, right.err);
    panels[worst] = left;
    panels.push_back(right);
  }
  double total = 0.0;
  for (const Panel& p : panels) total += p.value;
  return total;
}

inline double sin_power(double t, int k) {
  if (k == 0) return 1.0;
  const double s = std::sin(t);
  if (s <= 0.0) return 0.0;
  return std::exp(static_cast<double>(k) * std::log(s));
}

// Regularized incomplete beta by Lentz's continued fraction.
inline double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 400; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h;
}

inline double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// Normalized surface measure of a cap of angular radius theta on S^{n-1}:
///   Omega_n(theta) = int_0^theta sin^{n-2} t dt / int_0^pi sin^{n-2} t dt.
/// Both integrals are evaluated by the same adaptive quadrature (advertised
/// relative tolerance 1e-10; the driver targets tighter).
inline double cap_measure(int n, Angle theta) {
  if (n < 2) throw error("cap measure needs sphere dimension n >= 2");
  const int k = n - 2;
  const auto f = [k](double t) { return detail::sin_power(t, k); };
  const double full = detail::integrate_adaptive(f, 0.0, kPi, 1e-13);
  if (theta.value() <= 0.0) return 0.0;
  if (theta.value() >= kPi) return 1.0;
  const double part = detail::integrate_adaptive(f, 0.0, theta.value(), 1e-13);
  return std::min(part / full, 1.0);
}

/// Same quantity through the regularized incomplete beta identity
///   Omega_n(theta) = 1/2 I_{sin^2 theta}((n-1)/2, 1/2)   for theta <= pi/2,
/// extended by symmetry above pi/2. Kept as an independent cross-check of
/// the quadrature route.
inline double cap_measure_beta(int n, Angle theta) {
  if (n < 2) throw error("cap measure needs sphere dimension n >= 2");
  const double t = theta.value();
  const double s = std::sin(t);
  const double half = 0.5 * detail::regularized_incomplete_beta((n - 1) / 2.0, 0.5, s * s);
  return t <= kPi / 2.0 ? half : 1.0 - half;
}

}  // namespace capcert
