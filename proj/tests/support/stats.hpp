// SPDX-License-Identifier: Apache-2.0
// Test-only statistics and brute-force oracles. Nothing here calls into the
// code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace qinterf::testing {

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanEstimate mean_of(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= (n - 1.0);
  return {m, std::sqrt(v / n)};
}

/// sup |F_n(x) - F(x)| for a continuous reference CDF.
inline double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Two-sample KS rejection threshold at the 1% level.
inline double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return 1.628 * std::sqrt((nn + mm) / (nn * mm));
}

/// Inverse of a monotone CDF on [lo, hi] by bisection.
inline double invert_cdf(const std::function<double(double)>& cdf, double u, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// ---------------------------------------------------------------------------
// Kronecker-product gate oracle (qubit 0 = leftmost factor = most
// significant bit).

using CMat = Eigen::MatrixXcd;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker product of one 2x2 factor per qubit.
inline CMat kron_all(const std::vector<CMat>& factors) {
  CMat out = CMat::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline CMat id2() { return CMat::Identity(2, 2); }
inline CMat proj0() {
  CMat p = CMat::Zero(2, 2);
  p(0, 0) = 1.0;
  return p;
}
inline CMat proj1() {
  CMat p = CMat::Zero(2, 2);
  p(1, 1) = 1.0;
  return p;
}
inline CMat pauli_x() {
  CMat x = CMat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}
inline CMat hadamard2() {
  CMat h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

inline CMat u2_from_angles(double alpha, double psi, double chi, double phi) {
  using namespace std::complex_literals;
  CMat u(2, 2);
  const auto e = [](double a) { return std::exp(std::complex<double>(0.0, a)); };
  u(0, 0) = std::cos(phi) * e(psi);
  u(0, 1) = std::sin(phi) * e(chi);
  u(1, 0) = -std::sin(phi) * e(-chi);
  u(1, 1) = std::cos(phi) * e(-psi);
  return e(alpha) * u;
}

inline CMat embed_single(const CMat& g, std::size_t target, std::size_t n) {
  std::vector<CMat> f(n, id2());
  f[target] = g;
  return kron_all(f);
}

inline CMat embed_cnot(std::size_t control, std::size_t target, std::size_t n) {
  std::vector<CMat> a(n, id2()), b(n, id2());
  a[control] = proj0();
  b[control] = proj1();
  b[target] = pauli_x();
  return kron_all(a) + kron_all(b);
}

inline CMat embed_toffoli(std::size_t c1, std::size_t c2, std::size_t target, std::size_t n) {
  std::vector<CMat> f(n, id2());
  f[c1] = proj1();
  f[c2] = proj1();
  f[target] = id2() - pauli_x();
  const auto dim = Eigen::Index{1} << n;
  return CMat::Identity(dim, dim) - kron_all(f);
}

}  // namespace qinterf::testing
