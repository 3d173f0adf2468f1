// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>

#include "qinterf/errors.hpp"
#include "qinterf/operators.hpp"

namespace qinterf {

enum class CircularEnsemble { CUE, HOE };

namespace detail {

// Double-double accumulator built from error-free transformations.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble add(DoubleDouble x, DoubleDouble y) {
  DoubleDouble s = two_sum(x.hi, y.hi);
  s.lo += x.lo + y.lo;
  return two_sum(s.hi, s.lo);
}

inline DoubleDouble square(DoubleDouble x) {
  DoubleDouble p = two_prod(x.hi, x.hi);
  p.lo += 2.0 * x.hi * x.lo;
  return two_sum(p.hi, p.lo);
}

inline DoubleDouble abs2(double re, double im) { return add(two_prod(re, re), two_prod(im, im)); }
inline DoubleDouble abs2(double re) { return two_prod(re, re); }

template <typename Matrix>
double interference_of(const Matrix& m) {
  DoubleDouble sum;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const auto v = m(i, k);
      if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>)
        sum = add(sum, square(abs2(v)));
      else
        sum = add(sum, square(abs2(v.real(), v.imag())));
    }
  const auto n = static_cast<double>(m.rows());
  const DoubleDouble r = add({n, 0.0}, {-sum.hi, -sum.lo});
  return r.hi + r.lo;
}

}  // namespace detail

/// Interference N - sum_{ik} |U_ik|^4 of a unitary propagator.
///
/// The sum of fourth powers is accumulated in double-double arithmetic so
/// that exact equipartition (all |U_ik|^2 = 1/N) yields N - 1 to the last
/// bit even when the entries carry a rounded 1/sqrt(2).
inline double interference(const UnitaryOperator& u) { return detail::interference_of(u.matrix()); }
inline double interference(const OrthogonalOperator& o) {
  return detail::interference_of(o.matrix());
}

/// Exponents (m1, m2, m3) of the Haar moment
/// < |U_{i1 j1}|^{2 m1} |U_{i1 j2}|^{2 m2} |U_{i2 j2}|^{2 m3} >
/// (CUE) or < O_{i1 j1}^{m1} O_{i1 j2}^{m2} O_{i2 j2}^{m3} > (HOE).
struct MomentTriple {
  unsigned m1 = 0;
  unsigned m2 = 0;
  unsigned m3 = 0;
};

/// Invariant-integration moment over U(N), evaluated through log-gamma.
inline double z_cue(std::size_t dim, MomentTriple m) {
  if (dim < 2) throw InvalidArgument("z_cue requires N >= 2");
  const double n = static_cast<double>(dim);
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  auto lf = [](double x) { return std::lgamma(x + 1.0); };  // log x!
  const double log_z = lf(m1) + lf(m2) + lf(m3) + lf(n - 2) + lf(n - 1) + lf(n + m1 + m3 - 2) -
                       lf(n + m1 - 2) - lf(n + m3 - 2) - lf(n + m1 + m2 + m3 - 1);
  return std::exp(log_z);
}

/// Invariant-integration moment over O(N); all exponents must be even.
inline double z_hoe(std::size_t dim, MomentTriple m) {
  if (dim < 2) throw InvalidArgument("z_hoe requires N >= 2");
  if (m.m1 % 2 || m.m2 % 2 || m.m3 % 2)
    throw InvalidArgument("z_hoe requires even exponents");
  const double n = static_cast<double>(dim);
  const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
  auto lg = [](double x) { return std::lgamma(x); };
  const double log_z = (2.0 - n) * std::numbers::ln2 + lg((1 + m1) / 2) + lg((1 + m2) / 2) +
                       lg((1 + m3) / 2) + lg(n - 1) + lg((n + m1 + m3 - 1) / 2) -
                       std::log(std::numbers::pi) - lg((n + m1 - 1) / 2) - lg((n + m3 - 1) / 2) -
                       lg((n + m1 + m2 + m3) / 2);
  return std::exp(log_z);
}

namespace detail {
inline double checked_dim(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("dimension must be positive");
  return static_cast<double>(dim);
}
}  // namespace detail

/// Ensemble average of the interference.
inline double exact_mean(CircularEnsemble e, std::size_t dim) {
  const double n = detail::checked_dim(dim);
  return e == CircularEnsemble::CUE ? n * (1.0 - 2.0 / (n + 1.0)) : n * (1.0 - 3.0 / (n + 2.0));
}

/// Ensemble variance of the interference.
inline double exact_variance(CircularEnsemble e, std::size_t dim) {
  const double n = detail::checked_dim(dim);
  if (e == CircularEnsemble::CUE) return 4.0 * (n - 1.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0));
  return 24.0 * n * (n - 1.0) / ((n + 2.0) * (n + 2.0) * (n * n + 7.0 * n + 6.0));
}

/// < (sum_{ik} |U_ik|^4)^2 > over the ensemble.
inline double second_moment_s(CircularEnsemble e, std::size_t dim) {
  const double n = detail::checked_dim(dim);
  if (e == CircularEnsemble::CUE) return 4.0 * (n * n + 2.0 * n - 1.0) / ((n + 1.0) * (n + 3.0));
  return 3.0 * n * (-4.0 + 3.0 * n * (n + 5.0)) / ((n + 1.0) * (n + 2.0) * (n + 6.0));
}

namespace detail {
inline void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw InvalidArgument(std::string(what) + ": interference must lie in [0, 1] for N = 2");
}
}  // namespace detail

/// Exact interference density at N = 2. The endpoint singularities
/// (I = 1 for CUE; I = 0 and I = 1 for HOE) are rejected.
inline double analytic_density_n2(CircularEnsemble e, double i) {
  detail::check_unit_interval(i, "analytic_density_n2");
  if (e == CircularEnsemble::CUE) {
    if (i == 1.0) throw InvalidArgument("analytic_density_n2: CUE density diverges at I = 1");
    return 0.5 / std::sqrt(1.0 - i);
  }
  if (i == 0.0 || i == 1.0)
    throw InvalidArgument("analytic_density_n2: HOE density diverges at I = 0 and I = 1");
  return 1.0 / (std::numbers::pi * std::sqrt(i * (1.0 - i)));
}

inline double analytic_cdf_n2(CircularEnsemble e, double i) {
  detail::check_unit_interval(i, "analytic_cdf_n2");
  if (e == CircularEnsemble::CUE) return 1.0 - std::sqrt(1.0 - i);
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(i));
}

}  // namespace qinterf
