// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qinterf/errors.hpp"
#include "qinterf/operators.hpp"

namespace qinterf {

/// Sorted eigenphases in [0, 2pi) of a unitary operator.
struct PhaseSpectrum {
  std::vector<double> phases;
  [[nodiscard]] std::size_t dim() const noexcept { return phases.size(); }
};

/// Nearest-neighbour spacings normalized to unit mean.
struct SpacingSample {
  std::vector<double> spacings;
};

inline constexpr double kUnitModulusTolerance = 1e-8;

/// Eigenphases via complex Schur decomposition (Hessenberg reduction and
/// shifted QR). Throws EigensolverFailure on non-convergence and
/// NumericalError if any eigenvalue strays from the unit circle.
inline PhaseSpectrum eigenphases(const UnitaryOperator& u) {
  const Eigen::MatrixXcd m = u.matrix();
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("eigenphases: complex eigensolver did not converge");
  PhaseSpectrum spectrum;
  spectrum.phases.reserve(u.dim());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (const Complex& lambda : solver.eigenvalues()) {
    const double mod = std::abs(lambda);
    if (!(std::abs(mod - 1.0) <= kUnitModulusTolerance))
      throw NumericalError("eigenphases: eigenvalue modulus " + std::to_string(mod) +
                           " is not 1; operator is not unitary");
    double phi = std::arg(lambda);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi || phi == 0.0) phi = 0.0;
    spectrum.phases.push_back(phi);
  }
  std::sort(spectrum.phases.begin(), spectrum.phases.end());
  return spectrum;
}

/// The N circular gaps between consecutive phases, including the
/// wrap-around gap, scaled by N / 2pi so that they sum to N.
inline SpacingSample spacings(const PhaseSpectrum& spectrum) {
  const auto& ph = spectrum.phases;
  const std::size_t n = ph.size();
  if (n < 2) throw InvalidArgument("spacings: need at least two phases");
  const double scale = static_cast<double>(n) / (2.0 * std::numbers::pi);
  SpacingSample out;
  out.spacings.reserve(n);
  for (std::size_t l = 0; l + 1 < n; ++l) out.spacings.push_back((ph[l + 1] - ph[l]) * scale);
  out.spacings.push_back((ph.front() + 2.0 * std::numbers::pi - ph.back()) * scale);
  return out;
}

namespace detail {
inline void check_nonnegative(double s) {
  if (!(s >= 0.0)) throw InvalidArgument("spacing must be non-negative");
}
}  // namespace detail

/// Wigner surmise (32 s^2 / pi^2) exp(-4 s^2 / pi).
inline double wigner_surmise(double s) {
  detail::check_nonnegative(s);
  constexpr double pi = std::numbers::pi;
  return 32.0 * s * s / (pi * pi) * std::exp(-4.0 * s * s / pi);
}

inline double wigner_cdf(double s) {
  detail::check_nonnegative(s);
  constexpr double pi = std::numbers::pi;
  if (std::isinf(s)) return 1.0;
  return std::erf(2.0 * s / std::sqrt(pi)) - 4.0 * s / pi * std::exp(-4.0 * s * s / pi);
}

/// Spacing law of uncorrelated levels.
inline double poisson_law(double s) {
  detail::check_nonnegative(s);
  return std::exp(-s);
}

}  // namespace qinterf
