// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qinterf/errors.hpp"
#include "qinterf/operators.hpp"
#include "qinterf/random_stream.hpp"

namespace qinterf {

/// Angles of the four-parameter form of a 2x2 unitary,
///
///   e^{i alpha} [[ cos(phi) e^{i psi},   sin(phi) e^{i chi}  ],
///                [ -sin(phi) e^{-i chi}, cos(phi) e^{-i psi} ]].
///
/// Haar measure on U(2) corresponds to alpha, psi, chi uniform on [0, 2pi)
/// and phi = arcsin(sqrt(xi)) with xi uniform on [0, 1).
struct U2Params {
  double alpha = 0.0;
  double psi = 0.0;
  double chi = 0.0;
  double phi = 0.0;

  friend bool operator==(const U2Params&, const U2Params&) = default;
};

inline U2Params u2_params_from(double alpha, double psi, double chi, double xi) {
  return {alpha, psi, chi, std::asin(std::sqrt(xi))};
}

inline U2Params sample_u2_params(RandomStream& stream) {
  const double alpha = stream.angle();
  const double psi = stream.angle();
  const double chi = stream.angle();
  const double xi = stream.uniform();
  return u2_params_from(alpha, psi, chi, xi);
}

inline ComplexMatrix u2_matrix(const U2Params& p) {
  const Complex global = std::polar(1.0, p.alpha);
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  ComplexMatrix m(2, 2);
  m(0, 0) = global * std::polar(c, p.psi);
  m(0, 1) = global * std::polar(s, p.chi);
  m(1, 0) = global * std::polar(-s, -p.chi);
  m(1, 1) = global * std::polar(c, -p.psi);
  return m;
}

/// Haar-random element of U(2).
inline UnitaryOperator sample_u2(RandomStream& stream) {
  return UnitaryOperator(u2_matrix(sample_u2_params(stream)));
}

/// Haar-random element of U(N) (circular unitary ensemble).
///
/// QR-decomposes a matrix of i.i.d. standard complex Gaussians and
/// multiplies column j of Q by r_jj / |r_jj|. Without that phase fix the
/// result depends on the Householder sign convention and is not Haar.
inline UnitaryOperator sample_cue(std::size_t dim, RandomStream& stream) {
  if (dim == 0) throw InvalidArgument("sample_cue: dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd g(n, n);
  const double scale = std::sqrt(0.5);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double re = stream.normal();
      const double im = stream.normal();
      g(i, k) = Complex(scale * re, scale * im);
    }

  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  ComplexMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mod = std::abs(d);
    // A zero pivot has probability zero; any phase is valid then.
    if (mod > 0.0) q.col(j) *= d / mod;
  }
  return UnitaryOperator(std::move(q));
}

/// Gaussian orthogonal ensemble sample A = (G + G^T) / 2, G i.i.d. N(0,1).
inline RealMatrix sample_goe(std::size_t dim, RandomStream& stream) {
  if (dim == 0) throw InvalidArgument("sample_goe: dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) g(i, k) = stream.normal();
  RealMatrix a = 0.5 * (g + g.transpose());
  return a;
}

/// Haar-random element of O(N) from the eigenvectors of a GOE sample.
///
/// Each eigenvector column is multiplied by an independent random sign;
/// eigensolvers normalize column signs deterministically, which would
/// otherwise bias the distribution. The eigenvalue ordering of the columns
/// needs no shuffling because Haar measure is right-invariant under
/// permutations.
inline OrthogonalOperator sample_hoe(std::size_t dim, RandomStream& stream) {
  const RealMatrix a = sample_goe(dim, stream);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      Eigen::MatrixXd(a), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("sample_hoe: symmetric eigensolver did not converge");
  RealMatrix v = solver.eigenvectors();
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    if (stream() >> 63) v.col(j) = -v.col(j);
  return OrthogonalOperator(std::move(v));
}

}  // namespace qinterf
