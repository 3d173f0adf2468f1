// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qinterf/errors.hpp"

namespace qinterf {

using Complex = std::complex<double>;

// Row-major so that gate application, which combines whole rows, walks
// contiguous memory.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Largest deviation of M^dagger M from the identity, entrywise.
template <typename Derived>
double unitarity_residual(const Eigen::MatrixBase<Derived>& m) {
  const auto n = m.rows();
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Plain gram = m.adjoint() * m;
  return (gram - Plain::Identity(n, n)).cwiseAbs().maxCoeff();
}

inline constexpr double kUnitarityTolerance = 1e-12;

namespace detail {

template <typename Derived>
void check_square_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
  if (!m.allFinite())
    throw NumericalError(std::string(what) + ": matrix has non-finite entries");
}

}  // namespace detail

/// Dense N x N unitary matrix. Construction verifies the unitarity invariant.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m, double tolerance = kUnitarityTolerance)
      : m_(std::move(m)) {
    detail::check_square_finite(m_, "UnitaryOperator");
    const double residual = unitarity_residual(m_);
    if (!(residual <= tolerance))
      throw NumericalError("UnitaryOperator: unitarity residual " +
                           std::to_string(residual) + " exceeds tolerance");
  }

  [[nodiscard]] std::size_t dim() const noexcept {
    return static_cast<std::size_t>(m_.rows());
  }
  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] Complex operator()(std::size_t i, std::size_t k) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }

 private:
  ComplexMatrix m_;
};

/// Dense N x N real orthogonal matrix.
class OrthogonalOperator {
 public:
  explicit OrthogonalOperator(RealMatrix m, double tolerance = kUnitarityTolerance)
      : m_(std::move(m)) {
    detail::check_square_finite(m_, "OrthogonalOperator");
    const double residual = unitarity_residual(m_);
    if (!(residual <= tolerance))
      throw NumericalError("OrthogonalOperator: orthogonality residual " +
                           std::to_string(residual) + " exceeds tolerance");
  }

  [[nodiscard]] std::size_t dim() const noexcept {
    return static_cast<std::size_t>(m_.rows());
  }
  [[nodiscard]] const RealMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t k) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }

  [[nodiscard]] UnitaryOperator to_unitary() const {
    return UnitaryOperator(m_.cast<Complex>());
  }

 private:
  RealMatrix m_;
};

/// Lossless conversion of a unitary with exactly zero imaginary parts.
inline OrthogonalOperator to_orthogonal(const UnitaryOperator& u) {
  if (u.matrix().imag().cwiseAbs().maxCoeff() != 0.0)
    throw InvalidArgument("to_orthogonal: operator has non-zero imaginary parts");
  return OrthogonalOperator(u.matrix().real());
}

}  // namespace qinterf
