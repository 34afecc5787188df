#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "curvetrends/common.hpp"
#include "curvetrends/linalg.hpp"

// Orthonormal-basis representation of curves. A curve lives entirely in
// coefficient space: inner products, norms and operator application are exact
// coefficient arithmetic (Parseval), and the continuous function is
// reconstructed only for plotting and quadrature cross-checks.

namespace curvetrends {

// Orthonormal Fourier system on [lo, hi], ordered
//   1, cos(2*pi*u), sin(2*pi*u), cos(4*pi*u), sin(4*pi*u), ...
// in the rescaled coordinate u = (s - lo) / (hi - lo), each function carrying
// the 1/sqrt(hi - lo) factor that makes the system orthonormal on the domain.
template <typename Scalar>
struct BasisSpecT {
  int dimension = 0;  // J, fixed for the lifetime of any panel using the spec
  Scalar lo = 0;
  Scalar hi = 1;

  bool operator==(const BasisSpecT& o) const {
    return dimension == o.dimension && lo == o.lo && hi == o.hi;
  }
  bool operator!=(const BasisSpecT& o) const { return !(*this == o); }

  Scalar evaluate(int j, Scalar s) const {
    const Scalar u = (s - lo) / (hi - lo);
    const Scalar scale = Scalar(1) / std::sqrt(hi - lo);
    if (j == 0) return scale;
    const int k = (j + 1) / 2;
    const Scalar arg = Scalar(2) * pi() * Scalar(k) * u;
    const Scalar f = (j % 2 == 1) ? std::cos(arg) : std::sin(arg);
    return scale * std::sqrt(Scalar(2)) * f;
  }

  // M x J design matrix of basis values at the given abscissae.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> design(
      const Eigen::Ref<const Eigen::Vector<Scalar, Eigen::Dynamic>>& grid) const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> D(grid.size(), dimension);
    for (Eigen::Index m = 0; m < grid.size(); ++m)
      for (int j = 0; j < dimension; ++j) D(m, j) = evaluate(j, grid[m]);
    return D;
  }

  static constexpr Scalar pi() { return Scalar(3.141592653589793238462643383279502884L); }
};

using BasisSpec = BasisSpecT<double>;

template <typename Scalar>
BasisSpecT<Scalar> fourier_basis(int dimension, Scalar lo, Scalar hi) {
  require(dimension >= 1, errc::invalid_argument, "fourier_basis: dimension must be >= 1");
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, errc::invalid_argument,
          "fourier_basis: degenerate domain");
  return BasisSpecT<Scalar>{dimension, lo, hi};
}

inline BasisSpec fourier_basis(int dimension, double lo = 0.0, double hi = 1.0) {
  return fourier_basis<double>(dimension, lo, hi);
}

template <typename Scalar>
struct CurveT {
  BasisSpecT<Scalar> basis;
  Eigen::Vector<Scalar, Eigen::Dynamic> coef;

  Eigen::Vector<Scalar, Eigen::Dynamic> evaluate(
      const Eigen::Ref<const Eigen::Vector<Scalar, Eigen::Dynamic>>& grid) const {
    return basis.design(grid) * coef;
  }

  Scalar squared_norm() const { return coef.squaredNorm(); }
};

using Curve = CurveT<double>;

template <typename Scalar>
Scalar inner_product(const CurveT<Scalar>& f, const CurveT<Scalar>& g) {
  require(f.basis == g.basis, errc::incompatible_basis, "inner_product: basis mismatch");
  return f.coef.dot(g.coef);
}

// Kernel integral operator K f (u) = int B(u, v) f(v) dv, stored as the
// J_out x J_in matrix of kernel coefficients against the two bases.
template <typename Scalar>
struct KernelOperatorT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;
  BasisSpecT<Scalar> in_basis;
  BasisSpecT<Scalar> out_basis;
};

using KernelOperator = KernelOperatorT<double>;

template <typename Scalar>
CurveT<Scalar> apply_operator(const KernelOperatorT<Scalar>& B, const CurveT<Scalar>& f) {
  require(f.basis == B.in_basis, errc::incompatible_basis, "apply_operator: basis mismatch");
  require(B.matrix.rows() == B.out_basis.dimension && B.matrix.cols() == B.in_basis.dimension,
          errc::invalid_argument, "apply_operator: kernel shape mismatch");
  return CurveT<Scalar>{B.out_basis, B.matrix * f.coef};
}

// q functions sharing one basis; row r of coefs holds the coefficients of the
// r-th component. <V^T, V> in the matrix-of-functions sense is coefs * coefs^T.
template <typename Scalar>
struct VectorCurveT {
  BasisSpecT<Scalar> basis;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> coefs;  // q x J

  Eigen::Index size() const { return coefs.rows(); }
};

using VectorCurve = VectorCurveT<double>;

// <A^T, B> for two vector curves on the same basis: entry (r, c) is the
// functional inner product of component r of A with component c of B.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> inner_product_matrix(
    const VectorCurveT<Scalar>& A, const VectorCurveT<Scalar>& B) {
  require(A.basis == B.basis, errc::incompatible_basis, "inner_product_matrix: basis mismatch");
  return A.coefs * B.coefs.transpose();
}

// Least-squares projection of discrete samples onto the basis:
// coef = argmin sum_m (values_m - sum_j coef_j phi_j(grid_m))^2.
template <typename Scalar>
CurveT<Scalar> smooth_to_basis(const Eigen::Ref<const Eigen::Vector<Scalar, Eigen::Dynamic>>& grid,
                               const Eigen::Ref<const Eigen::Vector<Scalar, Eigen::Dynamic>>& values,
                               const BasisSpecT<Scalar>& basis) {
  require(grid.size() == values.size(), errc::invalid_argument,
          "smooth_to_basis: grid/value length mismatch");
  require(grid.size() >= basis.dimension, errc::underdetermined_fit,
          "smooth_to_basis: fewer samples than basis dimension");
  for (Eigen::Index m = 0; m < grid.size(); ++m) {
    require(grid[m] >= basis.lo && grid[m] <= basis.hi, errc::invalid_argument,
            "smooth_to_basis: abscissa outside the basis domain");
    if (m > 0)
      require(grid[m] > grid[m - 1], errc::invalid_argument,
              "smooth_to_basis: abscissae must be strictly increasing");
  }
  const auto D = basis.design(grid);
  return CurveT<Scalar>{basis, lstsq(D, values)};
}

inline Curve smooth_to_basis(const Vector& grid, const Vector& values, const BasisSpec& basis) {
  return smooth_to_basis<double>(grid, values, basis);
}

// Fills NaN-marked gaps by linear interpolation between the nearest observed
// neighbors; leading/trailing gaps take the nearest observed value.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> interpolate_gaps(
    const Eigen::Ref<const Eigen::Vector<Scalar, Eigen::Dynamic>>& grid,
    const Eigen::Ref<const Eigen::Vector<Scalar, Eigen::Dynamic>>& values) {
  require(grid.size() == values.size(), errc::invalid_argument,
          "interpolate_gaps: grid/value length mismatch");
  const Eigen::Index n = values.size();
  Eigen::Index observed = 0;
  for (Eigen::Index m = 0; m < n; ++m)
    if (!std::isnan(values[m])) ++observed;
  require(observed >= 2, errc::insufficient_data,
          "interpolate_gaps: need at least two observed values");

  Eigen::Vector<Scalar, Eigen::Dynamic> out = values;
  Eigen::Index prev = -1;  // last observed index seen so far
  for (Eigen::Index m = 0; m < n; ++m) {
    if (std::isnan(values[m])) continue;
    if (prev < 0 && m > 0) out.head(m).setConstant(values[m]);  // leading gap
    if (prev >= 0 && m > prev + 1) {
      for (Eigen::Index k = prev + 1; k < m; ++k) {
        const Scalar w = (grid[k] - grid[prev]) / (grid[m] - grid[prev]);
        out[k] = (Scalar(1) - w) * values[prev] + w * values[m];
      }
    }
    prev = m;
  }
  if (prev < n - 1) out.tail(n - 1 - prev).setConstant(values[prev]);  // trailing gap
  return out;
}

inline Vector interpolate_gaps(const Vector& grid, const Vector& values) {
  return interpolate_gaps<double>(grid, values);
}

}  // namespace curvetrends
