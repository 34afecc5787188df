#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "curvetrends/common.hpp"

// Dense numerical kernels with explicit contracts. All functions are pure and
// deterministic: identical input bits give identical output bits (Eigen's
// self-adjoint solver has a fixed sweep order, and the sign convention below
// removes the remaining eigenvector ambiguity).

namespace curvetrends {

template <typename Scalar>
struct EigenDecompositionT {
  // Sorted descending; columns of eigenvectors match positions.
  Eigen::Vector<Scalar, Eigen::Dynamic> eigenvalues;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
};

using EigenDecomposition = EigenDecompositionT<double>;

namespace detail {

// Flips column signs so the entry of largest magnitude is nonnegative
// (lowest index wins on ties).
template <typename Mat>
void fix_eigenvector_signs(Mat& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index imax = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, k) < 0) vectors.col(k) = -vectors.col(k);
  }
}

template <typename Derived>
void check_symmetric(const Eigen::MatrixBase<Derived>& A, const char* who) {
  using Scalar = typename Derived::Scalar;
  require(A.rows() == A.cols(), errc::invalid_argument, std::string(who) + ": matrix not square");
  const Scalar scale = A.template lpNorm<Eigen::Infinity>();
  const Scalar asym = (A - A.transpose()).template lpNorm<Eigen::Infinity>();
  require(asym <= Scalar(1e-8) * std::max(scale, Scalar(1)), errc::invalid_argument,
          std::string(who) + ": matrix not symmetric");
}

}  // namespace detail

// Full symmetric eigendecomposition, eigenvalues descending, orthonormal
// eigenvectors with the largest-entry-nonnegative sign convention.
template <typename Derived>
EigenDecompositionT<typename Derived::Scalar> sym_eig(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::check_symmetric(A, "sym_eig");
  const Mat sym = Scalar(0.5) * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  require(solver.info() == Eigen::Success, errc::numerical_failure, "sym_eig: no convergence");
  EigenDecompositionT<Scalar> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  detail::fix_eigenvector_signs(out.eigenvectors);
  return out;
}

// Minimizes ||Y - X B||_F by Householder QR with column pivoting; rank
// tolerance 1e-10 relative to the largest pivot (max column norm).
template <typename DerivedX, typename DerivedY>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic> lstsq(
    const Eigen::MatrixBase<DerivedX>& X, const Eigen::MatrixBase<DerivedY>& Y) {
  using Scalar = typename DerivedX::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  require(X.rows() == Y.rows(), errc::invalid_argument, "lstsq: row mismatch");
  require(X.rows() >= X.cols(), errc::invalid_argument, "lstsq: fewer rows than columns");
  Eigen::ColPivHouseholderQR<Mat> qr(X);
  qr.setThreshold(Scalar(1e-10));
  require(qr.rank() == X.cols(), errc::rank_deficient_fit, "lstsq: design is rank deficient");
  return qr.solve(Y.derived());
}

// log det of a symmetric positive definite matrix via Cholesky:
// 2 * sum(log diag(L)).
template <typename Derived>
typename Derived::Scalar logdet_spd(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::check_symmetric(A, "logdet_spd");
  const Mat sym = Scalar(0.5) * (A + A.transpose());
  Eigen::LLT<Mat> llt(sym);
  require(llt.info() == Eigen::Success, errc::not_positive_definite,
          "logdet_spd: Cholesky failed");
  return Scalar(2) * Mat(llt.matrixL()).diagonal().array().log().sum();
}

// Generalized symmetric eigenproblem S v = lambda M v with M SPD, reduced via
// M = L L^T to a standard problem. Eigenvalues descending; vectors normalized
// so v^T M v = 1, signs fixed as in sym_eig.
template <typename DerivedS, typename DerivedM>
EigenDecompositionT<typename DerivedS::Scalar> gen_sym_eig(
    const Eigen::MatrixBase<DerivedS>& S, const Eigen::MatrixBase<DerivedM>& M) {
  using Scalar = typename DerivedS::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::check_symmetric(S, "gen_sym_eig");
  detail::check_symmetric(M, "gen_sym_eig");
  require(S.rows() == M.rows(), errc::invalid_argument, "gen_sym_eig: dimension mismatch");
  const Mat msym = Scalar(0.5) * (M + M.transpose());
  Eigen::LLT<Mat> llt(msym);
  require(llt.info() == Eigen::Success, errc::not_positive_definite, "gen_sym_eig: M not SPD");
  const Mat L = llt.matrixL();
  // C = L^-1 S L^-T, kept symmetric explicitly.
  Mat C = L.template triangularView<Eigen::Lower>().solve(
      Mat(Scalar(0.5) * (S + S.transpose())));
  C = L.template triangularView<Eigen::Lower>().solve(Mat(C.transpose()));
  C = Scalar(0.5) * (C + C.transpose());
  EigenDecompositionT<Scalar> out = sym_eig(C);
  out.eigenvectors =
      L.transpose().template triangularView<Eigen::Upper>().solve(out.eigenvectors);
  detail::fix_eigenvector_signs(out.eigenvectors);
  return out;
}

}  // namespace curvetrends
