#include "curvetrends/fpca.hpp"

#include <string>

#include "curvetrends/linalg.hpp"
#include "fit_common.hpp"

namespace curvetrends {

Matrix FactorFit::loading_gram() const {
  const int n = static_cast<int>(loadings.size());
  Matrix acc = Matrix::Zero(q, q);
  for (const VectorCurve& l : loadings) acc += l.coefs * l.coefs.transpose();
  return n > 0 ? Matrix(acc / n) : acc;
}

namespace detail {

// Factors are sqrt(norm) times the leading eigenvectors, so the
// identification restriction holds by construction; loadings divide by norm
// with the per-series divisor stretched to the observed period count.
FactorFit fit_from_gram(const CurvePanel& panel, const GramMatrix& g, int q, double norm,
                        FitMode mode) {
  const int S = static_cast<int>(g.values.rows());
  const EigenDecomposition eig = sym_eig(g.values);

  FactorFit fit;
  fit.mode = mode;
  fit.q = q;
  fit.eigenvalues = eig.eigenvalues / norm;
  fit.factors = std::sqrt(norm) * eig.eigenvectors.leftCols(q);

  fit.loadings.reserve(static_cast<std::size_t>(panel.n_series()));
  for (int i = 0; i < panel.n_series(); ++i) {
    const Series& s = panel.series(i);
    int observed = 0;
    for (char a : s.avail) observed += a ? 1 : 0;
    VectorCurve l;
    l.basis = s.basis;
    if (observed == 0) {
      l.coefs = Matrix::Zero(q, s.basis.dimension);
    } else {
      // Missing periods hold zero coefficients, so the product sums over the
      // observed periods only; the divisor is rescaled by S / observed.
      const double scale = static_cast<double>(S) / (observed * norm);
      l.coefs = scale * (fit.factors.transpose() * s.coef.transpose());
    }
    fit.loadings.push_back(std::move(l));
  }
  return fit;
}

}  // namespace detail

FactorFit fit_fpca(const CurvePanel& panel, int q) {
  const int T = panel.n_periods();
  require(q >= 0 && q <= std::min(panel.n_series(), T), errc::invalid_argument,
          "fit_fpca: q out of range");
  const GramMatrix g = gram(panel, GramMode::levels);
  return detail::fit_from_gram(panel, g, q, static_cast<double>(T) * T, FitMode::levels);
}

Vector selection_eigenvalues(const FactorFit& fit) {
  // Levels eigenvalues are stored as eig(Gram)/T^2; the criteria operate on
  // eig(Gram)/S with S = T rows. Difference eigenvalues already carry the
  // row-count scale (Gram / (T-1)).
  if (fit.mode == FitMode::levels)
    return fit.eigenvalues * static_cast<double>(fit.eigenvalues.size());
  return fit.eigenvalues;
}

Matrix rotation_matrix(const FactorFit& fit, const Matrix& true_trends,
                       const std::vector<VectorCurve>& true_loadings) {
  require(fit.mode == FitMode::levels, errc::invalid_argument,
          "rotation_matrix: defined for levels fits");
  const int q = fit.q;
  const Eigen::Index T = fit.factors.rows();
  require(true_trends.rows() == T && true_trends.cols() == q, errc::invalid_argument,
          "rotation_matrix: trend dimensions do not match the fit");
  require(static_cast<int>(true_loadings.size()) == static_cast<int>(fit.loadings.size()),
          errc::invalid_argument, "rotation_matrix: series count mismatch");

  const Vector top = fit.eigenvalues.head(q);
  require(q == 0 || top.minCoeff() >= 1e-12 * fit.eigenvalues[0], errc::degenerate_spectrum,
          "rotation_matrix: near-zero eigenvalue in the top block");

  Matrix lam = Matrix::Zero(q, q);
  for (const VectorCurve& l : true_loadings) {
    require(l.coefs.rows() == q, errc::invalid_argument,
            "rotation_matrix: loading dimension mismatch");
    lam += l.coefs * l.coefs.transpose();
  }
  lam /= static_cast<double>(true_loadings.size());

  const Matrix cross = fit.factors.transpose() * true_trends / (static_cast<double>(T) * T);
  return top.cwiseInverse().asDiagonal() * cross * lam;
}

}  // namespace curvetrends
