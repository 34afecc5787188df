#pragma once

#include <Eigen/Dense>

#include <vector>

#include "curvetrends/basis.hpp"
#include "curvetrends/common.hpp"
#include "curvetrends/panel.hpp"

namespace curvetrends {

enum class FitMode { levels, differences };

// Estimated factor structure from either the levels eigenanalysis (FitMode::
// levels: factors are the common stochastic trends) or the differenced one
// (FitMode::differences: factors are the stationary increments and `trends`
// holds their cumulative sums).
struct FactorFit {
  FitMode mode = FitMode::levels;
  int q = 0;
  Matrix factors;      // S x q, S = T (levels) or T-1 (differences)
  Vector eigenvalues;  // all S eigenvalues of the scaled Gram, descending
  std::vector<VectorCurve> loadings;  // N entries, q functions each
  Matrix trends;       // S x q cumulative factors (differences mode only)

  // Second-moment matrix of the loadings, (1/N) sum_i <Lambda_i, Lambda_i^T>.
  Matrix loading_gram() const;
};

// Levels-based functional PCA. Factors are the top-q eigenvectors of the
// cross-period Gram scaled by T, so (1/T^2) factors^T factors = I_q;
// loadings are the least-squares projections (1/T^2) sum_t Z_it factors_t,
// with the divisor adjusted to the observed periods of each series. q = 0
// returns the empty fit (eigenvalues still populated).
FactorFit fit_fpca(const CurvePanel& panel, int q);

// Simulation diagnostic: the q x q matrix H such that factors_t tracks
// H G_t, computed from the latent truth as
//   V^-1 ((1/T^2) factors^T G) [(1/N) sum_i <Lambda_i, Lambda_i^T>]
// with V = diag(top-q eigenvalues of the scaled Gram).
Matrix rotation_matrix(const FactorFit& fit, const Matrix& true_trends,
                       const std::vector<VectorCurve>& true_loadings);

// Spectrum on the scale the trend-count criteria expect: the Gram divided by
// its row count, for both fit modes. FactorFit stores the identification
// scale (Gram / T^2 in levels), whose eigenvalues shrink like 1/T and sit
// below any workable penalty; the criteria separate signal from noise on the
// row-count scale.
Vector selection_eigenvalues(const FactorFit& fit);

}  // namespace curvetrends
