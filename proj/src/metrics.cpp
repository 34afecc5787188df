#include "curvetrends/metrics.hpp"

#include <Eigen/Dense>

namespace curvetrends {

double ae_factors(const Matrix& est, const Matrix& truth, int normalizer) {
  require(est.rows() == truth.rows() && est.cols() == truth.cols(), errc::invalid_argument,
          "ae_factors: shape mismatch");
  const Eigen::Index S = est.rows();
  const Eigen::Index q = est.cols();
  require(S >= 1 && q >= 1, errc::invalid_argument, "ae_factors: empty input");
  if (normalizer < 0) normalizer = static_cast<int>(S);

  const Matrix gram = truth.transpose() * truth;
  Eigen::LDLT<Matrix> ldlt(gram);
  require(ldlt.info() == Eigen::Success && ldlt.isPositive() &&
              ldlt.vectorD().minCoeff() > 1e-12 * std::max(1.0, ldlt.vectorD().maxCoeff()),
          errc::degenerate_truth, "ae_factors: truth is rank deficient");
  const Matrix ht = ldlt.solve(truth.transpose() * est);  // H^T
  return (est - truth * ht).squaredNorm() / (static_cast<double>(q) * normalizer);
}

double ae_loadings(const std::vector<VectorCurve>& est, const std::vector<VectorCurve>& truth) {
  require(!est.empty() && est.size() == truth.size(), errc::invalid_argument,
          "ae_loadings: series count mismatch");
  const Eigen::Index q = est.front().coefs.rows();
  require(q >= 1, errc::invalid_argument, "ae_loadings: empty loadings");

  Matrix cross = Matrix::Zero(q, q);  // sum_i <est_i, truth_i^T>
  Matrix gram = Matrix::Zero(q, q);   // sum_i <truth_i, truth_i^T>
  for (std::size_t i = 0; i < est.size(); ++i) {
    require(est[i].coefs.rows() == q && truth[i].coefs.rows() == q, errc::invalid_argument,
            "ae_loadings: inconsistent component count");
    require(est[i].basis == truth[i].basis, errc::incompatible_basis,
            "ae_loadings: series bases differ between estimate and truth");
    cross += est[i].coefs * truth[i].coefs.transpose();
    gram += truth[i].coefs * truth[i].coefs.transpose();
  }
  Eigen::LDLT<Matrix> ldlt(gram);
  require(ldlt.info() == Eigen::Success && ldlt.isPositive() &&
              ldlt.vectorD().minCoeff() > 1e-12 * std::max(1.0, ldlt.vectorD().maxCoeff()),
          errc::degenerate_truth, "ae_loadings: truth Gram is singular");
  const Matrix h = Matrix(ldlt.solve(cross.transpose())).transpose();  // H*

  double total = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i)
    total += (est[i].coefs - h * truth[i].coefs).squaredNorm();
  return total / (static_cast<double>(q) * static_cast<double>(est.size()));
}

ConfusionCounts confusion_counts(const std::vector<int>& chosen, int truth) {
  require(!chosen.empty(), errc::invalid_argument, "confusion_counts: empty input");
  ConfusionCounts c;
  for (int v : chosen) {
    if (v < truth)
      ++c.under;
    else if (v == truth)
      ++c.correct;
    else
      ++c.over;
  }
  return c;
}

ConfusionCounts confusion_counts(const std::vector<RankDecision>& decisions, int truth) {
  std::vector<int> chosen;
  chosen.reserve(decisions.size());
  for (const RankDecision& d : decisions) chosen.push_back(d.chosen);
  return confusion_counts(chosen, truth);
}

}  // namespace curvetrends
