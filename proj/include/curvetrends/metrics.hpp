#pragma once

#include <vector>

#include "curvetrends/basis.hpp"
#include "curvetrends/common.hpp"
#include "curvetrends/selection.hpp"

namespace curvetrends {

// Rotation-minimized approximation error between factor paths:
//   min_H (1/(q * normalizer)) sum_t || est_t - H truth_t ||^2,
// solved in closed form by H* = (est^T truth)(truth^T truth)^-1. The
// normalizer defaults to the common row count.
double ae_factors(const Matrix& est, const Matrix& truth, int normalizer = -1);

// Same criterion for functional loadings, with the Gram matrices accumulated
// from per-series functional inner products:
//   H* = (sum_i <est_i, truth_i^T>)(sum_i <truth_i, truth_i^T>)^-1.
double ae_loadings(const std::vector<VectorCurve>& est, const std::vector<VectorCurve>& truth);

struct ConfusionCounts {
  int under = 0;
  int correct = 0;
  int over = 0;
};

ConfusionCounts confusion_counts(const std::vector<int>& chosen, int truth);
ConfusionCounts confusion_counts(const std::vector<RankDecision>& decisions, int truth);

}  // namespace curvetrends
