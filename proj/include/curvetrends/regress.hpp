#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvetrends/common.hpp"

namespace curvetrends {

struct OlsSummary {
  Vector coef;  // intercept first when present
  Vector se;    // classical standard errors, sigma^2 (X^T X)^-1
  double sigma2 = 0.0;
  double r2 = 0.0;
  std::optional<double> f_stat;    // overall F for all non-intercept slopes
  std::optional<double> f_pvalue;  // absent when there are no slopes
  int n_obs = 0;
  int df_model = 0;  // number of tested slopes
  int df_residual = 0;
};

// Classical OLS of y on X (an intercept column is prepended when requested).
// R^2 is centered when an intercept is present, uncentered otherwise.
OlsSummary ols(const Vector& y, const Matrix& X, bool intercept = true);

// Regularized incomplete beta I_x(a, b) by Lentz continued fraction,
// 1e-10 target accuracy.
double regularized_incomplete_beta(double a, double b, double x);

// P(F(d1, d2) > f).
double f_tail_probability(double f, int d1, int d2);

}  // namespace curvetrends
