#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "curvetrends/common.hpp"

namespace curvetrends {

enum class SelectionMethod { levels_ic, diff_ic, bic, hq };

const char* to_string(SelectionMethod m);

struct RankDecision {
  int chosen = 0;
  SelectionMethod method = SelectionMethod::levels_ic;
  double penalty_value = 0.0;
  std::vector<std::pair<int, double>> criterion_path;  // (candidate j, criterion value)
};

// Default penalties from the simulation calibration; both shrink like the
// estimation error of the corresponding eigenvalues.
double default_penalty_levels(int N, int T);  // 4 log(N ^ T) (1/T + 1/N)
double default_penalty_diff(int N, int T);    // 0.6 log(sqrt(N) ^ sqrt(T)) (1/sqrt(T) + 1/sqrt(N))

// Upper bound for the candidate count when the caller leaves it open.
int default_q_max(int N, int S);  // min(20, N - 1, S - 1)

// Trend-count criterion: chosen = argmin_{1<=j<=q_max} { nu_j + j * rho } - 1.
// The default penalty is calibrated for eigenvalues of the Gram divided by
// its row count (see selection_eigenvalues); on that scale the signal block
// sits above rho and the noise floor below it for both fit modes.
RankDecision select_q_levels(const Vector& eigenvalues, int N, int T, int q_max,
                             std::optional<double> rho = std::nullopt);

// Differences analogue; same argmin-minus-one rule with its own default
// penalty.
RankDecision select_q_diff(const Vector& eigenvalues, int N, int T, int q_max,
                           std::optional<double> rho = std::nullopt);

// Rank-j error-correction fit of increments on lagged trends.
struct VecmFit {
  int rank = 0;
  Matrix alpha;   // q x j
  Matrix beta;    // q x j, normalized so beta^T S11 beta = I_j
  Matrix sigma;   // q x q residual covariance
  double logdet = 0.0;
};

// Reduced-rank regression of xi_t on g_t (rows pre-aligned by the caller so
// row t pairs the increment with the lagged trend). j = 0 fits no regressor:
// sigma is the raw second moment of xi. j >= 1 solves the Gaussian RRR
// eigenproblem: beta = top-j generalized eigenvectors of
// (S10 S00^-1 S01, S11), alpha = S01 beta (beta^T S11 beta)^-1.
VecmFit rrr_fit(const Matrix& xi, const Matrix& g, int j);

// Lag alignment helper: row t of the result is trends.row(t-1), with a zero
// first row standing in for the unidentified pre-sample trend level.
Matrix lagged_trends(const Matrix& trends);

// Cointegrating-rank criterion over j = 0..q-1:
//   log det sigma(j) + (rho / T) (2 q j - j^2),
// rho = log T (BIC) or 2 log log T (HQ). T is the level-panel length.
RankDecision select_coint_rank(const Matrix& xi, const Matrix& g, int T, SelectionMethod penalty);

}  // namespace curvetrends
