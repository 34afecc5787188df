#include "curvetrends/selection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvetrends/linalg.hpp"

namespace curvetrends {

const char* to_string(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::levels_ic: return "levels-IC";
    case SelectionMethod::diff_ic: return "diff-IC";
    case SelectionMethod::bic: return "BIC";
    case SelectionMethod::hq: return "HQ";
  }
  return "unknown";
}

double default_penalty_levels(int N, int T) {
  const double m = std::min(N, T);
  return 4.0 * std::log(m) * (1.0 / T + 1.0 / N);
}

double default_penalty_diff(int N, int T) {
  const double sn = std::sqrt(static_cast<double>(N));
  const double st = std::sqrt(static_cast<double>(T));
  return 0.6 * std::log(std::min(sn, st)) * (1.0 / st + 1.0 / sn);
}

int default_q_max(int N, int S) { return std::max(1, std::min({20, N - 1, S - 1})); }

namespace {

RankDecision select_by_penalized_eigenvalue(const Vector& eigenvalues, int q_max, double rho,
                                            SelectionMethod method) {
  require(q_max >= 1, errc::invalid_argument, "select_q: q_max must be >= 1");
  require(q_max <= eigenvalues.size(), errc::invalid_argument,
          "select_q: q_max exceeds the number of eigenvalues");
  RankDecision d;
  d.method = method;
  d.penalty_value = rho;
  d.criterion_path.reserve(static_cast<std::size_t>(q_max));
  int best = 1;
  double best_value = eigenvalues[0] + rho;
  for (int j = 1; j <= q_max; ++j) {
    const double value = eigenvalues[j - 1] + j * rho;
    d.criterion_path.emplace_back(j, value);
    if (value < best_value) {  // ties keep the smallest index
      best_value = value;
      best = j;
    }
  }
  d.chosen = best - 1;
  return d;
}

}  // namespace

RankDecision select_q_levels(const Vector& eigenvalues, int N, int T, int q_max,
                             std::optional<double> rho) {
  return select_by_penalized_eigenvalue(eigenvalues, q_max,
                                        rho.value_or(default_penalty_levels(N, T)),
                                        SelectionMethod::levels_ic);
}

RankDecision select_q_diff(const Vector& eigenvalues, int N, int T, int q_max,
                           std::optional<double> rho) {
  return select_by_penalized_eigenvalue(eigenvalues, q_max,
                                        rho.value_or(default_penalty_diff(N, T)),
                                        SelectionMethod::diff_ic);
}

Matrix lagged_trends(const Matrix& trends) {
  Matrix lagged = Matrix::Zero(trends.rows(), trends.cols());
  if (trends.rows() > 1) lagged.bottomRows(trends.rows() - 1) = trends.topRows(trends.rows() - 1);
  return lagged;
}

VecmFit rrr_fit(const Matrix& xi, const Matrix& g, int j) {
  const Eigen::Index rows = xi.rows();
  const Eigen::Index q = xi.cols();
  require(g.rows() == rows && g.cols() == q, errc::invalid_argument, "rrr_fit: shape mismatch");
  require(rows > q, errc::invalid_argument, "rrr_fit: too few rows");
  require(j >= 0 && j <= q, errc::invalid_argument, "rrr_fit: rank out of range");

  const double tp = static_cast<double>(rows);
  const Matrix s00 = xi.transpose() * xi / tp;
  VecmFit fit;
  fit.rank = j;
  if (j == 0) {
    fit.sigma = s00;
    fit.logdet = logdet_spd(fit.sigma);
    return fit;
  }

  const Matrix s11 = g.transpose() * g / tp;
  const Matrix s01 = xi.transpose() * g / tp;

  Eigen::LLT<Matrix> llt00(s00);
  require(llt00.info() == Eigen::Success, errc::degenerate_moments,
          "rrr_fit: singular increment second moment");
  Eigen::LLT<Matrix> llt11(s11);
  require(llt11.info() == Eigen::Success, errc::degenerate_moments,
          "rrr_fit: singular trend second moment");

  // S10 S00^-1 S01, symmetric by construction.
  const Matrix m = s01.transpose() * llt00.solve(s01);
  const EigenDecomposition gev = gen_sym_eig(m, s11);
  fit.beta = gev.eigenvectors.leftCols(j);
  const Matrix b11b = fit.beta.transpose() * s11 * fit.beta;  // = I_j up to roundoff
  fit.alpha = s01 * fit.beta * b11b.inverse();

  const Matrix resid = xi - g * fit.beta * fit.alpha.transpose();
  fit.sigma = resid.transpose() * resid / tp;
  fit.sigma = 0.5 * (fit.sigma + fit.sigma.transpose());
  fit.logdet = logdet_spd(fit.sigma);
  return fit;
}

RankDecision select_coint_rank(const Matrix& xi, const Matrix& g, int T, SelectionMethod penalty) {
  require(penalty == SelectionMethod::bic || penalty == SelectionMethod::hq,
          errc::invalid_argument, "select_coint_rank: penalty must be BIC or HQ");
  const int q = static_cast<int>(xi.cols());
  require(q >= 1, errc::invalid_argument, "select_coint_rank: need q >= 1");
  require(T >= 3, errc::invalid_argument, "select_coint_rank: T too small");

  const double rho =
      penalty == SelectionMethod::bic ? std::log(static_cast<double>(T))
                                      : 2.0 * std::log(std::log(static_cast<double>(T)));
  RankDecision d;
  d.method = penalty;
  d.penalty_value = rho;
  d.criterion_path.reserve(static_cast<std::size_t>(q));
  int best = 0;
  double best_value = 0.0;
  for (int j = 0; j < q; ++j) {
    const VecmFit fit = rrr_fit(xi, g, j);
    const double value = fit.logdet + rho / T * (2.0 * q * j - static_cast<double>(j) * j);
    d.criterion_path.emplace_back(j, value);
    if (j == 0 || value < best_value) {
      best_value = value;
      best = j;
    }
  }
  d.chosen = best;
  return d;
}

}  // namespace curvetrends
