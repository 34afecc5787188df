#include "curvetrends/regress.hpp"

#include <cmath>

#include "curvetrends/linalg.hpp"

namespace curvetrends {

namespace {

// Continued fraction for the incomplete beta (Lentz's method, the standard
// even/odd coefficient scheme).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-14;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  fail(errc::numerical_failure, "regularized_incomplete_beta: continued fraction stalled");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, errc::invalid_argument,
          "regularized_incomplete_beta: parameters must be positive");
  require(x >= 0.0 && x <= 1.0, errc::invalid_argument,
          "regularized_incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  // The continued fraction converges fast for x < (a+1)/(a+b+2); use the
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_tail_probability(double f, int d1, int d2) {
  require(d1 >= 1 && d2 >= 1, errc::invalid_argument, "f_tail_probability: bad degrees");
  if (f <= 0.0) return 1.0;
  return regularized_incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

OlsSummary ols(const Vector& y, const Matrix& X, bool intercept) {
  const Eigen::Index m = y.size();
  require(X.rows() == m, errc::invalid_argument, "ols: row mismatch");
  Matrix design;
  if (intercept) {
    design.resize(m, X.cols() + 1);
    design.col(0).setOnes();
    design.rightCols(X.cols()) = X;
  } else {
    design = X;
  }
  const Eigen::Index k = design.cols();
  require(m > k, errc::invalid_argument, "ols: need more observations than parameters");

  OlsSummary out;
  out.coef = lstsq(design, y);  // throws rank_deficient_fit on singular design
  const Vector resid = y - design * out.coef;
  const double rss = resid.squaredNorm();
  out.n_obs = static_cast<int>(m);
  out.df_residual = static_cast<int>(m - k);
  out.df_model = static_cast<int>(intercept ? k - 1 : k);
  out.sigma2 = rss / out.df_residual;

  const Matrix xtx_inv = (design.transpose() * design).ldlt().solve(Matrix::Identity(k, k));
  out.se = (out.sigma2 * xtx_inv.diagonal().array()).cwiseMax(0.0).sqrt();

  const double tss = intercept ? (y.array() - y.mean()).matrix().squaredNorm() : y.squaredNorm();
  out.r2 = tss > 0.0 ? 1.0 - rss / tss : 1.0;

  if (out.df_model >= 1) {
    const double explained = tss - rss;
    const double f = (explained / out.df_model) / (rss / out.df_residual);
    out.f_stat = std::max(0.0, f);
    out.f_pvalue = f_tail_probability(*out.f_stat, out.df_model, out.df_residual);
  }
  return out;
}

}  // namespace curvetrends
