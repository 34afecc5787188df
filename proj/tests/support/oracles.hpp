#pragma once

// Test-only reference implementations, deliberately independent of the
// library code paths they cross-check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracles {

// Trapezoid rule on an equispaced grid over [lo, hi].
inline double trapezoid(const Eigen::VectorXd& values, double lo, double hi) {
  const Eigen::Index n = values.size();
  const double h = (hi - lo) / static_cast<double>(n - 1);
  double acc = 0.5 * (values[0] + values[n - 1]);
  for (Eigen::Index i = 1; i + 1 < n; ++i) acc += values[i];
  return acc * h;
}

// Plain Nelder-Mead with restarts left to the caller. Returns the best value
// found; x holds the minimizer.
inline double nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          Eigen::VectorXd& x, int max_iter = 50000, double tol = 1e-13,
                          double step = 0.5) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n) + 1, x);
  std::vector<double> value(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i) + 1][i] += step;
  for (std::size_t i = 0; i < simplex.size(); ++i) value[i] = f(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  for (int it = 0; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t best = order.front(), worst = order.back(),
                      second = order[order.size() - 2];
    if (std::abs(value[worst] - value[best]) <=
        tol * (std::abs(value[best]) + std::abs(value[worst]) + 1e-30))
      break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i : order)
      if (i != worst) centroid += simplex[i];
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double fr = f(reflected);
    if (fr < value[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        value[worst] = fe;
      } else {
        simplex[worst] = reflected;
        value[worst] = fr;
      }
    } else if (fr < value[second]) {
      simplex[worst] = reflected;
      value[worst] = fr;
    } else {
      const Eigen::VectorXd contracted = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = f(contracted);
      if (fc < value[worst]) {
        simplex[worst] = contracted;
        value[worst] = fc;
      } else {
        for (std::size_t i : order) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          value[i] = f(simplex[i]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < value.size(); ++i)
    if (value[i] < value[best]) best = i;
  x = simplex[best];
  return value[best];
}

// Normal-equations least squares (X^T X)^-1 X^T Y.
inline Eigen::MatrixXd normal_equations(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  return (X.transpose() * X).ldlt().solve(X.transpose() * Y);
}

// Brute-force cross-period Gram of a complete coefficient panel
// (series-indexed vector of J x T matrices).
inline Eigen::MatrixXd brute_force_gram(const std::vector<Eigen::MatrixXd>& coefs) {
  const Eigen::Index T = coefs.front().cols();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(T, T);
  for (Eigen::Index t = 0; t < T; ++t)
    for (Eigen::Index s = 0; s < T; ++s) {
      double acc = 0.0;
      for (const Eigen::MatrixXd& c : coefs) acc += c.col(t).dot(c.col(s));
      g(t, s) = acc / static_cast<double>(coefs.size());
    }
  return g;
}

}  // namespace oracles
