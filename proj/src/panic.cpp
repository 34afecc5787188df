#include "curvetrends/panic.hpp"

#include <algorithm>

#include "fit_common.hpp"

namespace curvetrends {

FactorFit fit_panic(const CurvePanel& panel, int q) {
  const int T = panel.n_periods();
  require(T >= 2, errc::too_short, "fit_panic: need T >= 2");
  require(q >= 0 && q <= std::min(panel.n_series(), T - 1), errc::invalid_argument,
          "fit_panic: q out of range");
  const CurvePanel diff = difference(panel);
  GramMatrix g = gram(diff, GramMode::levels);
  g.mode = GramMode::differences;
  FactorFit fit =
      detail::fit_from_gram(diff, g, q, static_cast<double>(T - 1), FitMode::differences);

  // Running sums of the increments recover the trends up to the t = 1 level.
  fit.trends = fit.factors;
  for (Eigen::Index t = 1; t < fit.trends.rows(); ++t)
    fit.trends.row(t) += fit.trends.row(t - 1);
  return fit;
}

}  // namespace curvetrends
