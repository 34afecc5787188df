#pragma once

#include "curvetrends/fpca.hpp"
#include "curvetrends/panel.hpp"

namespace curvetrends {

// Functional PANIC: eigenanalysis of the differenced panel. factors holds the
// stationary increments for t = 2..T scaled so (1/(T-1)) factors^T factors =
// I_q; trends holds their running sums (the common stochastic trends up to
// the unidentified level at t = 1, i.e. estimates of G_t - G_1).
FactorFit fit_panic(const CurvePanel& panel, int q);

}  // namespace curvetrends
