#pragma once

#include "curvetrends/fpca.hpp"
#include "curvetrends/panel.hpp"

namespace curvetrends::detail {

// Eigenanalysis + loading step shared by the levels and differences fits.
// `norm` is the identification scale ((1/norm) factors^T factors = I_q).
FactorFit fit_from_gram(const CurvePanel& panel, const GramMatrix& g, int q, double norm,
                        FitMode mode);

}  // namespace curvetrends::detail
