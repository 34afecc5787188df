#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "curvetrends/basis.hpp"
#include "curvetrends/common.hpp"

namespace curvetrends {

// One curve time series: J x T coefficient matrix, column t holding the
// curve observed in period t (zero-filled where unavailable). Columns are
// time so Gram construction walks contiguous memory.
struct Series {
  std::string id;
  BasisSpec basis;
  Matrix coef;              // J x T
  std::vector<char> avail;  // length T, nonzero iff the period is observed
};

// N curve series sharing one time axis. Series may carry different bases
// (and basis dimensions); cross-series operations only ever aggregate
// per-series scalar inner products.
class CurvePanel {
 public:
  explicit CurvePanel(std::vector<Series> series);

  int n_series() const { return static_cast<int>(series_.size()); }
  int n_periods() const { return periods_; }

  const Series& series(int i) const { return series_[static_cast<std::size_t>(i)]; }
  const std::vector<Series>& all_series() const { return series_; }

  bool available(int i, int t) const {
    return series_[static_cast<std::size_t>(i)].avail[static_cast<std::size_t>(t)] != 0;
  }
  bool complete() const;

  Curve curve(int i, int t) const;

 private:
  std::vector<Series> series_;
  int periods_ = 0;
};

enum class GramMode { levels, differences };

struct GramMatrix {
  Matrix values;         // S x S, symmetric
  GramMode mode;
  IntMatrix pair_counts;  // series contributing to each (t, s) entry
};

// First differences: entry (i, t) = Z_{i,t+1} - Z_{i,t}, available only when
// both operands are.
CurvePanel difference(const CurvePanel& panel);

// Cross-period inner-product matrix: entry (t, s) averages <Z_it, Z_is> over
// exactly the series observed at both t and s (the divisor is recorded in
// pair_counts). mode == differences first differences the panel.
GramMatrix gram(const CurvePanel& panel, GramMode mode);

}  // namespace curvetrends
