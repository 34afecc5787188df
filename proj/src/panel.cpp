#include "curvetrends/panel.hpp"

#include <string>
#include <utility>

namespace curvetrends {

CurvePanel::CurvePanel(std::vector<Series> series) : series_(std::move(series)) {
  require(!series_.empty(), errc::invalid_argument, "CurvePanel: need at least one series");
  periods_ = static_cast<int>(series_.front().coef.cols());
  require(periods_ >= 2, errc::invalid_argument, "CurvePanel: need at least two periods");
  for (const Series& s : series_) {
    require(static_cast<int>(s.coef.cols()) == periods_, errc::invalid_argument,
            "CurvePanel: series '" + s.id + "' has a different number of periods");
    require(s.coef.rows() == s.basis.dimension, errc::invalid_argument,
            "CurvePanel: series '" + s.id + "' coefficient rows do not match its basis");
    require(static_cast<int>(s.avail.size()) == periods_, errc::invalid_argument,
            "CurvePanel: series '" + s.id + "' availability mask has wrong length");
  }
}

bool CurvePanel::complete() const {
  for (const Series& s : series_)
    for (char a : s.avail)
      if (!a) return false;
  return true;
}

Curve CurvePanel::curve(int i, int t) const {
  require(available(i, t), errc::invalid_argument,
          "CurvePanel::curve: entry (" + std::to_string(i) + ", " + std::to_string(t) +
              ") is unavailable");
  const Series& s = series_[static_cast<std::size_t>(i)];
  return Curve{s.basis, s.coef.col(t)};
}

CurvePanel difference(const CurvePanel& panel) {
  require(panel.n_periods() >= 2, errc::too_short, "difference: need T >= 2");
  std::vector<Series> out;
  out.reserve(static_cast<std::size_t>(panel.n_series()));
  const int T = panel.n_periods();
  for (const Series& s : panel.all_series()) {
    Series d;
    d.id = s.id;
    d.basis = s.basis;
    d.coef = Matrix::Zero(s.coef.rows(), T - 1);
    d.avail.assign(static_cast<std::size_t>(T - 1), 0);
    for (int t = 0; t + 1 < T; ++t) {
      if (s.avail[static_cast<std::size_t>(t)] && s.avail[static_cast<std::size_t>(t + 1)]) {
        d.coef.col(t) = s.coef.col(t + 1) - s.coef.col(t);
        d.avail[static_cast<std::size_t>(t)] = 1;
      }
    }
    out.push_back(std::move(d));
  }
  return CurvePanel(std::move(out));
}

GramMatrix gram(const CurvePanel& panel, GramMode mode) {
  if (mode == GramMode::differences) {
    GramMatrix g = gram(difference(panel), GramMode::levels);
    g.mode = GramMode::differences;
    return g;
  }

  const int S = panel.n_periods();
  const int N = panel.n_series();

  // Missing entries are zero-filled, so each per-series rank update adds
  // <Z_it, Z_is> exactly on the pairs where both periods are observed. Only
  // the lower triangle is accumulated; it is mirrored at the end.
  Matrix sums = Matrix::Zero(S, S);
  Matrix mask(N, S);
  for (int i = 0; i < N; ++i) {
    const Series& s = panel.series(i);
    sums.selfadjointView<Eigen::Lower>().rankUpdate(s.coef.transpose(), 1.0);
    for (int t = 0; t < S; ++t) mask(i, t) = s.avail[static_cast<std::size_t>(t)] ? 1.0 : 0.0;
  }
  Matrix counts = Matrix::Zero(S, S);
  counts.selfadjointView<Eigen::Lower>().rankUpdate(mask.transpose(), 1.0);

  GramMatrix g;
  g.mode = GramMode::levels;
  g.values = Matrix(S, S);
  g.pair_counts = IntMatrix(S, S);
  for (int s = 0; s < S; ++s) {
    for (int t = s; t < S; ++t) {  // (t, s) in the lower triangle
      const int c = static_cast<int>(counts(t, s) + 0.5);
      if (c == 0)
        fail(errc::incomplete_pair, "gram: no series observed at both periods " +
                                        std::to_string(t) + " and " + std::to_string(s));
      const double v = sums(t, s) / c;
      g.values(t, s) = v;
      g.values(s, t) = v;
      g.pair_counts(t, s) = c;
      g.pair_counts(s, t) = c;
    }
  }
  return g;
}

}  // namespace curvetrends
