#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvetrends/linalg.hpp"
#include "curvetrends/panel.hpp"
#include "curvetrends/rng.hpp"
#include "support/oracles.hpp"

using namespace curvetrends;

namespace {

CurvePanel random_panel(CounterRng& rng, int n, int t, int j) {
  const BasisSpec basis = fourier_basis(j);
  std::vector<Series> series;
  for (int i = 0; i < n; ++i) {
    Series s;
    s.id = "s" + std::to_string(i);
    s.basis = basis;
    s.coef = rng.normal_matrix(j, t);
    s.avail.assign(static_cast<std::size_t>(t), 1);
    series.push_back(std::move(s));
  }
  return CurvePanel(std::move(series));
}

}  // namespace

TEST_CASE("panel construction validates shapes") {
  const BasisSpec basis = fourier_basis(2);
  Series a{"a", basis, Matrix::Zero(2, 3), {1, 1, 1}};
  Series bad{"b", basis, Matrix::Zero(2, 4), {1, 1, 1, 1}};
  CHECK_THROWS_AS(CurvePanel({a, bad}), Error);
  Series bad_rows{"c", basis, Matrix::Zero(3, 3), {1, 1, 1}};
  CHECK_THROWS_AS(CurvePanel({bad_rows}), Error);
  CHECK_THROWS_AS(CurvePanel({}), Error);
}

TEST_CASE("difference of a constant panel is zero") {
  const BasisSpec basis = fourier_basis(3);
  Series s{"a", basis, Matrix::Zero(3, 4), {1, 1, 1, 1}};
  s.coef.colwise() = Vector{{1.0, 2.0, 3.0}};
  const CurvePanel d = difference(CurvePanel({s}));
  CHECK(d.n_periods() == 3);
  CHECK(d.series(0).coef.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("difference matches the stated per-period rule") {
  const BasisSpec basis = fourier_basis(1);
  Series s{"a", basis, Matrix::Zero(1, 3), {1, 1, 1}};
  s.coef << 1.0, 4.0, 9.0;
  const CurvePanel d = difference(CurvePanel({s}));
  CHECK(d.series(0).coef(0, 0) == doctest::Approx(3.0));
  CHECK(d.series(0).coef(0, 1) == doctest::Approx(5.0));
}

TEST_CASE("difference then cumulative sum telescopes back") {
  CounterRng rng(61);
  const CurvePanel p = random_panel(rng, 3, 7, 4);
  const CurvePanel d = difference(p);
  for (int i = 0; i < 3; ++i) {
    Vector acc = p.series(i).coef.col(0);
    for (int t = 0; t < 6; ++t) {
      acc += d.series(i).coef.col(t);
      CHECK((acc - p.series(i).coef.col(t + 1)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("difference availability requires both operands") {
  const BasisSpec basis = fourier_basis(1);
  Series s{"a", basis, Matrix::Ones(1, 4), {1, 0, 1, 1}};
  const CurvePanel d = difference(CurvePanel({s, Series{"b", basis, Matrix::Ones(1, 4), {1, 1, 1, 1}}}));
  CHECK_FALSE(d.available(0, 0));
  CHECK_FALSE(d.available(0, 1));
  CHECK(d.available(0, 2));
  CHECK(d.available(1, 0));
}

TEST_CASE("gram of a single rank-one series is the outer product") {
  const BasisSpec basis = fourier_basis(2);
  Series s{"a", basis, Matrix::Zero(2, 3), {1, 1, 1}};
  s.coef.row(0) << 1.0, 2.0, 3.0;
  const GramMatrix g = gram(CurvePanel({s}), GramMode::levels);
  Matrix expected(3, 3);
  expected << 1, 2, 3, 2, 4, 6, 3, 6, 9;
  CHECK((g.values - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(g.pair_counts.minCoeff() == 1);
}

TEST_CASE("gram averages only over the commonly observed series") {
  const BasisSpec basis = fourier_basis(1);
  Series s1{"a", basis, Matrix::Ones(1, 3), {1, 1, 1}};
  Series s2{"b", basis, Matrix::Ones(1, 3), {1, 1, 0}};
  s2.coef << 3.0, 3.0, 0.0;
  const GramMatrix g = gram(CurvePanel({s1, s2}), GramMode::levels);
  // Entry (t=0, s=2) only sees series a.
  CHECK(g.pair_counts(0, 2) == 1);
  CHECK(g.values(0, 2) == doctest::Approx(1.0));
  // Entry (0, 1) sees both: (1*1 + 3*3) / 2.
  CHECK(g.pair_counts(0, 1) == 2);
  CHECK(g.values(0, 1) == doctest::Approx(5.0));
  CHECK(g.values == g.values.transpose());
}

TEST_CASE("gram matches the brute-force double loop") {
  CounterRng rng(67);
  std::vector<Eigen::MatrixXd> coefs;
  const BasisSpec basis = fourier_basis(5);
  std::vector<Series> series;
  for (int i = 0; i < 4; ++i) {
    Series s{"s" + std::to_string(i), basis, rng.normal_matrix(5, 6),
             std::vector<char>(6, 1)};
    coefs.push_back(s.coef);
    series.push_back(std::move(s));
  }
  const GramMatrix g = gram(CurvePanel(std::move(series)), GramMode::levels);
  CHECK((g.values - oracles::brute_force_gram(coefs)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((g.pair_counts.array() == 4).all());
}

TEST_CASE("gram in differences mode differences first") {
  CounterRng rng(71);
  const CurvePanel p = random_panel(rng, 3, 5, 2);
  const GramMatrix g = gram(p, GramMode::differences);
  const GramMatrix direct = gram(difference(p), GramMode::levels);
  CHECK(g.mode == GramMode::differences);
  CHECK((g.values - direct.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.values.rows() == 4);
}

TEST_CASE("gram reports a pair with no common series") {
  const BasisSpec basis = fourier_basis(1);
  Series s1{"a", basis, Matrix::Ones(1, 2), {1, 0}};
  Series s2{"b", basis, Matrix::Ones(1, 2), {0, 1}};
  try {
    gram(CurvePanel({s1, s2}), GramMode::levels);
    FAIL("expected incomplete_pair");
  } catch (const Error& e) {
    CHECK(e.code() == errc::incomplete_pair);
  }
}

TEST_CASE("gram is invariant to a per-series orthogonal rotation") {
  CounterRng rng(73);
  const int j = 4;
  CurvePanel p = random_panel(rng, 3, 6, j);
  const GramMatrix before = gram(p, GramMode::levels);

  // Random orthogonal J x J from the QR of a Gaussian matrix.
  const Matrix gauss = rng.normal_matrix(j, j);
  const Matrix qmat = Eigen::HouseholderQR<Matrix>(gauss).householderQ();
  std::vector<Series> rotated;
  for (int i = 0; i < p.n_series(); ++i) {
    Series s = p.series(i);
    s.coef = qmat * s.coef;
    rotated.push_back(std::move(s));
  }
  const GramMatrix after = gram(CurvePanel(std::move(rotated)), GramMode::levels);
  CHECK((before.values - after.values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("levels gram of a complete panel is positive semidefinite") {
  CounterRng rng(79);
  const CurvePanel p = random_panel(rng, 5, 8, 3);
  const GramMatrix g = gram(p, GramMode::levels);
  const auto e = sym_eig(g.values);
  CHECK(e.eigenvalues.minCoeff() >= -1e-8 * g.values.trace());
}
