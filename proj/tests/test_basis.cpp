#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "curvetrends/basis.hpp"
#include "curvetrends/rng.hpp"
#include "support/oracles.hpp"

using namespace curvetrends;

namespace {

Vector fine_grid(double lo, double hi, int points = 10001) {
  Vector g(points);
  for (int m = 0; m < points; ++m) g[m] = lo + (hi - lo) * m / (points - 1);
  return g;
}

// Numerical Gram of the basis functions by trapezoid quadrature.
Matrix quadrature_gram(const BasisSpec& basis, int points = 10001) {
  const Vector grid = fine_grid(basis.lo, basis.hi, points);
  const Matrix d = basis.design(grid);
  Matrix g(basis.dimension, basis.dimension);
  for (int a = 0; a < basis.dimension; ++a)
    for (int b = 0; b < basis.dimension; ++b)
      g(a, b) = oracles::trapezoid(d.col(a).cwiseProduct(d.col(b)), basis.lo, basis.hi);
  return g;
}

}  // namespace

TEST_CASE("fourier basis is orthonormal on its domain") {
  SUBCASE("J = 3 on [0,1]") {
    const BasisSpec b = fourier_basis(3);
    CHECK((quadrature_gram(b) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(b.evaluate(0, 0.37) == doctest::Approx(1.0));
    CHECK(b.evaluate(1, 0.25) == doctest::Approx(std::sqrt(2.0) * std::cos(M_PI / 2)).epsilon(1e-12));
    CHECK(b.evaluate(2, 0.25) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("J = 1 is the unit constant") {
    const BasisSpec b = fourier_basis(1);
    CHECK(b.evaluate(0, 0.9) == doctest::Approx(1.0));
    CHECK(quadrature_gram(b)(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("J = 51 Gram on a 10001-point grid is the identity") {
    const BasisSpec b = fourier_basis(51);
    CHECK((quadrature_gram(b) - Matrix::Identity(51, 51)).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("non-unit domain keeps orthonormality") {
    const BasisSpec b = fourier_basis(7, -2.0, 3.0);
    CHECK((quadrature_gram(b) - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("invalid arguments are rejected") {
    CHECK_THROWS_AS(fourier_basis(0), Error);
    CHECK_THROWS_AS(fourier_basis(3, 1.0, 1.0), Error);
  }
}

TEST_CASE("inner product is the coefficient dot product") {
  const BasisSpec b = fourier_basis(2);
  const Curve f{b, Vector{{1.0, 2.0}}};
  const Curve g{b, Vector{{3.0, 4.0}}};
  CHECK(inner_product(f, g) == doctest::Approx(11.0));
  const Curve h{b, Vector{{3.0, 4.0}}};
  CHECK(inner_product(h, h) == doctest::Approx(25.0));

  const Curve other{fourier_basis(3), Vector::Zero(3)};
  try {
    inner_product(f, other);
    FAIL("expected incompatible_basis");
  } catch (const Error& e) {
    CHECK(e.code() == errc::incompatible_basis);
  }
}

TEST_CASE("inner product matches quadrature of the reconstructions") {
  CounterRng rng(41);
  const BasisSpec b = fourier_basis(5);
  const Vector grid = fine_grid(0.0, 1.0, 20001);
  const Matrix design = b.design(grid);
  for (int trial = 0; trial < 5; ++trial) {
    const Curve f{b, rng.normal_vector(5)};
    const Curve g{b, rng.normal_vector(5)};
    const Vector fv = design * f.coef;
    const Vector gv = design * g.coef;
    const double quad = oracles::trapezoid(fv.cwiseProduct(gv), 0.0, 1.0);
    CHECK(inner_product(f, g) == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("parseval identity against quadrature") {
  CounterRng rng(43);
  const BasisSpec b = fourier_basis(9);
  const Vector grid = fine_grid(0.0, 1.0, 10001);
  const Matrix design = b.design(grid);
  for (int trial = 0; trial < 5; ++trial) {
    const Curve f{b, rng.normal_vector(9)};
    const double quad = oracles::trapezoid((design * f.coef).cwiseAbs2(), 0.0, 1.0);
    CHECK(std::abs(quad - f.squared_norm()) <= 1e-5 * (1.0 + f.squared_norm()));
  }
}

TEST_CASE("apply_operator identity, zero, and rank-one kernels") {
  CounterRng rng(47);
  const BasisSpec b = fourier_basis(4);
  const Curve f{b, rng.normal_vector(4)};

  const KernelOperator id{Matrix::Identity(4, 4), b, b};
  CHECK((apply_operator(id, f).coef - f.coef).norm() == 0.0);

  const KernelOperator zero{Matrix::Zero(4, 4), b, b};
  CHECK(apply_operator(zero, f).coef.norm() == 0.0);

  const Vector a = rng.normal_vector(4);
  const Vector c = rng.normal_vector(4);
  const KernelOperator rank1{a * c.transpose(), b, b};
  const Curve out = apply_operator(rank1, f);
  CHECK((out.coef - a * c.dot(f.coef)).norm() < 1e-12);

  // Quadrature cross-check of int B(u, v) f(v) dv on a coarse u-grid.
  const Vector vgrid = fine_grid(0.0, 1.0, 4001);
  const Matrix vdesign = b.design(vgrid);
  const Vector fv = vdesign * f.coef;
  const Vector au = vdesign * a;  // reconstruction of sum_j a_j phi_j(u) on the grid
  const Vector cv = vdesign * c;
  const double inner = oracles::trapezoid(cv.cwiseProduct(fv), 0.0, 1.0);
  const Vector out_values = vdesign * out.coef;
  for (int m = 0; m < 4001; m += 500)
    CHECK(out_values[m] == doctest::Approx(au[m] * inner).epsilon(1e-6));

  const Curve wrong{fourier_basis(5), Vector::Zero(5)};
  CHECK_THROWS_AS(apply_operator(rank1, wrong), Error);
}

TEST_CASE("apply_operator is linear in exact integer arithmetic") {
  const BasisSpec b = fourier_basis(3);
  Matrix k(3, 3);
  k << 1, 2, -3, 0, 4, 5, -2, 1, 7;
  const KernelOperator op{k, b, b};
  const Curve f{b, Vector{{1.0, -2.0, 3.0}}};
  const Curve g{b, Vector{{4.0, 0.0, -1.0}}};
  const double alpha = 2.0, beta = -3.0;
  const Curve combined{b, alpha * f.coef + beta * g.coef};
  const Vector lhs = apply_operator(op, combined).coef;
  const Vector rhs = alpha * apply_operator(op, f).coef + beta * apply_operator(op, g).coef;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("smooth_to_basis recovers exact representations") {
  const BasisSpec b = fourier_basis(5);
  Vector grid(200), values(200);
  for (int m = 0; m < 200; ++m) {
    grid[m] = static_cast<double>(m) / 199.0;
    values[m] = b.evaluate(1, grid[m]);  // phi_2
  }
  const Curve fit = smooth_to_basis(grid, values, b);
  Vector expected = Vector::Zero(5);
  expected[1] = 1.0;
  CHECK((fit.coef - expected).cwiseAbs().maxCoeff() < 1e-8);

  const Curve c = smooth_to_basis(grid, Vector::Constant(200, 2.5), b);
  expected.setZero();
  expected[0] = 2.5;
  CHECK((c.coef - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("smooth_to_basis residuals are orthogonal to the design") {
  CounterRng rng(53);
  const BasisSpec b = fourier_basis(6);
  Vector grid(80);
  for (int m = 0; m < 80; ++m) grid[m] = static_cast<double>(m) / 79.0;
  const Vector noise = rng.normal_vector(80);
  const Matrix design = b.design(grid);
  const Vector values = design * rng.normal_vector(6) + noise;
  const Curve fit = smooth_to_basis(grid, values, b);
  CHECK((design.transpose() * (values - design * fit.coef)).cwiseAbs().maxCoeff() < 1e-8);
  // Against the normal equations directly.
  const Vector ne = oracles::normal_equations(design, values);
  CHECK((fit.coef - ne).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("smoothing a reconstruction is a projection") {
  CounterRng rng(59);
  const BasisSpec b = fourier_basis(7);
  const Curve f{b, rng.normal_vector(7)};
  Vector grid(64);
  for (int m = 0; m < 64; ++m) grid[m] = (m + 0.5) / 64.0;
  const Vector values = f.evaluate(grid);
  const Curve again = smooth_to_basis(grid, values, b);
  CHECK((again.coef - f.coef).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("smooth_to_basis error paths") {
  const BasisSpec b = fourier_basis(5);
  Vector grid(3), values(3);
  grid << 0.0, 0.5, 1.0;
  values.setZero();
  try {
    smooth_to_basis(grid, values, b);
    FAIL("expected underdetermined_fit");
  } catch (const Error& e) {
    CHECK(e.code() == errc::underdetermined_fit);
  }

  // sin(2 pi u) vanishes at 0, 1/2, 1: the three-point design for J = 3 is
  // rank deficient even though the grid is strictly increasing.
  const BasisSpec b3 = fourier_basis(3);
  try {
    smooth_to_basis(grid, values, b3);
    FAIL("expected rank_deficient_fit");
  } catch (const Error& e) {
    CHECK(e.code() == errc::rank_deficient_fit);
  }

  Vector bad_grid(6);
  bad_grid << 0.0, 0.2, 0.2, 0.4, 0.6, 0.8;
  CHECK_THROWS_AS(smooth_to_basis(bad_grid, Vector::Zero(6), b), Error);
  Vector outside(6);
  outside << 0.0, 0.2, 0.4, 0.6, 0.8, 1.5;
  CHECK_THROWS_AS(smooth_to_basis(outside, Vector::Zero(6), b), Error);
}

TEST_CASE("interpolate_gaps fills interior and boundary gaps") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SUBCASE("midpoint rule") {
    Vector grid(3), values(3);
    grid << 0.0, 1.0, 2.0;
    values << 1.0, nan, 3.0;
    const Vector out = interpolate_gaps(grid, values);
    CHECK(out[1] == doctest::Approx(2.0));
  }
  SUBCASE("no gaps means no change") {
    Vector grid(4), values(4);
    grid << 0.0, 1.0, 2.0, 3.0;
    values << 4.0, 3.0, 2.0, 1.0;
    CHECK((interpolate_gaps(grid, values) - values).norm() == 0.0);
  }
  SUBCASE("leading and trailing gaps take the nearest value") {
    Vector grid(5), values(5);
    grid << 0.0, 1.0, 2.0, 3.0, 4.0;
    values << nan, nan, 7.0, 5.0, nan;
    const Vector out = interpolate_gaps(grid, values);
    CHECK(out[0] == doctest::Approx(7.0));
    CHECK(out[1] == doctest::Approx(7.0));
    CHECK(out[4] == doctest::Approx(5.0));
  }
  SUBCASE("uneven grid weights the interpolation") {
    Vector grid(3), values(3);
    grid << 0.0, 3.0, 4.0;
    values << 0.0, nan, 4.0;
    CHECK(interpolate_gaps(grid, values)[1] == doctest::Approx(3.0));
  }
  SUBCASE("fewer than two observations is an error") {
    Vector grid(3), values(3);
    grid << 0.0, 1.0, 2.0;
    values << nan, 1.0, nan;
    try {
      interpolate_gaps(grid, values);
      FAIL("expected insufficient_data");
    } catch (const Error& e) {
      CHECK(e.code() == errc::insufficient_data);
    }
  }
}

TEST_CASE("basis template instantiates for float") {
  const auto b = fourier_basis<float>(3, 0.0f, 1.0f);
  CHECK(b.evaluate(0, 0.5f) == doctest::Approx(1.0f));
}
