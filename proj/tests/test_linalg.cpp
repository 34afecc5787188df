#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "curvetrends/linalg.hpp"
#include "curvetrends/rng.hpp"
#include "support/oracles.hpp"

using namespace curvetrends;

namespace {

Matrix random_symmetric(CounterRng& rng, int n) {
  const Matrix a = rng.normal_matrix(n, n);
  return 0.5 * (a + a.transpose());
}

Matrix random_spd(CounterRng& rng, int n) {
  const Matrix a = rng.normal_matrix(n, n + 2);
  return a * a.transpose() / (n + 2) + 0.1 * Matrix::Identity(n, n);
}

}  // namespace

TEST_CASE("sym_eig identity and diagonal cases") {
  const auto id = sym_eig(Matrix::Identity(3, 3));
  CHECK(id.eigenvalues.isApprox(Vector::Ones(3)));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const auto ed = sym_eig(d);
  CHECK(ed.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(ed.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(std::abs(ed.eigenvectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(ed.eigenvectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig 2x2 matches the characteristic polynomial roots") {
  Matrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const auto e = sym_eig(a);
  // Roots of (a11 - x)(a22 - x) - a12^2.
  const double mean = 0.5 * (a(0, 0) + a(1, 1));
  const double disc = std::sqrt(0.25 * (a(0, 0) - a(1, 1)) * (a(0, 0) - a(1, 1)) +
                                a(0, 1) * a(0, 1));
  CHECK(e.eigenvalues[0] == doctest::Approx(mean + disc).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(mean - disc).epsilon(1e-12));
  CHECK(e.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("sym_eig invariants on random symmetric matrices") {
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 9);
    const Matrix a = random_symmetric(rng, n);
    const auto e = sym_eig(a);
    const double scale = a.norm();

    for (int k = 0; k + 1 < n; ++k) CHECK(e.eigenvalues[k] >= e.eigenvalues[k + 1]);
    CHECK((e.eigenvectors.transpose() * e.eigenvectors - Matrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (int k = 0; k < n; ++k) {
      CHECK((a * e.eigenvectors.col(k) - e.eigenvalues[k] * e.eigenvectors.col(k)).norm() <=
            1e-8 * std::max(1.0, scale));
      Eigen::Index imax = 0;
      e.eigenvectors.col(k).cwiseAbs().maxCoeff(&imax);
      CHECK(e.eigenvectors(imax, k) >= 0.0);
    }
    const Matrix recon =
        e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
    CHECK((recon - a).norm() <= 1e-8 * std::max(1.0, scale));
  }
}

TEST_CASE("sym_eig is bitwise deterministic") {
  CounterRng rng(13);
  const Matrix a = random_symmetric(rng, 8);
  const auto e1 = sym_eig(a);
  const auto e2 = sym_eig(a);
  CHECK(std::memcmp(e1.eigenvalues.data(), e2.eigenvalues.data(),
                    sizeof(double) * static_cast<std::size_t>(e1.eigenvalues.size())) == 0);
  CHECK(std::memcmp(e1.eigenvectors.data(), e2.eigenvectors.data(),
                    sizeof(double) * static_cast<std::size_t>(e1.eigenvectors.size())) == 0);
}

TEST_CASE("sym_eig rejects non-symmetric and non-square input") {
  Matrix a(2, 2);
  a << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(sym_eig(a), Error);
  try {
    sym_eig(a);
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
  CHECK_THROWS_AS(sym_eig(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("sym_eig works for float scalars too") {
  Eigen::MatrixXf a(2, 2);
  a << 2.0f, 1.0f, 1.0f, 2.0f;
  const auto e = sym_eig(a);
  CHECK(e.eigenvalues[0] == doctest::Approx(3.0f));
}

TEST_CASE("lstsq exact and oracle cases") {
  CounterRng rng(17);
  SUBCASE("identity design returns the targets") {
    const Matrix y = rng.normal_matrix(4, 2);
    CHECK((lstsq(Matrix::Identity(4, 4), y) - y).norm() < 1e-14);
  }
  SUBCASE("exact linear model is recovered") {
    const Matrix x = rng.normal_matrix(30, 5);
    const Matrix b0 = rng.normal_matrix(5, 3);
    const Matrix b = lstsq(x, Matrix(x * b0));
    CHECK((b - b0).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("random overdetermined system matches normal equations") {
    const Matrix x = rng.normal_matrix(40, 6);
    const Matrix y = rng.normal_matrix(40, 2);
    const Matrix b = lstsq(x, y);
    CHECK((b - oracles::normal_equations(x, y)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((x.transpose() * (y - x * b)).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("rank-deficient design is rejected") {
    Matrix x(5, 2);
    x.col(0) = Vector::Ones(5);
    x.col(1) = 2.0 * Vector::Ones(5);
    try {
      lstsq(x, Matrix(rng.normal_matrix(5, 1)));
      FAIL("expected rank_deficient_fit");
    } catch (const Error& e) {
      CHECK(e.code() == errc::rank_deficient_fit);
    }
  }
  SUBCASE("more columns than rows is rejected") {
    CHECK_THROWS_AS(lstsq(Matrix(rng.normal_matrix(3, 5)), Matrix(rng.normal_matrix(3, 1))),
                    Error);
  }
}

TEST_CASE("logdet_spd basic and oracle cases") {
  CHECK(logdet_spd(Matrix::Identity(5, 5)) == doctest::Approx(0.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(logdet_spd(d) == doctest::Approx(std::log(6.0)).epsilon(1e-12));

  CounterRng rng(19);
  const Matrix a = random_spd(rng, 4);
  const auto e = sym_eig(a);
  CHECK(logdet_spd(a) ==
        doctest::Approx(e.eigenvalues.array().log().sum()).epsilon(1e-8));

  Matrix neg = Matrix::Identity(3, 3);
  neg(2, 2) = -1.0;
  try {
    logdet_spd(neg);
    FAIL("expected not_positive_definite");
  } catch (const Error& e2) {
    CHECK(e2.code() == errc::not_positive_definite);
  }
}

TEST_CASE("gen_sym_eig reduces to sym_eig for identity metric") {
  CounterRng rng(23);
  const Matrix s = random_symmetric(rng, 4);
  const auto g = gen_sym_eig(s, Matrix::Identity(4, 4));
  const auto e = sym_eig(s);
  CHECK((g.eigenvalues - e.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g.eigenvectors - e.eigenvectors).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("gen_sym_eig of (M, M) gives unit eigenvalues") {
  CounterRng rng(29);
  const Matrix m = random_spd(rng, 5);
  const auto g = gen_sym_eig(m, m);
  CHECK((g.eigenvalues - Vector::Ones(5)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("gen_sym_eig residuals and normalization") {
  CounterRng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix s = random_symmetric(rng, 3);
    const Matrix m = random_spd(rng, 3);
    const auto g = gen_sym_eig(s, m);
    for (int k = 0; k < 3; ++k) {
      const Vector v = g.eigenvectors.col(k);
      CHECK((s * v - g.eigenvalues[k] * (m * v)).norm() <= 1e-8 * (s.norm() + m.norm()));
      CHECK(v.dot(m * v) == doctest::Approx(1.0).epsilon(1e-8));
    }
    for (int k = 0; k + 1 < 3; ++k) CHECK(g.eigenvalues[k] >= g.eigenvalues[k + 1]);
  }

  Matrix not_spd = -Matrix::Identity(3, 3);
  try {
    gen_sym_eig(random_symmetric(rng, 3), not_spd);
    FAIL("expected not_positive_definite");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_positive_definite);
  }
}
