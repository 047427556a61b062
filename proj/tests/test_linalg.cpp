#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ellat/linalg.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace ellat;

namespace {

Matrix random_symmetric(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix s(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) s(i, j) = s(j, i) = u(rng);
  return s;
}

}  // namespace

TEST_CASE("jacobi matches the closed 2x2 eigenpairs", "[linalg]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    double a = u(rng), b = u(rng), d = u(rng);
    Matrix s(2, 2);
    s(0, 0) = a;
    s(0, 1) = s(1, 0) = b;
    s(1, 1) = d;
    auto eig = jacobi_eigen(s);
    auto ref = oracle::eig2(a, b, d);
    CHECK(eig.values[0] == Approx(ref.e_lo).margin(1e-13));
    CHECK(eig.values[1] == Approx(ref.e_hi).margin(1e-13));
    // columns agree up to sign
    double dot = eig.vectors(0, 0) * ref.v_lo[0] + eig.vectors(1, 0) * ref.v_lo[1];
    CHECK(std::fabs(dot) == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("jacobi on dense symmetric matrices", "[linalg]") {
  for (std::uint64_t seed : {11, 12, 13}) {
    Matrix s = random_symmetric(6, seed);
    auto eig = jacobi_eigen(s);
    // eigen equation
    for (int k = 0; k < 6; ++k) {
      std::vector<double> v(6);
      for (int i = 0; i < 6; ++i) v[i] = eig.vectors(i, k);
      auto sv = matvec(s, v);
      for (int i = 0; i < 6; ++i)
        CHECK(sv[i] == Approx(eig.values[k] * v[i]).margin(1e-12));
    }
    // orthonormal columns
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        double dot = 0.0;
        for (int i = 0; i < 6; ++i) dot += eig.vectors(i, a) * eig.vectors(i, b);
        CHECK(dot == Approx(a == b ? 1.0 : 0.0).margin(1e-12));
      }
    // ascending values, positive peak entries
    for (int k = 1; k < 6; ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
    for (int k = 0; k < 6; ++k) {
      int imax = 0;
      for (int i = 1; i < 6; ++i)
        if (std::fabs(eig.vectors(i, k)) > std::fabs(eig.vectors(imax, k)))
          imax = i;
      CHECK(eig.vectors(imax, k) > 0.0);
    }
  }
}

TEST_CASE("jacobi matches Sturm bisection on tridiagonal input", "[linalg]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int d = 8;
  std::vector<double> diag(d), off(d - 1);
  for (auto& x : diag) x = u(rng);
  for (auto& x : off) x = u(rng);
  Matrix s(d, d);
  for (int i = 0; i < d; ++i) s(i, i) = diag[i];
  for (int i = 0; i + 1 < d; ++i) s(i, i + 1) = s(i + 1, i) = off[i];
  auto eig = jacobi_eigen(s);
  auto ref = oracle::sturm_eigenvalues(diag, off);
  for (int k = 0; k < d; ++k) CHECK(eig.values[k] == Approx(ref[k]).margin(1e-11));
}

TEST_CASE("LU determinant", "[linalg]") {
  Matrix m(3, 3);
  double vals[9] = {2, 1, 0, 1, 3, 1, 0, 1, 4};
  for (int i = 0; i < 9; ++i) m.a[i] = vals[i];
  CHECK(lu_det(m) == Approx(18.0).epsilon(1e-14));

  SECTION("singular matrix gives zero") {
    Matrix s(2, 2);
    s(0, 0) = 1.0;
    s(0, 1) = 2.0;
    s(1, 0) = 2.0;
    s(1, 1) = 4.0;
    CHECK(lu_det(s) == Approx(0.0).margin(1e-14));
  }

  SECTION("matches the product of eigenvalues") {
    Matrix s = random_symmetric(5, 21);
    auto eig = jacobi_eigen(s);
    double prod = 1.0;
    for (double v : eig.values) prod *= v;
    CHECK(lu_det(s) == Approx(prod).epsilon(1e-11));
  }
}

TEST_CASE("matrix helpers", "[linalg]") {
  Matrix m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = 4;
  m(1, 1) = 5;
  m(1, 2) = 6;
  Matrix t = m.transposed();
  CHECK(t.rows == 3);
  CHECK(t(2, 1) == 6);
  CHECK(Matrix::identity(3)(1, 1) == 1.0);
  CHECK(m.frobenius() == Approx(std::sqrt(91.0)).epsilon(1e-15));
  auto v = matvec(m, {1.0, 1.0, 1.0});
  CHECK(v[0] == Approx(6.0));
  CHECK(v[1] == Approx(15.0));
}
