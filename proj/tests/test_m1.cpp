#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ellat/spectral.hpp"
#include "ellat/tridiag.hpp"
#include "ellat/trig.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace ellat;

namespace {

CouplingParams m1_point(int n = 3, double p = 0.25) {
  CouplingParams prm;
  prm.n = n;
  prm.m = 1;
  prm.g = 0.37;
  prm.g1 = 0.61;
  prm.g2 = 0.83;
  prm.g3 = 0.21;
  prm.g4 = -0.14;
  prm.gp1 = 0.17;
  prm.gp2 = -0.29;
  prm.gp3 = 0.31;
  prm.gp4 = 0.11;
  prm.p = p;
  return prm;
}

Partition column(int n, int k) {
  Partition lam(n, 0);
  for (int j = 0; j < k; ++j) lam[j] = 1;
  return lam;
}

}  // namespace

TEST_CASE("telescoped chain equals the generic chain", "[m1]") {
  CouplingParams prm = m1_point();
  TridiagonalChain tel = chain_m1(prm);
  TridiagonalChain gen = chain_m1_generic(prm);
  REQUIRE(tel.n == 3);
  for (int k = 0; k <= tel.n; ++k)
    CHECK(tel.diag[k] == Approx(gen.diag[k]).epsilon(1e-11).margin(1e-13));
  for (int k = 0; k < tel.n; ++k) {
    CHECK(tel.bplus[k] == Approx(gen.bplus[k]).epsilon(1e-11));
    CHECK(tel.bminus[k] == Approx(gen.bminus[k]).epsilon(1e-11));
    CHECK(tel.bplus[k] > 0.0);
    CHECK(tel.bminus[k] > 0.0);
  }
}

TEST_CASE("chain spectrum against Sturm bisection", "[m1]") {
  CouplingParams prm = m1_point();
  TridiagonalChain ch = chain_m1(prm);
  auto roots = chain_spectrum(ch);
  for (int l = 1; l <= ch.n; ++l) CHECK(roots[l - 1] > roots[l]);

  std::vector<double> off(ch.n);
  for (int k = 0; k < ch.n; ++k) off[k] = std::sqrt(ch.bplus[k] * ch.bminus[k]);
  auto ref = oracle::sturm_eigenvalues(ch.diag, off);
  for (int l = 0; l <= ch.n; ++l)
    CHECK(roots[l] == Approx(ref[ch.n - l]).margin(1e-11));
}

TEST_CASE("chain weights and leading coefficients", "[m1]") {
  CouplingParams prm = m1_point();
  TridiagonalChain ch = chain_m1(prm);
  auto w_rec = chain_weights(ch);
  auto w_prod = chain_weights_product(prm);
  auto c_rec = chain_leading(ch);
  auto c_prod = chain_leading_product(prm);
  for (int k = 0; k <= ch.n; ++k) {
    CHECK(w_rec[k] == Approx(w_prod[k]).epsilon(1e-10));
    CHECK(c_rec[k] == Approx(c_prod[k]).epsilon(1e-10));
    CHECK(w_rec[k] > 0.0);
    CHECK(c_rec[k] > 0.0);
    CHECK(w_rec[k] ==
          Approx(weight_delta(prm, column(prm.n, k)).value()).epsilon(1e-10));
  }
  CHECK(w_rec[0] == 1.0);
  CHECK(c_rec[0] == 1.0);
}

TEST_CASE("norm routes agree", "[m1]") {
  CouplingParams prm = m1_point();
  TridiagonalChain ch = chain_m1(prm);
  auto roots = chain_spectrum(ch);
  for (int l = 0; l <= ch.n; ++l) {
    double s = chain_norm_sum(ch, roots, l);
    double c = chain_norm_closed(ch, roots, l);
    CHECK(s == Approx(c).epsilon(1e-9));
    CHECK(s > 0.0);
  }
}

TEST_CASE("chain eigenfunctions match the lattice solver", "[m1]") {
  CouplingParams prm = m1_point();
  TridiagonalChain ch = chain_m1(prm);
  auto roots = chain_spectrum(ch);
  Matrix h = chain_eigenfunctions(ch, roots);
  SpectralResult res = solve_spectrum(prm, Branch::generic);

  for (int l = 0; l <= ch.n; ++l) {
    REQUIRE(res.states[l] == column(prm.n, l));
    CHECK(res.eigenvalues[l] == Approx(roots[l]).epsilon(1e-9).margin(1e-11));
    auto hv = eigen_h(res, l);
    for (int k = 0; k <= ch.n; ++k)
      CHECK(h(k, l) == Approx(hv[k]).epsilon(1e-8).margin(1e-10));
  }

  SECTION("columns are orthogonal in the chain weight") {
    auto w = chain_weights(ch);
    for (int a = 0; a <= ch.n; ++a)
      for (int b = 0; b <= ch.n; ++b) {
        double s = 0.0;
        for (int k = 0; k <= ch.n; ++k) s += h(k, a) * h(k, b) * w[k];
        double want = (a == b) ? 1.0 / chain_norm_closed(ch, roots, a) : 0.0;
        CHECK(s == Approx(want).margin(1e-10));
      }
  }
}

TEST_CASE("chain labels follow the closed trig eigenvalues", "[m1]") {
  CouplingParams prm = m1_point(2, 0.0);
  TridiagonalChain ch = chain_m1(prm);
  auto roots = chain_spectrum(ch);
  for (int k = 0; k <= ch.n; ++k)
    CHECK(roots[k] ==
          Approx(eigenvalue_p0(prm, column(prm.n, k))).epsilon(1e-10).margin(1e-11));
}

TEST_CASE("chain rejects other box heights", "[m1]") {
  CouplingParams prm = m1_point();
  prm.m = 2;
  CHECK_THROWS_AS(chain_m1(prm), std::domain_error);
}
