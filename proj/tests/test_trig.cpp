#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ellat/model.hpp"
#include "ellat/partitions.hpp"
#include "ellat/spectral.hpp"
#include "ellat/trig.hpp"

using Catch::Approx;
using namespace ellat;

namespace {

CouplingParams base_point() {
  CouplingParams prm;
  prm.n = 2;
  prm.m = 2;
  prm.g = 0.5;
  prm.g1 = 0.6;
  prm.g2 = 0.7;
  prm.g3 = 0.1;
  prm.g4 = 0.1;
  prm.gp1 = prm.gp2 = prm.gp3 = prm.gp4 = 0.05;
  prm.p = 0.0;
  return prm;
}

CouplingParams skew_point() {
  CouplingParams prm;
  prm.n = 3;
  prm.m = 2;
  prm.g = 0.73;
  prm.g1 = 0.55;
  prm.g2 = 0.8;
  prm.g3 = 0.23;
  prm.g4 = -0.17;
  prm.gp1 = 0.12;
  prm.gp2 = -0.21;
  prm.gp3 = 0.33;
  prm.gp4 = 0.08;
  prm.p = 0.0;
  return prm;
}

}  // namespace

TEST_CASE("dual coupling map", "[trig]") {
  CouplingParams prm = base_point();
  auto d = dual_couplings({prm.g1, prm.g2, prm.gp1, prm.gp2});
  CHECK(d[0] == Approx(0.7).epsilon(1e-15));    // (g1+g2+gp1+gp2)/2
  CHECK(d[1] == Approx(0.6).epsilon(1e-15));    // (g1+g2-gp1-gp2)/2
  CHECK(d[2] == Approx(-0.05).epsilon(1e-14));  // (g1-g2+gp1-gp2)/2
  CHECK(d[3] == Approx(-0.05).epsilon(1e-14));  // (g1-g2-gp1+gp2)/2

  SECTION("involution and invariants") {
    std::array<double, 4> c{0.55, 0.8, 0.12, -0.21};
    auto once = dual_couplings(c);
    auto twice = dual_couplings(once);
    for (int i = 0; i < 4; ++i) CHECK(twice[i] == Approx(c[i]).margin(1e-15));
    CHECK(once[0] + once[1] == Approx(c[0] + c[1]).epsilon(1e-15));
    CHECK(dual_params(prm).alpha() == Approx(prm.alpha()).epsilon(1e-15));
  }
}

TEST_CASE("closed eigenvalues and constant row sums", "[trig]") {
  for (CouplingParams prm : {base_point(), skew_point()}) {
    CHECK(rowsum_p0(prm) == Approx(eigenvalue_p0(prm, Partition(prm.n, 0))));
    LatticeOperator op = build_operator(prm, Branch::generic);
    Matrix h = op.dense();
    double c = rowsum_p0(prm);
    for (int i = 0; i < h.rows; ++i) {
      double s = 0.0;
      for (int j = 0; j < h.cols; ++j) s += h(i, j);
      CHECK(s == Approx(c).epsilon(1e-11));
    }
  }
}

TEST_CASE("two-term diagonal coefficient matches the generic one", "[trig]") {
  for (CouplingParams prm : {base_point(), skew_point()}) {
    PartitionLattice lat(prm.n, prm.m);
    for (int r = 0; r < lat.size(); ++r)
      CHECK(coeff_A_p0(prm, lat.at(r)) ==
            Approx(coeff_A(prm, lat.at(r))).epsilon(1e-11).margin(1e-13));
  }
}

TEST_CASE("closed trig weight matches the generic weight", "[trig]") {
  for (CouplingParams prm : {base_point(), skew_point()}) {
    PartitionLattice lat(prm.n, prm.m);
    for (int r = 0; r < lat.size(); ++r) {
      double closed = delta_lambda_q(prm, lat.at(r)).value();
      double generic = weight_delta(prm, lat.at(r)).value();
      CHECK(closed == Approx(generic).epsilon(1e-11));
      CHECK(closed > 0.0);
    }
  }
}

TEST_CASE("dual weight is the weight of the dual parameters", "[trig]") {
  for (CouplingParams prm : {base_point(), skew_point()}) {
    PartitionLattice lat(prm.n, prm.m);
    for (int r = 0; r < lat.size(); ++r)
      CHECK(delta_hat_q(prm, lat.at(r)).value() ==
            Approx(delta_lambda_q(dual_params(prm), lat.at(r)).value())
                .epsilon(1e-12));
  }
}

TEST_CASE("normalization mass equals the summed dual weights", "[trig]") {
  for (CouplingParams prm : {base_point(), skew_point()}) {
    PartitionLattice lat(prm.n, prm.m);
    double total = 0.0;
    for (int r = 0; r < lat.size(); ++r)
      total += delta_hat_q(prm, lat.at(r)).value();
    CHECK(norm_mass_q(prm).value() == Approx(total).epsilon(1e-11));
    // equivalent statement: the reciprocal norms resolve unity
    double unity = 0.0;
    for (int r = 0; r < lat.size(); ++r)
      unity += 1.0 / norm_product_nq(prm, lat.at(r));
    CHECK(unity == Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("leading coefficients are finite and nonzero", "[trig]") {
  CouplingParams prm = skew_point();
  PartitionLattice lat(prm.n, prm.m);
  for (int r = 0; r < lat.size(); ++r) {
    double c = c_lambda_q(prm, lat.at(r)).value();
    CHECK(std::isfinite(c));
    CHECK(c != 0.0);
  }
}
