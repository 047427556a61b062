#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ellat/logsigned.hpp"
#include "ellat/model.hpp"
#include "ellat/partitions.hpp"
#include "ellat/theta.hpp"

// Closed forms available in the p = 0 limit: explicit eigenvalues, weight
// and normalization products, and the dual-coupling map. These serve as
// the anchor for eigenvalue labeling at p > 0 and as independent cross
// checks of the generic machinery.

namespace ellat {

namespace trig_detail {

// Trig bracket extended to all four families; the last two collapse to 1
// at p = 0.
inline double qbr4(double alpha, double z, int r) {
  if (r <= 2) return q_bracket(alpha, z, r);
  return 1.0;
}

inline LogSigned qfac4(double alpha, double z, int r, int len) {
  LogSigned v = LogSigned::one();
  for (int k = 0; k < len; ++k) v *= LogSigned::of(qbr4(alpha, z + k, r));
  return v;
}

}  // namespace trig_detail

// Dual couplings (ghat_1, ghat_2, ghatp_1, ghatp_2) as the half-sum map of
// (g1, g2, gp1, gp2). Applying it twice gives the input back, and
// ghat_1 + ghat_2 = g1 + g2, so alpha is unchanged under duality.
inline std::array<double, 4> dual_couplings(const std::array<double, 4>& c) {
  double g1 = c[0], g2 = c[1], gp1 = c[2], gp2 = c[3];
  return {0.5 * (g1 + g2 + gp1 + gp2), 0.5 * (g1 + g2 - gp1 - gp2),
          0.5 * (g1 - g2 + gp1 - gp2), 0.5 * (g1 - g2 - gp1 + gp2)};
}

// Parameter set with (g1, g2, gp1, gp2) replaced by their duals. Only
// meaningful at p = 0, where the remaining couplings do not enter.
inline CouplingParams dual_params(const CouplingParams& prm) {
  auto d = dual_couplings({prm.g1, prm.g2, prm.gp1, prm.gp2});
  CouplingParams out = prm;
  out.g1 = d[0];
  out.g2 = d[1];
  out.gp1 = d[2];
  out.gp2 = d[3];
  return out;
}

// p = 0 eigenvalue attached to the lattice point nu.
inline double eigenvalue_p0(const CouplingParams& prm, const Partition& nu) {
  double al = prm.alpha();
  auto rh = prm.rho_hat();
  double e = 0.0;
  for (int j = 0; j < prm.n; ++j) e += 2.0 * std::cos(al * (rh[j] + nu[j]));
  return e;
}

// At p = 0 the operator has constant row sums; the constant is the ground
// eigenvalue, attached to nu = 0.
inline double rowsum_p0(const CouplingParams& prm) {
  return eigenvalue_p0(prm, Partition(prm.n, 0));
}

// Diagonal coefficient at p = 0 written against trig brackets only. The
// two families that degenerate to 1 drop out of the sum entirely, leaving
// a two-term expression. Kept separate from coeff_A as a cross-check
// route.
inline double coeff_A_p0(const CouplingParams& prm, const Partition& lam) {
  using trig_detail::qbr4;
  if (prm.all_primed_zero()) return 0.0;
  double al = prm.alpha();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = prm.rho();
  double total = 0.0;
  for (int r = 1; r <= 2; ++r) {
    double c = 2.0 / (qbr4(al, prm.g, 1) * qbr4(al, prm.g - 1.0, 1));
    for (int s = 0; s < 4; ++s) {
      int i = kPerm[r - 1][s];
      c *= qbr4(al, gs[i] - 0.5, s + 1) * qbr4(al, gps[i], s + 1);
    }
    double prod = 1.0;
    for (int j = 0; j < prm.n; ++j) {
      double x = rho[j] + lam[j];
      prod *= qbr4(al, x + 0.5 - prm.g, r) * qbr4(al, x - 0.5 + prm.g, r) /
              (qbr4(al, x + 0.5, r) * qbr4(al, x - 0.5, r));
    }
    total += c * (prod - 1.0);
  }
  return total;
}

// Leading coefficient of the lattice eigenpolynomials at p = 0.
inline LogSigned c_lambda_q(const CouplingParams& prm, const Partition& lam) {
  using trig_detail::qfac4;
  double al = prm.alpha();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = prm.rho();
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j) {
    double rj = rho[j];
    int lj = lam[j];
    for (int r = 1; r <= 2; ++r) {
      v *= qfac4(al, rj, r, lj) * qfac4(al, rj + 0.5, r, lj);
      v /= qfac4(al, rj + gs[r - 1], r, lj) *
           qfac4(al, rj + gps[r - 1] + 0.5, r, lj);
    }
  }
  for (int j = 0; j < prm.n; ++j)
    for (int k = j + 1; k < prm.n; ++k)
      for (int d : {+1, -1}) {
        double z = rho[j] + d * rho[k];
        int L = lam[j] + d * lam[k];
        v *= qfac4(al, z, 1, L) / qfac4(al, z + prm.g, 1, L);
      }
  return v;
}

// Weight at p = 0 in closed trig form; agrees with weight_delta evaluated
// at p = 0.
inline LogSigned delta_lambda_q(const CouplingParams& prm, const Partition& lam) {
  using trig_detail::qbr4;
  using trig_detail::qfac4;
  double al = prm.alpha();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = prm.rho();
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j) {
    double rj = rho[j];
    int lj = lam[j];
    v *= LogSigned::of(qbr4(al, 2.0 * (rj + lj), 1));
    v /= LogSigned::of(qbr4(al, 2.0 * rj, 1));
    for (int r = 1; r <= 2; ++r) {
      v *= qfac4(al, rj + gs[r - 1], r, lj) *
           qfac4(al, rj + gps[r - 1] + 0.5, r, lj);
      v /= qfac4(al, rj + 1.0 - gs[r - 1], r, lj) *
           qfac4(al, rj - gps[r - 1] + 0.5, r, lj);
    }
  }
  for (int j = 0; j < prm.n; ++j)
    for (int k = j + 1; k < prm.n; ++k)
      for (int d : {+1, -1}) {
        double z = rho[j] + d * rho[k];
        int L = lam[j] + d * lam[k];
        v *= LogSigned::of(qbr4(al, z + L, 1)) / LogSigned::of(qbr4(al, z, 1));
        v *= qfac4(al, z + prm.g, 1, L) / qfac4(al, z + 1.0 - prm.g, 1, L);
      }
  return v;
}

// Trig weight evaluated with dual shift vector and dual couplings.
inline LogSigned delta_hat_q(const CouplingParams& prm, const Partition& nu) {
  using trig_detail::qbr4;
  using trig_detail::qfac4;
  double al = prm.alpha();
  auto gh = dual_couplings({prm.g1, prm.g2, prm.gp1, prm.gp2});
  auto rh = prm.rho_hat();
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j) {
    double rj = rh[j];
    int nj = nu[j];
    v *= LogSigned::of(qbr4(al, 2.0 * (rj + nj), 1));
    v /= LogSigned::of(qbr4(al, 2.0 * rj, 1));
    for (int r = 1; r <= 2; ++r) {
      v *= qfac4(al, rj + gh[r - 1], r, nj) *
           qfac4(al, rj + gh[r + 1] + 0.5, r, nj);
      v /= qfac4(al, rj + 1.0 - gh[r - 1], r, nj) *
           qfac4(al, rj - gh[r + 1] + 0.5, r, nj);
    }
  }
  for (int j = 0; j < prm.n; ++j)
    for (int k = j + 1; k < prm.n; ++k)
      for (int d : {+1, -1}) {
        double z = rh[j] + d * rh[k];
        int L = nu[j] + d * nu[k];
        v *= LogSigned::of(qbr4(al, z + L, 1)) / LogSigned::of(qbr4(al, z, 1));
        v *= qfac4(al, z + prm.g, 1, L) / qfac4(al, z + 1.0 - prm.g, 1, L);
      }
  return v;
}

// The nu-independent mass in the p = 0 normalization: a one-body product
// mixing primal and dual data. Equal to the dual total mass
// sum_nu delta_hat_q(nu), which tests exploit as an independent identity.
inline LogSigned norm_mass_q(const CouplingParams& prm) {
  using trig_detail::qfac4;
  double al = prm.alpha();
  auto gh = dual_couplings({prm.g1, prm.g2, prm.gp1, prm.gp2});
  auto rho = prm.rho();
  auto rh = prm.rho_hat();
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j) {
    v *= qfac4(al, prm.g2 - rho[j], 2, prm.m) *
         qfac4(al, gh[1] - rh[j], 2, prm.m);
    v /= qfac4(al, rho[j] - prm.gp2 + 0.5, 2, prm.m) *
         qfac4(al, rh[j] - gh[3] + 0.5, 2, prm.m);
  }
  return v;
}

// Normalization N_nu of the p = 0 eigenbasis: the fixed mass divided by
// the dual weight at nu.
inline double norm_product_nq(const CouplingParams& prm, const Partition& nu) {
  return (norm_mass_q(prm) / delta_hat_q(prm, nu)).value();
}

}  // namespace ellat
