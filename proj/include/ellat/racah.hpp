#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ellat/errors.hpp"
#include "ellat/linalg.hpp"
#include "ellat/logsigned.hpp"
#include "ellat/model.hpp"
#include "ellat/partitions.hpp"

// g = 1 specialization. The prefactors c_r of the diagonal coefficient
// have a simple pole at g = 1 while the product over sites develops a
// matching zero, so the diagonal survives as a residue-times-derivative
// expression. Everything then factorizes through a single one-body chain
// on N = n + m nodes whose eigenpolynomials play the role of one-variable
// building blocks; the n-variable eigenfunctions are quotients of
// determinants in those polynomials, a generalized Schur form.

namespace ellat {

struct RacahChain {
  int n = 0, m = 0;              // N = n + m nodes, indexed 0..N-1
  std::array<double, 4> res{};   // residue prefactors replacing c_r
  std::vector<double> a;         // node diagonal, size N
  std::vector<double> bplus;     // raise off node k, bplus[N-1] = 0
  std::vector<double> bminus;    // lower off node k, bminus[0] = 0
  std::vector<double> delta1;    // one-body weights, delta1[0] = 1
  std::vector<double> lead1;     // one-body leading coefficients
};

// Assemble the one-body chain. Requires g = 1 (validated with the g1
// branch); the remaining parameters keep their generic meaning.
inline RacahChain chain_g1(const CouplingParams& prm) {
  auto rep = validate(prm, Branch::g1);
  if (!rep.ok())
    throw std::domain_error("chain_g1: " + rep.joined());
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  int bign = prm.n + prm.m;

  RacahChain ch;
  ch.n = prm.n;
  ch.m = prm.m;

  // Residues: the c_r prefactor with [g-1]_1 stripped, divided by the
  // slope of the first bracket at zero.
  double slope0 = bracket1_slope0(tc);
  for (int r = 0; r < 4; ++r) {
    LogSigned v = LogSigned::of(2.0 / (bracket(tc, 1.0, 1) * slope0));
    for (int s = 0; s < 4; ++s) {
      int i = kPerm[r][s];
      v *= LogSigned::of(bracket(tc, gs[i] - 0.5, s + 1));
      v *= LogSigned::of(bracket(tc, gps[i], s + 1));
    }
    ch.res[r] = v.value();
  }

  // Node diagonal: difference of bracket log-derivatives across the node.
  ch.a.resize(bign);
  for (int k = 0; k < bign; ++k) {
    double s = 0.0;
    for (int r = 1; r <= 4; ++r)
      s += ch.res[r - 1] * (bracket_log_deriv(tc, prm.g1 + k + 0.5, r) -
                            bracket_log_deriv(tc, prm.g1 + k - 0.5, r));
    ch.a[k] = s;
  }

  // Hop coefficients. The boundary values vanish analytically (a bracket
  // factor sits on a zero of the argument grid); they are pinned to exact
  // zero rather than left as roundoff.
  ch.bplus.assign(bign, 0.0);
  ch.bminus.assign(bign, 0.0);
  for (int k = 0; k < bign; ++k) {
    if (k < bign - 1) {
      LogSigned v = LogSigned::one();
      for (int r = 1; r <= 4; ++r) {
        v *= LogSigned::of(bracket(tc, prm.g1 + gs[r - 1] + k, r));
        v *= LogSigned::of(bracket(tc, prm.g1 + gps[r - 1] + 0.5 + k, r));
        v /= LogSigned::of(bracket(tc, prm.g1 + k, r));
        v /= LogSigned::of(bracket(tc, prm.g1 + 0.5 + k, r));
      }
      ch.bplus[k] = v.value();
    }
    if (k > 0) {
      LogSigned v = LogSigned::one();
      for (int r = 1; r <= 4; ++r) {
        v *= LogSigned::of(bracket(tc, prm.g1 - gs[r - 1] + k, r));
        v *= LogSigned::of(bracket(tc, prm.g1 - gps[r - 1] - 0.5 + k, r));
        v /= LogSigned::of(bracket(tc, prm.g1 + k, r));
        v /= LogSigned::of(bracket(tc, prm.g1 - 0.5 + k, r));
      }
      ch.bminus[k] = v.value();
    }
  }

  ch.delta1.assign(bign, 1.0);
  for (int k = 1; k < bign; ++k)
    ch.delta1[k] = ch.delta1[k - 1] * ch.bplus[k - 1] / ch.bminus[k];

  ch.lead1.assign(bign, 1.0);
  for (int k = 1; k < bign; ++k)
    ch.lead1[k] = ch.lead1[k - 1] / ch.bplus[k - 1];

  return ch;
}

// One-body weight through its closed shifted-factorial product;
// independent route against the chain quotient delta1.
inline double delta1_product(const CouplingParams& prm, int k) {
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  using model_detail::fac;
  LogSigned v = LogSigned::of(bracket(tc, 2.0 * prm.g1 + 2.0 * k, 1)) /
                LogSigned::of(bracket(tc, 2.0 * prm.g1, 1));
  for (int r = 1; r <= 4; ++r) {
    v *= fac(tc, prm.g1 + gs[r - 1], r, k) *
         fac(tc, prm.g1 + gps[r - 1] + 0.5, r, k);
    v /= fac(tc, prm.g1 + 1.0 - gs[r - 1], r, k) *
         fac(tc, prm.g1 - gps[r - 1] + 0.5, r, k);
  }
  return v.value();
}

// One-body leading coefficient through its closed product; independent
// route against the chain quotient lead1.
inline double lead1_product(const CouplingParams& prm, int k) {
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  using model_detail::fac;
  LogSigned v = LogSigned::one();
  for (int r = 1; r <= 4; ++r) {
    v *= fac(tc, prm.g1, r, k) * fac(tc, prm.g1 + 0.5, r, k);
    v /= fac(tc, prm.g1 + gs[r - 1], r, k) *
         fac(tc, prm.g1 + gps[r - 1] + 0.5, r, k);
  }
  return v.value();
}

// Monic chain polynomial of degree k at energy e, 0 <= k <= N.
inline double racah_poly(const RacahChain& ch, int k, double e) {
  int bign = ch.n + ch.m;
  if (k < 0 || k > bign) throw std::domain_error("racah_poly: k out of range");
  double pm1 = 0.0, p0 = 1.0;
  for (int i = 0; i < k; ++i) {
    double offd = (i > 0) ? ch.bplus[i - 1] * ch.bminus[i] : 0.0;
    double p1 = (e - ch.a[i]) * p0 - offd * pm1;
    pm1 = p0;
    p0 = p1;
  }
  return p0;
}

// One-body spectrum: roots of the degree-N polynomial, descending.
inline std::vector<double> racah_roots(const RacahChain& ch) {
  int bign = ch.n + ch.m;
  Matrix t(bign, bign);
  for (int k = 0; k < bign; ++k) {
    t(k, k) = ch.a[k];
    if (k < bign - 1) {
      double prod = ch.bplus[k] * ch.bminus[k + 1];
      if (prod < 0.0)
        throw numeric_error("racah_roots: negative hopping product");
      t(k, k + 1) = t(k + 1, k) = std::sqrt(prod);
    }
  }
  auto eig = jacobi_eigen(t);
  return std::vector<double>(eig.values.rbegin(), eig.values.rend());
}

// One-body norm at root l: closed Christoffel-Darboux form.
inline double racah_norm1(const RacahChain& ch, const std::vector<double>& roots,
                          int l) {
  int bign = ch.n + ch.m;
  double v = ch.lead1[bign - 1] * ch.lead1[bign - 1] * ch.delta1[bign - 1] *
             racah_poly(ch, bign - 1, roots[l]);
  for (int j = 0; j < bign; ++j)
    if (j != l) v *= roots[l] - roots[j];
  return v;
}

namespace racah_detail {

// Node index attached to row j (0-based) of a partition: the staircase
// n - j - 1 shifted by the part.
inline int node(int n, int j, int part) { return n - 1 - j + part; }

}  // namespace racah_detail

// Two-body dressing: quotient of first-family brackets over all index
// pairs. Finite and nonzero on the lattice.
inline double v_factor(const CouplingParams& prm, const Partition& lam) {
  ThetaContext tc = prm.theta();
  auto rho = prm.rho();
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j)
    for (int k = j + 1; k < prm.n; ++k)
      for (int d : {+1, -1}) {
        double z = rho[j] + d * rho[k];
        v *= LogSigned::of(bracket(tc, z + lam[j] + d * lam[k], 1));
        v /= LogSigned::of(bracket(tc, z, 1));
      }
  return v.value();
}

// Diagonal coefficient at g = 1: sum of node values along the partition.
inline double coeff_A_g1(const RacahChain& ch, const Partition& lam) {
  double s = 0.0;
  for (int j = 0; j < ch.n; ++j)
    s += ch.a[racah_detail::node(ch.n, j, lam[j])];
  return s;
}

// Hop coefficient at g = 1: dressing ratio times the one-body hop at the
// node the move acts on. Inadmissible moves give exactly zero.
inline double coeff_B_g1(const CouplingParams& prm, const RacahChain& ch,
                         const Partition& lam, const Move& mv) {
  if (!PartitionLattice::is_admissible(lam, prm.m, mv)) return 0.0;
  Partition mu = apply_move(lam, mv);
  int nd = racah_detail::node(ch.n, mv.site, lam[mv.site]);
  double hop = (mv.eps == +1) ? ch.bplus[nd] : ch.bminus[nd];
  return v_factor(prm, mu) / v_factor(prm, lam) * hop;
}

// Weight at g = 1: squared dressing times one-body weight quotients.
inline double weight_delta_g1(const CouplingParams& prm, const RacahChain& ch,
                              const Partition& lam) {
  double v = v_factor(prm, lam);
  double out = v * v;
  for (int j = 0; j < ch.n; ++j)
    out *= ch.delta1[racah_detail::node(ch.n, j, lam[j])] /
           ch.delta1[racah_detail::node(ch.n, j, 0)];
  return out;
}

// Eigenvalue attached to nu: sum of one-body roots along the staircase.
inline double eigenvalue_g1(const RacahChain& ch,
                            const std::vector<double>& roots,
                            const Partition& nu) {
  double e = 0.0;
  for (int j = 0; j < ch.n; ++j)
    e += roots[racah_detail::node(ch.n, j, nu[j])];
  return e;
}

// Leading coefficient of the n-variable eigenfunctions at g = 1.
inline double c_lambda_g1(const CouplingParams& prm, const Partition& lam) {
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = prm.rho();
  using model_detail::fac;
  LogSigned v = LogSigned::of(1.0 / v_factor(prm, lam));
  for (int j = 0; j < prm.n; ++j) {
    int lj = lam[j];
    for (int r = 1; r <= 4; ++r) {
      v *= fac(tc, rho[j], r, lj) * fac(tc, rho[j] + 0.5, r, lj);
      v /= fac(tc, rho[j] + gs[r - 1], r, lj) *
           fac(tc, rho[j] + gps[r - 1] + 0.5, r, lj);
    }
  }
  return v.value();
}

// Determinant numerator of the Schur-type eigenfunction: rows carry the
// chain polynomials at degrees set by lambda, columns the one-body roots
// selected by nu.
inline double schur_det(const RacahChain& ch, const std::vector<double>& roots,
                        const Partition& nu, const Partition& lam) {
  int n = ch.n;
  Matrix mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double e = roots[racah_detail::node(n, j, nu[j])];
      mat(i, j) = racah_poly(ch, racah_detail::node(n, i, lam[i]), e);
    }
  return lu_det(mat);
}

// The lam = 0 denominator equals the Vandermonde determinant in the
// selected roots; closed form used as a cross-check and for norms.
inline double vandermonde_a0(const RacahChain& ch,
                             const std::vector<double>& roots,
                             const Partition& nu) {
  int n = ch.n;
  double v = 1.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      v *= roots[racah_detail::node(n, j, nu[j])] -
           roots[racah_detail::node(n, k, nu[k])];
  return v;
}

// Normalized Schur quotient s^(nu)_lambda.
inline double schur_ratio(const RacahChain& ch, const std::vector<double>& roots,
                          const Partition& nu, const Partition& lam) {
  Partition zero(ch.n, 0);
  double a0 = schur_det(ch, roots, nu, zero);
  if (a0 == 0.0)
    throw conditioning_error("schur_ratio: vanishing ground determinant");
  return schur_det(ch, roots, nu, lam) / a0;
}

// Norm of the nu eigenfunction from the factorized one-body data.
inline double norm_g1(const RacahChain& ch, const std::vector<double>& roots,
                      const Partition& nu) {
  Partition zero(ch.n, 0);
  double a0 = schur_det(ch, roots, nu, zero);
  if (a0 == 0.0) throw conditioning_error("norm_g1: vanishing ground determinant");
  double v = 1.0 / (a0 * a0);
  for (int j = 0; j < ch.n; ++j) {
    int nd = racah_detail::node(ch.n, j, nu[j]);
    int nd0 = racah_detail::node(ch.n, j, 0);
    v *= racah_norm1(ch, roots, nd) /
         (ch.delta1[nd0] * ch.lead1[nd0] * ch.lead1[nd0]);
  }
  return v;
}

}  // namespace ellat
