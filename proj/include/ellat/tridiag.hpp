#pragma once

#include <cmath>
#include <vector>

#include "ellat/errors.hpp"
#include "ellat/linalg.hpp"
#include "ellat/logsigned.hpp"
#include "ellat/model.hpp"

// m = 1 specialization: the lattice collapses to columns (1^k), 0 <= k <= n,
// and the operator becomes tridiagonal. Coefficients telescope into short
// closed products, eigenvalues are roots of the monic three-term
// polynomial of degree n+1, and norms admit a Christoffel-Darboux closed
// form. Everything here is an independent route against the generic
// machinery restricted to m = 1.

namespace ellat {

struct TridiagonalChain {
  int n = 0;
  std::vector<double> diag;    // A_(1^k), k = 0..n
  std::vector<double> bplus;   // raise coefficient out of (1^k), k = 0..n-1
  std::vector<double> bminus;  // lower coefficient out of (1^{k+1}), k = 0..n-1
};

namespace tridiag_detail {

// rho extended to j = 0..n+1 (paper-style 1-based staircase ends).
inline double rho_ext(const CouplingParams& prm, int j) {
  return (prm.n - j) * prm.g + prm.g1;
}

}  // namespace tridiag_detail

// Telescoped closed forms of the tridiagonal coefficients.
inline TridiagonalChain chain_m1(const CouplingParams& prm) {
  if (prm.m != 1) throw std::domain_error("chain_m1: requires m = 1");
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = [&](int j) { return tridiag_detail::rho_ext(prm, j); };
  int n = prm.n;

  TridiagonalChain ch;
  ch.n = n;
  ch.diag.resize(n + 1);
  ch.bplus.resize(n);
  ch.bminus.resize(n);

  // Diagonal: same structure as coeff_A with the column partition folded
  // in; the one-body products run over two plateaus j <= k and j > k.
  std::array<double, 4> cs{};
  bool have_cs = !prm.all_primed_zero();
  if (have_cs) cs = coupling_constants(prm);
  for (int k = 0; k <= n; ++k) {
    double total = 0.0;
    if (have_cs) {
      for (int r = 1; r <= 4; ++r) {
        LogSigned prod = LogSigned::one();
        for (int j = 1; j <= n; ++j) {
          double x = rho(j) + (j <= k ? 1.0 : 0.0);
          prod *= LogSigned::of(bracket(tc, x + 0.5 - prm.g, r));
          prod *= LogSigned::of(bracket(tc, x - 0.5 + prm.g, r));
          prod /= LogSigned::of(bracket(tc, x + 0.5, r));
          prod /= LogSigned::of(bracket(tc, x - 0.5, r));
        }
        total += cs[r - 1] * (prod.value() - 1.0);
      }
    }
    ch.diag[k] = total;
  }

  // Raise coefficient (1^k) -> (1^{k+1}): two-body part telescoped to a
  // fixed quotient of four first-family brackets.
  for (int k = 0; k < n; ++k) {
    LogSigned v = LogSigned::one();
    v *= LogSigned::of(bracket(tc, rho(0) + rho(k + 1) + 1.0, 1));
    v *= LogSigned::of(bracket(tc, 2.0 * rho(k + 1), 1));
    v *= LogSigned::of(bracket(tc, rho(k + 1) - rho(n + 1), 1));
    v *= LogSigned::of(bracket(tc, 1.0, 1));
    v /= LogSigned::of(bracket(tc, rho(k) + rho(k + 1) + 1.0, 1));
    v /= LogSigned::of(bracket(tc, rho(1) - rho(k + 1) + 1.0, 1));
    v /= LogSigned::of(bracket(tc, rho(k + 1) + rho(n), 1));
    v /= LogSigned::of(bracket(tc, prm.g, 1));
    double x = rho(k + 1);
    for (int r = 1; r <= 4; ++r) {
      v *= LogSigned::of(bracket(tc, x + gs[r - 1], r));
      v *= LogSigned::of(bracket(tc, x + gps[r - 1] + 0.5, r));
      v /= LogSigned::of(bracket(tc, x, r));
      v /= LogSigned::of(bracket(tc, x + 0.5, r));
    }
    ch.bplus[k] = v.value();
  }

  // Lower coefficient (1^k) -> (1^{k-1}), stored at index k-1.
  for (int k = 1; k <= n; ++k) {
    LogSigned v = LogSigned::one();
    v *= LogSigned::of(bracket(tc, 2.0 * rho(k) + 2.0, 1));
    v *= LogSigned::of(bracket(tc, rho(0) - rho(k), 1));
    v *= LogSigned::of(bracket(tc, rho(k) + rho(n + 1) + 1.0, 1));
    v *= LogSigned::of(bracket(tc, 1.0, 1));
    v /= LogSigned::of(bracket(tc, rho(1) + rho(k) + 2.0, 1));
    v /= LogSigned::of(bracket(tc, rho(k) + rho(k + 1) + 1.0, 1));
    v /= LogSigned::of(bracket(tc, rho(k) - rho(n) + 1.0, 1));
    v /= LogSigned::of(bracket(tc, prm.g, 1));
    double x = rho(k);
    for (int r = 1; r <= 4; ++r) {
      v *= LogSigned::of(bracket(tc, x + 1.0 - gs[r - 1], r));
      v *= LogSigned::of(bracket(tc, x - gps[r - 1] + 0.5, r));
      v /= LogSigned::of(bracket(tc, x + 1.0, r));
      v /= LogSigned::of(bracket(tc, x + 0.5, r));
    }
    ch.bminus[k - 1] = v.value();
  }
  return ch;
}

// Same chain read off the generic coefficient formulas; cross-check route.
inline TridiagonalChain chain_m1_generic(const CouplingParams& prm) {
  if (prm.m != 1) throw std::domain_error("chain_m1_generic: requires m = 1");
  int n = prm.n;
  TridiagonalChain ch;
  ch.n = n;
  ch.diag.resize(n + 1);
  ch.bplus.resize(n);
  ch.bminus.resize(n);
  for (int k = 0; k <= n; ++k) {
    Partition lam(n, 0);
    for (int j = 0; j < k; ++j) lam[j] = 1;
    ch.diag[k] = coeff_A(prm, lam);
    if (k < n) ch.bplus[k] = coeff_B(prm, lam, {k, +1});
    if (k > 0) ch.bminus[k - 1] = coeff_B(prm, lam, {k - 1, -1});
  }
  return ch;
}

// Monic three-term polynomial P_(1^k)(E) for 0 <= k <= n+1. Plain double
// recurrence; the chains in scope are short enough that no rescaling is
// needed.
inline double chain_poly(const TridiagonalChain& ch, int k, double e) {
  if (k < 0 || k > ch.n + 1)
    throw std::domain_error("chain_poly: k out of range");
  double pm1 = 0.0, p0 = 1.0;
  for (int i = 0; i < k; ++i) {
    double offd = (i > 0) ? ch.bplus[i - 1] * ch.bminus[i - 1] : 0.0;
    double p1 = (e - ch.diag[i]) * p0 - offd * pm1;
    pm1 = p0;
    p0 = p1;
  }
  return p0;
}

// Roots of the degree n+1 polynomial, which are the eigenvalues, returned
// in descending order to match the labels (1^0), (1^1), ..., (1^n).
inline std::vector<double> chain_spectrum(const TridiagonalChain& ch) {
  int nn = ch.n + 1;
  Matrix t(nn, nn);
  for (int k = 0; k < nn; ++k) {
    t(k, k) = ch.diag[k];
    if (k < nn - 1) {
      double prod = ch.bplus[k] * ch.bminus[k];
      if (prod < 0.0)
        throw numeric_error("chain_spectrum: negative hopping product");
      t(k, k + 1) = t(k + 1, k) = std::sqrt(prod);
    }
  }
  auto eig = jacobi_eigen(t);
  std::vector<double> out(eig.values.rbegin(), eig.values.rend());
  return out;
}

// Weight Delta_(1^k) as the running quotient of hop coefficients.
inline std::vector<double> chain_weights(const TridiagonalChain& ch) {
  std::vector<double> w(ch.n + 1, 1.0);
  for (int k = 1; k <= ch.n; ++k)
    w[k] = w[k - 1] * ch.bplus[k - 1] / ch.bminus[k - 1];
  return w;
}

// Leading coefficients c_(1^k) = prod_{j<=k} 1/B_j.
inline std::vector<double> chain_leading(const TridiagonalChain& ch) {
  std::vector<double> c(ch.n + 1, 1.0);
  for (int k = 1; k <= ch.n; ++k) c[k] = c[k - 1] / ch.bplus[k - 1];
  return c;
}

// Weight by its explicit product formula (independent of the chain
// quotients); test oracle route.
inline std::vector<double> chain_weights_product(const CouplingParams& prm) {
  if (prm.m != 1)
    throw std::domain_error("chain_weights_product: requires m = 1");
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = [&](int j) { return tridiag_detail::rho_ext(prm, j); };
  int n = prm.n;
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    LogSigned v = LogSigned::one();
    for (int j = 1; j <= k; ++j) {
      v *= LogSigned::of(bracket(tc, 2.0 * rho(j) + 2.0, 1));
      v /= LogSigned::of(bracket(tc, 2.0 * rho(j), 1));
      for (int r = 1; r <= 4; ++r) {
        v *= LogSigned::of(bracket(tc, rho(j) + gs[r - 1], r));
        v *= LogSigned::of(bracket(tc, rho(j) + gps[r - 1] + 0.5, r));
        v /= LogSigned::of(bracket(tc, rho(j) + 1.0 - gs[r - 1], r));
        v /= LogSigned::of(bracket(tc, rho(j) - gps[r - 1] + 0.5, r));
      }
    }
    for (int j = 1; j < k; ++j)
      for (int l = j + 1; l <= k; ++l) {
        double z = rho(j) + rho(l);
        v *= LogSigned::of(bracket(tc, z + 2.0, 1)) /
             LogSigned::of(bracket(tc, z, 1));
        v *= LogSigned::of(bracket(tc, z + prm.g, 1)) *
             LogSigned::of(bracket(tc, z + 1.0 + prm.g, 1));
        v /= LogSigned::of(bracket(tc, z + 1.0 - prm.g, 1)) *
             LogSigned::of(bracket(tc, z + 2.0 - prm.g, 1));
      }
    for (int j = 1; j <= k; ++j)
      for (int l = k + 1; l <= n; ++l) {
        double zp = rho(j) + rho(l), zm = rho(j) - rho(l);
        v *= LogSigned::of(bracket(tc, zp + 1.0, 1)) /
             LogSigned::of(bracket(tc, zp, 1));
        v *= LogSigned::of(bracket(tc, zp + prm.g, 1)) /
             LogSigned::of(bracket(tc, zp + 1.0 - prm.g, 1));
        v *= LogSigned::of(bracket(tc, zm + 1.0, 1)) /
             LogSigned::of(bracket(tc, zm, 1));
        v *= LogSigned::of(bracket(tc, zm + prm.g, 1)) /
             LogSigned::of(bracket(tc, zm + 1.0 - prm.g, 1));
      }
    out[k] = v.value();
  }
  return out;
}

// Leading coefficient by its explicit product formula; test oracle route.
inline std::vector<double> chain_leading_product(const CouplingParams& prm) {
  if (prm.m != 1)
    throw std::domain_error("chain_leading_product: requires m = 1");
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = [&](int j) { return tridiag_detail::rho_ext(prm, j); };
  int n = prm.n;
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    LogSigned v = LogSigned::one();
    for (int j = 1; j <= k; ++j)
      for (int r = 1; r <= 4; ++r) {
        v *= LogSigned::of(bracket(tc, rho(j), r));
        v *= LogSigned::of(bracket(tc, rho(j) + 0.5, r));
        v /= LogSigned::of(bracket(tc, rho(j) + gs[r - 1], r));
        v /= LogSigned::of(bracket(tc, rho(j) + gps[r - 1] + 0.5, r));
      }
    // Pairs inside the raised block carry sum and difference factors.  In the
    // difference half the shifted denominator takes g with the opposite sign:
    // it comes from reflecting [rho_l - rho_j - 1 + g]_1 through [-z] = -[z].
    for (int j = 1; j < k; ++j)
      for (int l = j + 1; l <= k; ++l) {
        double zp = rho(j) + rho(l), zm = rho(j) - rho(l);
        v *= LogSigned::of(bracket(tc, zp, 1)) *
             LogSigned::of(bracket(tc, zp + 1.0, 1));
        v /= LogSigned::of(bracket(tc, zp + prm.g, 1)) *
             LogSigned::of(bracket(tc, zp + 1.0 + prm.g, 1));
        v *= LogSigned::of(bracket(tc, zm, 1)) *
             LogSigned::of(bracket(tc, zm + 1.0, 1));
        v /= LogSigned::of(bracket(tc, zm + prm.g, 1)) *
             LogSigned::of(bracket(tc, zm + 1.0 - prm.g, 1));
      }
    for (int j = 1; j <= k; ++j)
      for (int l = k + 1; l <= n; ++l) {
        double zp = rho(j) + rho(l), zm = rho(j) - rho(l);
        v *= LogSigned::of(bracket(tc, zp, 1)) *
             LogSigned::of(bracket(tc, zm, 1));
        v /= LogSigned::of(bracket(tc, zp + prm.g, 1)) *
             LogSigned::of(bracket(tc, zm + prm.g, 1));
      }
    out[k] = v.value();
  }
  return out;
}

// Norm of the eigenfunction at root l, direct quadratic sum.
inline double chain_norm_sum(const TridiagonalChain& ch,
                             const std::vector<double>& roots, int l) {
  auto c = chain_leading(ch);
  auto w = chain_weights(ch);
  double s = 0.0;
  for (int k = 0; k <= ch.n; ++k) {
    double pk = chain_poly(ch, k, roots[l]);
    s += c[k] * c[k] * pk * pk * w[k];
  }
  return s;
}

// Same norm through the confluent Christoffel-Darboux identity: the sum
// collapses onto the top polynomial times the spectral gaps.
inline double chain_norm_closed(const TridiagonalChain& ch,
                                const std::vector<double>& roots, int l) {
  double v = chain_poly(ch, ch.n, roots[l]);
  for (int j = 0; j <= ch.n; ++j)
    if (j != l) v *= roots[l] - roots[j];
  for (int k = 0; k < ch.n; ++k) v /= ch.bplus[k] * ch.bminus[k];
  return v;
}

// Eigenfunction table h[k][l] = c_k P_k(E_l) / N_l with the closed norm.
inline Matrix chain_eigenfunctions(const TridiagonalChain& ch,
                                   const std::vector<double>& roots) {
  auto c = chain_leading(ch);
  Matrix h(ch.n + 1, ch.n + 1);
  for (int l = 0; l <= ch.n; ++l) {
    double nl = chain_norm_closed(ch, roots, l);
    for (int k = 0; k <= ch.n; ++k)
      h(k, l) = c[k] * chain_poly(ch, k, roots[l]) / nl;
  }
  return h;
}

}  // namespace ellat
