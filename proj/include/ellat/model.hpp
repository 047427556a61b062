#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ellat/errors.hpp"
#include "ellat/logsigned.hpp"
#include "ellat/partitions.hpp"
#include "ellat/theta.hpp"

namespace ellat {

// Which coefficient realization to use. The generic branch evaluates the
// coefficient formulas directly; the g1 branch (g = 1) routes through the
// factorized chain forms, where the direct diagonal formula degenerates.
enum class Branch { generic, g1 };

inline std::string to_string(Branch b) {
  return b == Branch::generic ? "generic" : "g1";
}

// Full parameter set of the truncated difference operator: lattice shape
// (n, m), the common coupling g, four couplings g1..g4, four primed
// couplings gp1..gp4, deformation p, and the working tolerance handed to
// the series evaluations.
struct CouplingParams {
  int n = 1, m = 1;
  double g = 0.5;
  double g1 = 0.5, g2 = 0.5, g3 = 0.0, g4 = 0.0;
  double gp1 = 0.0, gp2 = 0.0, gp3 = 0.0, gp4 = 0.0;
  double p = 0.0;
  double tol = 1e-16;

  std::array<double, 4> gr() const { return {g1, g2, g3, g4}; }
  std::array<double, 4> gpr() const { return {gp1, gp2, gp3, gp4}; }

  // The argument scale is pinned by the truncation: alpha * (m + rho_1 +
  // g_2) = pi, which is what makes the boundary coefficients vanish.
  double alpha() const {
    return std::numbers::pi / (m + (n - 1) * g + g1 + g2);
  }

  ThetaContext theta() const { return ThetaContext(alpha(), p, tol); }

  // rho_j = (n - j) g + g1 for j = 1..n, stored 0-based.
  std::vector<double> rho() const {
    std::vector<double> r(n);
    for (int j = 0; j < n; ++j) r[j] = (n - 1 - j) * g + g1;
    return r;
  }

  // Dual shift vector: same staircase built on (g1 + g2 + gp1 + gp2)/2.
  // Controls the p = 0 eigenvalues.
  std::vector<double> rho_hat() const {
    double gh1 = 0.5 * (g1 + g2 + gp1 + gp2);
    std::vector<double> r(n);
    for (int j = 0; j < n; ++j) r[j] = (n - 1 - j) * g + gh1;
    return r;
  }

  bool all_primed_zero() const {
    return gp1 == 0.0 && gp2 == 0.0 && gp3 == 0.0 && gp4 == 0.0;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const {
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += v;
    }
    return s;
  }
};

// Checks the parameter domain: positivity of g, g1, g2, the primed-coupling
// windows |gp_{1,2}| < g_{1,2} + 1/2, |p| < 1, and the pole guard below.
// The generic branch additionally rejects g near 1 when any primed
// coupling is nonzero (the prefactors c_r have a pole there); the g1
// branch requires g = 1 exactly.
//
// Pole guard. The coefficient denominators are brackets of families 1 and
// 2 only, and for real couplings those vanish solely at z = 0 mod 2P and
// z = P mod 2P with P = m + (n-1)g + g1 + g2. Walking every denominator
// argument of A, B and Delta under the positivity and window constraints
// confines them all to a single period, and the only reachable zeros are
//   [x - 1/2]_1 at x = rho_j, giving  k g + g1 = 1/2,
//   [x + 1/2]_2 at x = rho_j + m (the top of the box), giving
//                                  k g + g2 = 1/2,
// for k = 0..n-1. Those two families are rejected to tolerance 1e-9;
// everything else in the box stays strictly inside one period.
inline ValidationReport validate(const CouplingParams& prm,
                                 Branch branch = Branch::generic) {
  ValidationReport rep;
  auto bad = [&](const std::string& s) { rep.violations.push_back(s); };

  for (double v : {prm.g, prm.g1, prm.g2, prm.g3, prm.g4, prm.gp1, prm.gp2,
                   prm.gp3, prm.gp4, prm.p, prm.tol})
    if (!std::isfinite(v)) {
      bad("non-finite parameter");
      return rep;
    }

  if (prm.n < 1) bad("n must be >= 1");
  if (prm.m < 1) bad("m must be >= 1");
  if (!(prm.g > 0.0)) bad("g must be positive");
  if (!(prm.g1 > 0.0)) bad("g1 must be positive");
  if (!(prm.g2 > 0.0)) bad("g2 must be positive");
  if (!(std::fabs(prm.gp1) < prm.g1 + 0.5)) bad("need |gp1| < g1 + 1/2");
  if (!(std::fabs(prm.gp2) < prm.g2 + 0.5)) bad("need |gp2| < g2 + 1/2");
  if (!(std::fabs(prm.p) < 1.0)) bad("need |p| < 1");
  if (!(prm.tol > 0.0)) bad("tol must be positive");
  if (!rep.ok()) return rep;

  if (branch == Branch::generic) {
    if (std::fabs(prm.g - 1.0) < 1e-9 && !prm.all_primed_zero())
      bad("g too close to 1 for the generic branch; use the g1 branch");
  } else {
    if (std::fabs(prm.g - 1.0) > 1e-12) bad("g1 branch requires g = 1");
  }

  for (int k = 0; k < prm.n; ++k) {
    if (std::fabs(k * prm.g + prm.g1 - 0.5) < 1e-9)
      bad("coefficient pole: " + std::to_string(k) + "*g + g1 = 1/2");
    if (std::fabs(k * prm.g + prm.g2 - 0.5) < 1e-9)
      bad("coefficient pole: " + std::to_string(k) + "*g + g2 = 1/2");
  }
  return rep;
}

// Index permutations pairing coupling slots with bracket families in the
// coefficient prefactors. Row r is the pairing used by c_r.
inline constexpr int kPerm[4][4] = {
    {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

// Prefactors c_r of the diagonal coefficient. Each is
// 2 / ([g]_1 [g-1]_1) * prod_s [g_{perm_r(s)} - 1/2]_s [gp_{perm_r(s)}]_s.
inline std::array<double, 4> coupling_constants(const CouplingParams& prm) {
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  double den = bracket(tc, prm.g, 1) * bracket(tc, prm.g - 1.0, 1);
  if (std::fabs(den) < 1e-12)
    throw pole_error("coupling_constants: [g]_1 [g-1]_1 vanishes (g near 0, 1 or 2)");
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r) {
    LogSigned v = LogSigned::of(2.0 / den);
    for (int s = 0; s < 4; ++s) {
      int i = kPerm[r][s];
      v *= LogSigned::of(bracket(tc, gs[i] - 0.5, s + 1));
      v *= LogSigned::of(bracket(tc, gps[i], s + 1));
    }
    out[r] = v.value();
  }
  return out;
}

// Diagonal coefficient A_lambda. When every primed coupling vanishes the
// factor [gp]_1 in each c_r is exactly zero and A is identically zero for
// all g, including g = 1 where the c_r prefactor alone would be singular;
// that case short-circuits before touching the prefactors.
inline double coeff_A(const CouplingParams& prm, const Partition& lam) {
  if (prm.all_primed_zero()) return 0.0;
  ThetaContext tc = prm.theta();
  auto cs = coupling_constants(prm);
  auto rho = prm.rho();
  double total = 0.0;
  for (int r = 1; r <= 4; ++r) {
    LogSigned prod = LogSigned::one();
    for (int j = 0; j < prm.n; ++j) {
      double x = rho[j] + lam[j];
      prod *= LogSigned::of(bracket(tc, x + 0.5 - prm.g, r));
      prod *= LogSigned::of(bracket(tc, x - 0.5 + prm.g, r));
      prod /= LogSigned::of(bracket(tc, x + 0.5, r));
      prod /= LogSigned::of(bracket(tc, x - 0.5, r));
    }
    total += cs[r - 1] * (prod.value() - 1.0);
  }
  return total;
}

// The hop product evaluated literally, without the admissibility shortcut.
// On inadmissible moves the analytic value is zero through a vanishing
// bracket factor, so this returns roundoff-sized noise there; kept as a
// diagnostic route to demonstrate exactly that.
inline double coeff_B_raw(const CouplingParams& prm, const Partition& lam,
                          const Move& mv) {
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = prm.rho();
  int j = mv.site;
  double eps = mv.eps;
  double x = rho[j] + lam[j];
  LogSigned v = LogSigned::one();
  for (int r = 1; r <= 4; ++r) {
    v *= LogSigned::of(bracket(tc, x + eps * gs[r - 1], r));
    v *= LogSigned::of(bracket(tc, x + eps * (gps[r - 1] + 0.5), r));
    v /= LogSigned::of(bracket(tc, x, r));
    v /= LogSigned::of(bracket(tc, x + eps * 0.5, r));
  }
  for (int k = 0; k < prm.n; ++k) {
    if (k == j) continue;
    for (int d : {+1, -1}) {
      double t = rho[j] + d * rho[k] + lam[j] + d * lam[k];
      v *= LogSigned::of(bracket(tc, t + eps * prm.g, 1));
      v /= LogSigned::of(bracket(tc, t, 1));
    }
  }
  return v.value();
}

// Hop coefficient B_{lambda, eps e_j}. Inadmissible moves are exact zeros
// of the formula (a bracket factor sits on a lattice zero); the
// admissibility predicate returns that zero without evaluating the noisy
// product.
inline double coeff_B(const CouplingParams& prm, const Partition& lam,
                      const Move& mv) {
  if (!PartitionLattice::is_admissible(lam, prm.m, mv)) return 0.0;
  return coeff_B_raw(prm, lam, mv);
}

namespace model_detail {

// [z]_{r,l} = prod_{i=0..l-1} [z+i]_r
inline LogSigned fac(const ThetaContext& tc, double z, int r, int l) {
  LogSigned v = LogSigned::one();
  for (int i = 0; i < l; ++i) v *= LogSigned::of(bracket(tc, z + i, r));
  return v;
}

inline LogSigned delta_two_body(const CouplingParams& prm,
                                const ThetaContext& tc,
                                const std::vector<double>& rho,
                                const Partition& lam) {
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j)
    for (int k = j + 1; k < prm.n; ++k)
      for (int d : {+1, -1}) {
        double z = rho[j] + d * rho[k];
        int L = lam[j] + d * lam[k];
        v *= fac(tc, z + prm.g, 1, L) * fac(tc, z + 1.0, 1, L);
        v /= fac(tc, z, 1, L) * fac(tc, z + 1.0 - prm.g, 1, L);
      }
  return v;
}

}  // namespace model_detail

// Weight Delta_lambda in the raw shifted-factorial form. Normalized so the
// empty partition has weight 1.
inline LogSigned weight_delta(const CouplingParams& prm, const Partition& lam) {
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = prm.rho();
  using model_detail::fac;
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j) {
    double rj = rho[j];
    int lj = lam[j];
    for (int r = 1; r <= 4; ++r) {
      v *= fac(tc, rj + 1.0, r, lj) * fac(tc, rj + gs[r - 1], r, lj) *
           fac(tc, rj + gps[r - 1] + 0.5, r, lj);
      v /= fac(tc, rj, r, lj) * fac(tc, rj + 1.0 - gs[r - 1], r, lj) *
           fac(tc, rj - gps[r - 1] + 0.5, r, lj);
    }
  }
  v *= model_detail::delta_two_body(prm, tc, rho, lam);
  return v;
}

// Same weight with the one-body [z+1]/[z] ladder collapsed through the
// duplication identity into a single ratio of first-family brackets at
// doubled argument. Kept as an independent route for cross-checks.
inline LogSigned weight_delta_dup(const CouplingParams& prm,
                                  const Partition& lam) {
  ThetaContext tc = prm.theta();
  auto gs = prm.gr();
  auto gps = prm.gpr();
  auto rho = prm.rho();
  using model_detail::fac;
  LogSigned v = LogSigned::one();
  for (int j = 0; j < prm.n; ++j) {
    double rj = rho[j];
    int lj = lam[j];
    v *= LogSigned::of(bracket(tc, 2.0 * (rj + lj), 1));
    v /= LogSigned::of(bracket(tc, 2.0 * rj, 1));
    for (int r = 1; r <= 4; ++r) {
      v *= fac(tc, rj + gs[r - 1], r, lj) / fac(tc, rj + 1.0 - gs[r - 1], r, lj);
      v *= fac(tc, rj + gps[r - 1] + 0.5, r, lj) /
           fac(tc, rj - gps[r - 1] + 0.5, r, lj);
    }
  }
  v *= model_detail::delta_two_body(prm, tc, rho, lam);
  return v;
}

}  // namespace ellat
