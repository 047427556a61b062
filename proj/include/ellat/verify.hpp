#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ellat/model.hpp"
#include "ellat/racah.hpp"
#include "ellat/spectral.hpp"
#include "ellat/theta.hpp"
#include "ellat/tridiag.hpp"
#include "ellat/trig.hpp"

// Named invariant checks over a parameter point. Each check reports its
// worst residual against a fixed tolerance; the CLI verify command and the
// acceptance suite both run through this header so that "what is checked"
// has a single definition.

namespace ellat {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tol = 0.0;
  std::string note;
};

namespace verify_detail {

inline double rel(double a, double b) {
  double s = std::max(std::fabs(a), std::fabs(b));
  if (s == 0.0) return 0.0;
  return std::fabs(a - b) / s;
}

// Relative deviation of two positive-or-negative values compared through
// a LogSigned quotient; safe when both sit far outside double range.
inline double rel_log(const LogSigned& a, const LogSigned& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.is_zero() || b.is_zero()) return 1.0;
  if (a.sign != b.sign) return 2.0;
  return std::fabs(1.0 - std::exp(b.logmag - a.logmag));
}

inline CheckResult make(const std::string& name, double residual, double tol,
                        const std::string& note = "") {
  return {name, residual <= tol, residual, tol, note};
}

}  // namespace verify_detail

// Series route against product route for all four bracket families.
inline CheckResult check_theta_product(const CouplingParams& prm,
                                       std::uint64_t seed, int samples = 200) {
  using verify_detail::rel;
  ThetaContext tc = prm.theta();
  double span = 2.0 * (prm.m + (prm.n - 1) * prm.g + prm.g1 + prm.g2);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uz(-span, span);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i)
    for (int r = 1; r <= 4; ++r) {
      double z = 0.0, v = 0.0;
      for (int tries = 0; tries < 100; ++tries) {
        z = uz(rng);
        v = bracket(tc, z, r);
        if (std::fabs(v) > 1e-3) break;
      }
      worst = std::max(worst, rel(v, bracket_product(tc, z, r)));
    }
  return verify_detail::make("theta-series-vs-product", worst, 1e-12);
}

// Argument duplication: [2z]_1 = 2 [z]_1 [z]_2 [z]_3 [z]_4.
inline CheckResult check_theta_duplication(const CouplingParams& prm,
                                           std::uint64_t seed,
                                           int samples = 200) {
  using verify_detail::rel;
  ThetaContext tc = prm.theta();
  double span = prm.m + (prm.n - 1) * prm.g + prm.g1 + prm.g2;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> uz(-span, span);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double z = 0.0, lhs = 0.0;
    for (int tries = 0; tries < 100; ++tries) {
      z = uz(rng);
      lhs = bracket(tc, 2.0 * z, 1);
      if (std::fabs(lhs) > 1e-3) break;
    }
    double rhs = 2.0 * bracket(tc, z, 1) * bracket(tc, z, 2) *
                 bracket(tc, z, 3) * bracket(tc, z, 4);
    worst = std::max(worst, rel(lhs, rhs));
  }
  return verify_detail::make("theta-duplication", worst, 1e-12);
}

// p = 0 reduction of the brackets to plain trig quotients.
inline CheckResult check_theta_trig_reduction(const CouplingParams& prm,
                                              std::uint64_t seed,
                                              int samples = 200) {
  using verify_detail::rel;
  ThetaContext tc(prm.alpha(), 0.0, prm.tol);
  double span = prm.m + (prm.n - 1) * prm.g + prm.g1 + prm.g2;
  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dull);
  std::uniform_real_distribution<double> uz(-span, span);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double z = uz(rng);
    worst = std::max(worst, rel(bracket(tc, z, 1), q_bracket(tc.alpha, z, 1)));
    worst = std::max(worst, rel(bracket(tc, z, 2), q_bracket(tc.alpha, z, 2)));
    worst = std::max(worst, std::fabs(bracket(tc, z, 3) - 1.0));
    worst = std::max(worst, std::fabs(bracket(tc, z, 4) - 1.0));
  }
  return verify_detail::make("theta-trig-reduction", worst, 1e-13);
}

// Positivity of the weight function over the whole lattice.
inline CheckResult check_weight_positivity(const LatticeOperator& op) {
  double worst = 1.0;
  for (const auto& w : op.delta) {
    if (w.sign <= 0) return verify_detail::make("weight-positivity", 1.0, 0.5);
    worst = std::min(worst, 1.0);
  }
  return verify_detail::make("weight-positivity", 0.0, 0.5);
}

// Positivity of every admissible hop coefficient.
inline CheckResult check_hop_positivity(const LatticeOperator& op) {
  double minval = 1e300;
  for (const auto& e : op.edges) minval = std::min(minval, e.value);
  bool ok = op.edges.empty() || minval > 0.0;
  return verify_detail::make("hop-positivity", ok ? 0.0 : 1.0, 0.5,
                             ok ? "" : "nonpositive hop found");
}

// Inadmissible moves: the predicate route returns exact zero while the
// literal product collapses to roundoff noise.
inline CheckResult check_inadmissible_zeros(const LatticeOperator& op) {
  const CouplingParams& prm = op.params;
  double scale = 0.0;
  for (const auto& e : op.edges) scale = std::max(scale, std::fabs(e.value));
  if (scale == 0.0) scale = 1.0;
  double worst = 0.0;
  for (int i = 0; i < op.lattice.size(); ++i) {
    const Partition& lam = op.lattice.at(i);
    for (int j = 0; j < prm.n; ++j)
      for (int eps : {+1, -1}) {
        Move mv{j, eps};
        if (PartitionLattice::is_admissible(lam, prm.m, mv)) continue;
        if (coeff_B(prm, lam, mv) != 0.0)
          return verify_detail::make("inadmissible-zeros", 1.0, 1e-10,
                                     "predicate route returned nonzero");
        double raw = std::fabs(coeff_B_raw(prm, lam, mv));
        worst = std::max(worst, raw / scale);
      }
  }
  return verify_detail::make("inadmissible-zeros", worst, 1e-10);
}

// Detailed balance across every edge: B_{lam,mv} Delta_lam equals the
// reverse hop times the target weight.
inline CheckResult check_detailed_balance(const LatticeOperator& op) {
  using verify_detail::rel_log;
  const CouplingParams& prm = op.params;
  RacahChain ch;
  if (op.branch == Branch::g1) ch = chain_g1(prm);
  double worst = 0.0;
  for (const auto& e : op.edges) {
    const Partition& mu = op.lattice.at(e.to);
    Move back_mv{e.site, -e.eps};
    double back = (op.branch == Branch::g1) ? coeff_B_g1(prm, ch, mu, back_mv)
                                            : coeff_B(prm, mu, back_mv);
    LogSigned lhs = LogSigned::of(e.value) * op.delta[e.from];
    LogSigned rhs = LogSigned::of(back) * op.delta[e.to];
    worst = std::max(worst, rel_log(lhs, rhs));
  }
  return verify_detail::make("detailed-balance", worst, 1e-11);
}

// Conjugated operator is symmetric up to roundoff.
inline CheckResult check_self_adjointness(const LatticeOperator& op) {
  double asym = 0.0;
  Matrix s = op.symmetrized(&asym);
  double smax = 0.0;
  for (double x : s.a) smax = std::max(smax, std::fabs(x));
  if (smax == 0.0) smax = 1.0;
  return verify_detail::make("self-adjointness", asym / smax, 1e-10);
}

// p = 0 eigenvalues against the closed formula, using the labeling.
inline CheckResult check_p0_spectrum(const CouplingParams& prm, Branch branch) {
  CouplingParams at0 = prm;
  at0.p = 0.0;
  SpectralResult res = solve_spectrum(at0, branch);
  int d = static_cast<int>(res.states.size());
  double spread = 1.0;
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s)
      spread = std::max(spread, std::fabs(res.eigenvalues[r] - res.eigenvalues[s]));
  double worst = 0.0;
  for (int r = 0; r < d; ++r)
    worst = std::max(worst, std::fabs(res.eigenvalues[r] -
                                      eigenvalue_p0(prm, res.states[r])) / spread);
  return verify_detail::make("p0-spectrum", worst, 1e-10);
}

// Constant row sums at p = 0 equal the ground eigenvalue.
inline CheckResult check_p0_rowsum(const CouplingParams& prm, Branch branch) {
  CouplingParams at0 = prm;
  at0.p = 0.0;
  LatticeOperator op = build_operator(at0, branch);
  Matrix h = op.dense();
  double c = rowsum_p0(prm);
  double worst = 0.0;
  for (int i = 0; i < h.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < h.cols; ++j) s += h(i, j);
    worst = std::max(worst, std::fabs(s - c) / std::max(1.0, std::fabs(c)));
  }
  return verify_detail::make("p0-rowsum", worst, 1e-10);
}

// Orthonormality of the eigenfunctions in the weighted inner product.
inline CheckResult check_orthonormality(const SpectralResult& res) {
  int d = static_cast<int>(res.states.size());
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += res.f(k, a) * res.f(k, b) * res.delta[k];
      worst = std::max(worst, std::fabs(s - (a == b ? 1.0 : 0.0)));
    }
  return verify_detail::make("orthonormality", worst, 1e-9);
}

// Dual orthogonality: summing over labels resolves the identity against
// the weight.
inline CheckResult check_dual_orthogonality(const SpectralResult& res) {
  int d = static_cast<int>(res.states.size());
  double worst = 0.0;
  for (int lam = 0; lam < d; ++lam)
    for (int mu = lam; mu < d; ++mu) {
      double s = 0.0;
      for (int nu = 0; nu < d; ++nu) s += res.f(lam, nu) * res.f(mu, nu);
      double want = (lam == mu) ? 1.0 / res.delta[lam] : 0.0;
      worst = std::max(worst, std::fabs(s - want) * res.delta[lam]);
    }
  return verify_detail::make("dual-orthogonality", worst, 1e-9);
}

// h normalization: the value of h^(nu) at the empty partition equals its
// weighted square norm.
inline CheckResult check_h_normalization(const SpectralResult& res) {
  int d = static_cast<int>(res.states.size());
  double worst = 0.0;
  for (int nu = 0; nu < d; ++nu) {
    auto h = eigen_h(res, nu);
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += h[k] * h[k] * res.delta[k];
    worst = std::max(worst, verify_detail::rel(s, h[0]));
  }
  return verify_detail::make("h-normalization", worst, 1e-9);
}

// p = 0 norms against the closed product formula. Individual solver
// columns inside a degenerate cluster are an arbitrary rotation of the
// eigenspace, so their norms carry no meaning one by one; the cluster sum
// of inverse closed norms equals the basis-independent projector diagonal
// at the empty partition, and singletons reduce to the plain per-state
// comparison.
inline CheckResult check_p0_norm_product(const CouplingParams& prm,
                                         Branch branch) {
  CouplingParams at0 = prm;
  at0.p = 0.0;
  SpectralResult res = solve_spectrum(at0, branch);
  int d = static_cast<int>(res.states.size());
  double worst = 0.0;
  std::vector<char> done(d, 0);
  for (int nu = 0; nu < d; ++nu) {
    if (done[nu]) continue;
    double direct = 0.0, closed = 0.0;
    for (int r = 0; r < d; ++r) {
      if (std::fabs(res.eigenvalues[r] - res.eigenvalues[nu]) >=
          res.diagnostics.gap_tol)
        continue;
      done[r] = 1;
      direct += norm_h(res, r);
      closed += 1.0 / norm_product_nq(prm, res.states[r]);
    }
    worst = std::max(worst, verify_detail::rel(direct, closed));
  }
  return verify_detail::make("p0-norm-product", worst, 1e-9);
}

// Projector route against the eigensolver route for the eigenfunctions.
// The shifted-operator product only defines an eigenfunction at a simple
// eigenvalue, so members of a degenerate cluster are skipped here; their
// columns stay covered by the orthogonality and normalization checks.
inline CheckResult check_projector(const LatticeOperator& op,
                                   const SpectralResult& res) {
  int d = static_cast<int>(res.states.size());
  std::vector<int> picks;
  if (d <= 12)
    for (int r = 0; r < d; ++r) picks.push_back(r);
  else
    picks = {0, d / 3, 2 * d / 3, d - 1};
  double worst = 0.0;
  int skipped = 0;
  for (int nu : picks) {
    bool simple = true;
    for (int r = 0; r < d && simple; ++r)
      simple = r == nu || std::fabs(res.eigenvalues[nu] - res.eigenvalues[r]) >=
                              res.diagnostics.gap_tol;
    if (!simple) {
      ++skipped;
      continue;
    }
    auto w = projector_h(op, res, nu);
    auto h = eigen_h(res, nu);
    double nrm = 0.0;
    for (double x : h) nrm += x * x;
    nrm = std::sqrt(nrm);
    int kmax = 0;
    for (int k = 1; k < d; ++k)
      if (std::fabs(h[k]) > std::fabs(h[kmax])) kmax = k;
    double flip = h[kmax] < 0.0 ? -1.0 : 1.0;
    for (int k = 0; k < d; ++k)
      worst = std::max(worst, std::fabs(flip * h[k] / nrm - w[k]));
  }
  std::string note;
  if (skipped > 0)
    note = std::to_string(skipped) + " degenerate eigenvalues skipped";
  return verify_detail::make("projector-match", worst, 1e-7, note);
}

// m = 1: telescoped chain against the generic coefficients, spectrum,
// weights, leading coefficients and both norm routes.
inline std::vector<CheckResult> check_m1(const CouplingParams& prm) {
  using verify_detail::rel;
  std::vector<CheckResult> out;
  TridiagonalChain ch = chain_m1(prm);
  TridiagonalChain cg = chain_m1_generic(prm);
  double worst = 0.0;
  for (int k = 0; k <= ch.n; ++k) worst = std::max(worst, rel(ch.diag[k], cg.diag[k]));
  for (int k = 0; k < ch.n; ++k) {
    worst = std::max(worst, rel(ch.bplus[k], cg.bplus[k]));
    worst = std::max(worst, rel(ch.bminus[k], cg.bminus[k]));
  }
  out.push_back(verify_detail::make("m1-chain-vs-generic", worst, 1e-10));

  auto roots = chain_spectrum(ch);
  SpectralResult res = solve_spectrum(prm, Branch::generic);
  worst = 0.0;
  for (int l = 0; l <= ch.n; ++l)
    worst = std::max(worst, rel(roots[l], res.eigenvalues[l]));
  out.push_back(verify_detail::make("m1-spectrum", worst, 1e-9));

  auto wq = chain_weights(ch);
  auto wp = chain_weights_product(prm);
  auto cq = chain_leading(ch);
  auto cp = chain_leading_product(prm);
  worst = 0.0;
  for (int k = 0; k <= ch.n; ++k) {
    worst = std::max(worst, rel(wq[k], wp[k]));
    worst = std::max(worst, rel(cq[k], cp[k]));
    Partition lam(prm.n, 0);
    for (int j = 0; j < k; ++j) lam[j] = 1;
    worst = std::max(worst, rel(wq[k], weight_delta(prm, lam).value()));
  }
  out.push_back(verify_detail::make("m1-products", worst, 1e-10));

  worst = 0.0;
  for (int l = 0; l <= ch.n; ++l)
    worst = std::max(worst,
                     rel(chain_norm_sum(ch, roots, l), chain_norm_closed(ch, roots, l)));
  out.push_back(verify_detail::make("m1-norms", worst, 1e-9));

  Matrix hm = chain_eigenfunctions(ch, roots);
  worst = 0.0;
  for (int l = 0; l <= ch.n; ++l) {
    auto h = eigen_h(res, l);
    for (int k = 0; k <= ch.n; ++k) worst = std::max(worst, rel(hm(k, l), h[k]));
  }
  out.push_back(verify_detail::make("m1-eigenfunctions", worst, 1e-8));
  return out;
}

// g = 1: factorized chain data against the generic formulas, Schur
// determinant eigenfunctions and both norm routes.
inline std::vector<CheckResult> check_g1(const CouplingParams& prm) {
  using verify_detail::rel;
  std::vector<CheckResult> out;
  RacahChain ch = chain_g1(prm);
  PartitionLattice lattice(prm.n, prm.m);
  int d = lattice.size();

  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    const Partition& lam = lattice.at(i);
    worst = std::max(worst, rel(weight_delta_g1(prm, ch, lam),
                                weight_delta(prm, lam).value()));
    for (const Move& mv : lattice.admissible_moves(i))
      worst = std::max(worst, rel(coeff_B_g1(prm, ch, lam, mv),
                                  coeff_B(prm, lam, mv)));
  }
  out.push_back(verify_detail::make("g1-chain-vs-generic", worst, 1e-10));

  worst = 0.0;
  for (int k = 0; k < prm.n + prm.m; ++k) {
    worst = std::max(worst, rel(ch.delta1[k], delta1_product(prm, k)));
    worst = std::max(worst, rel(ch.lead1[k], lead1_product(prm, k)));
  }
  out.push_back(verify_detail::make("g1-one-body-products", worst, 1e-10));

  auto roots = racah_roots(ch);
  SpectralResult res = solve_spectrum(prm, Branch::g1);
  worst = 0.0;
  for (int r = 0; r < d; ++r)
    worst = std::max(worst, rel(res.eigenvalues[r],
                                eigenvalue_g1(ch, roots, res.states[r])));
  out.push_back(verify_detail::make("g1-spectrum-sums", worst, 1e-8));

  // Schur-type eigenvectors: residual of the eigenvalue equation and
  // agreement with the eigensolver route.
  LatticeOperator op = build_operator(prm, Branch::g1);
  Matrix h = op.dense();
  double worst_res = 0.0, worst_h = 0.0, worst_vdm = 0.0, worst_norm = 0.0;
  for (int r = 0; r < d; ++r) {
    const Partition& nu = res.states[r];
    Partition zero(prm.n, 0);
    double a0 = schur_det(ch, roots, nu, zero);
    worst_vdm = std::max(worst_vdm, rel(a0, vandermonde_a0(ch, roots, nu)));
    std::vector<double> x(d);
    for (int i = 0; i < d; ++i)
      x[i] = c_lambda_g1(prm, lattice.at(i)) *
             schur_ratio(ch, roots, nu, lattice.at(i));
    auto hx = matvec(h, x);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < d; ++i) {
      double diff = hx[i] - res.eigenvalues[r] * x[i];
      num += diff * diff;
      den += x[i] * x[i];
    }
    worst_res = std::max(worst_res, std::sqrt(num / den));

    double nrm = norm_g1(ch, roots, nu);
    double direct = 0.0;
    for (int i = 0; i < d; ++i)
      direct += x[i] * x[i] * res.delta[i];
    worst_norm = std::max(worst_norm, rel(nrm, direct));

    auto he = eigen_h(res, r);
    for (int i = 0; i < d; ++i)
      worst_h = std::max(worst_h, std::fabs(x[i] / nrm - he[i]));
  }
  out.push_back(verify_detail::make("g1-vandermonde", worst_vdm, 1e-10));
  out.push_back(verify_detail::make("g1-schur-residual", worst_res, 1e-8));
  out.push_back(verify_detail::make("g1-norms", worst_norm, 1e-8));
  out.push_back(verify_detail::make("g1-eigenfunctions", worst_h, 1e-8));
  return out;
}

// Full check battery for one parameter point.
inline std::vector<CheckResult> run_checks(const CouplingParams& prm,
                                           Branch branch,
                                           std::uint64_t seed = 12345) {
  std::vector<CheckResult> out;
  out.push_back(check_theta_product(prm, seed));
  out.push_back(check_theta_duplication(prm, seed));
  out.push_back(check_theta_trig_reduction(prm, seed));

  LatticeOperator op = build_operator(prm, branch);
  out.push_back(check_weight_positivity(op));
  out.push_back(check_hop_positivity(op));
  out.push_back(check_inadmissible_zeros(op));
  out.push_back(check_detailed_balance(op));
  out.push_back(check_self_adjointness(op));
  out.push_back(check_p0_spectrum(prm, branch));
  out.push_back(check_p0_rowsum(prm, branch));

  SpectralResult res = solve_spectrum(prm, branch);
  out.push_back(check_orthonormality(res));
  out.push_back(check_dual_orthogonality(res));
  out.push_back(check_h_normalization(res));
  out.push_back(check_p0_norm_product(prm, branch));
  out.push_back(check_projector(op, res));

  if (prm.m == 1 && branch == Branch::generic)
    for (auto& c : check_m1(prm)) out.push_back(std::move(c));
  if (branch == Branch::g1)
    for (auto& c : check_g1(prm)) out.push_back(std::move(c));
  return out;
}

}  // namespace ellat
