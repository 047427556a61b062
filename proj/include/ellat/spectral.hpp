#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "ellat/errors.hpp"
#include "ellat/linalg.hpp"
#include "ellat/model.hpp"
#include "ellat/partitions.hpp"
#include "ellat/racah.hpp"
#include "ellat/trig.hpp"

namespace ellat {

// Dense realization of the truncated operator on the partition lattice,
// together with the weight function that symmetrizes it.
struct LatticeOperator {
  CouplingParams params;
  Branch branch = Branch::generic;
  PartitionLattice lattice;

  struct Edge {
    int from, to;  // lattice ranks
    int site, eps; // the move carrying the hop
    double value;
  };

  std::vector<double> diag;      // diagonal coefficient per rank
  std::vector<Edge> edges;       // hops, ordered by (from, site, +1 before -1)
  std::vector<LogSigned> delta;  // weights per rank, delta[0] = 1

  Matrix dense() const {
    int d = lattice.size();
    Matrix h(d, d);
    for (int i = 0; i < d; ++i) h(i, i) = diag[i];
    for (const auto& e : edges) h(e.from, e.to) = e.value;
    return h;
  }

  // Conjugated matrix D^{1/2} H D^{-1/2} averaged with its transpose.
  // The hop scaling is done on log weights so that large weight ratios
  // never leave the exponent domain. max_asym receives the largest
  // asymmetry found before averaging.
  Matrix symmetrized(double* max_asym = nullptr) const {
    int d = lattice.size();
    Matrix s(d, d);
    for (int i = 0; i < d; ++i) s(i, i) = diag[i];
    for (const auto& e : edges) {
      if (delta[e.from].sign <= 0 || delta[e.to].sign <= 0)
        throw numeric_error("symmetrized: weight function not positive");
      double scale = 0.5 * (delta[e.from].logmag - delta[e.to].logmag);
      s(e.from, e.to) = e.value * std::exp(scale);
    }
    double asym = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        asym = std::max(asym, std::fabs(s(i, j) - s(j, i)));
        double avg = 0.5 * (s(i, j) + s(j, i));
        s(i, j) = s(j, i) = avg;
      }
    if (max_asym) *max_asym = asym;
    return s;
  }
};

// Assemble the operator for the given branch. Validation failures throw
// std::domain_error.
inline LatticeOperator build_operator(const CouplingParams& prm,
                                      Branch branch = Branch::generic) {
  auto rep = validate(prm, branch);
  if (!rep.ok()) throw std::domain_error("build_operator: " + rep.joined());
  LatticeOperator op{prm, branch, PartitionLattice(prm.n, prm.m)};
  int d = op.lattice.size();
  op.diag.resize(d);
  op.delta.resize(d);

  if (branch == Branch::g1) {
    RacahChain ch = chain_g1(prm);
    for (int i = 0; i < d; ++i) {
      const Partition& lam = op.lattice.at(i);
      op.diag[i] = coeff_A_g1(ch, lam);
      op.delta[i] = LogSigned::of(weight_delta_g1(prm, ch, lam));
      for (const Move& mv : op.lattice.admissible_moves(i)) {
        int to = op.lattice.rank_of(apply_move(lam, mv));
        op.edges.push_back({i, to, mv.site, mv.eps, coeff_B_g1(prm, ch, lam, mv)});
      }
    }
  } else {
    for (int i = 0; i < d; ++i) {
      const Partition& lam = op.lattice.at(i);
      op.diag[i] = coeff_A(prm, lam);
      op.delta[i] = weight_delta(prm, lam);
      for (const Move& mv : op.lattice.admissible_moves(i)) {
        int to = op.lattice.rank_of(apply_move(lam, mv));
        op.edges.push_back({i, to, mv.site, mv.eps, coeff_B(prm, lam, mv)});
      }
    }
  }
  return op;
}

struct SpectrumOptions {
  double step0 = 0.05;        // initial continuation step in p
  double step_floor = 1e-4;   // below this the continuation gives up
  double overlap_min = 0.9;   // accepted eigenvector overlap per step
  double gap_tol_rel = 1e-8;  // degeneracy threshold relative to spread
};

struct SpectralDiagnostics {
  double sym_residual = 0.0;  // largest |S - S^T| entry before averaging
  double min_gap = 0.0;       // smallest eigenvalue gap at the target p
  double gap_tol = 0.0;       // absolute degeneracy threshold
  double min_overlap = 1.0;   // worst continuation overlap accepted
  int jacobi_sweeps = 0;      // sweeps used at the target p
  std::vector<double> path;   // p values visited, ending at the target
};

// Labeled spectral data. Index r runs over lattice ranks: eigenvalues[r]
// and column r of f belong to the state states[r], with labels assigned
// by the closed p = 0 formula and transported along a homotopy in p.
struct SpectralResult {
  CouplingParams params;
  Branch branch = Branch::generic;
  std::vector<Partition> states;
  std::vector<double> eigenvalues;
  std::vector<double> delta;
  Matrix f;  // f(k, r): eigenfunctions orthonormal in the weighted inner product
  SpectralDiagnostics diagnostics;
};

namespace spectral_detail {

// Pair new eigenvector columns with previous ones by descending overlap.
// Inside a degenerate cluster the eigensolver returns an arbitrary rotation
// of the eigenspace, so single-column overlaps there can sit near 1/sqrt(2)
// at any step size. The acceptance score therefore measures each new column
// against the span of the old columns whose values lie within ctol of its
// matched partner; for a nondegenerate partner that is just the plain
// overlap, and labels inside a cluster are interchangeable anyway.
// Returns (assignment new->old, worst accepted cluster overlap).
inline std::pair<std::vector<int>, double> match_columns(
    const Matrix& vold, const std::vector<double>& wold, const Matrix& vnew,
    double ctol) {
  int d = vold.rows;
  std::vector<std::tuple<double, int, int>> cand;
  cand.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += vnew(k, i) * vold(k, j);
      cand.emplace_back(std::fabs(s), i, j);
    }
  std::sort(cand.begin(), cand.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<int> to_old(d, -1);
  std::vector<char> used_new(d, 0), used_old(d, 0);
  int assigned = 0;
  for (const auto& [ov, i, j] : cand) {
    if (used_new[i] || used_old[j]) continue;
    used_new[i] = used_old[j] = 1;
    to_old[i] = j;
    if (++assigned == d) break;
  }
  double worst = 1.0;
  for (int i = 0; i < d; ++i) {
    int j = to_old[i];
    double mass = 0.0;
    for (int j2 = 0; j2 < d; ++j2) {
      if (std::fabs(wold[j2] - wold[j]) > ctol) continue;
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += vnew(k, i) * vold(k, j2);
      mass += s * s;
    }
    worst = std::min(worst, std::sqrt(mass));
  }
  return {to_old, worst};
}

struct Stage {
  std::vector<double> values;  // ascending, as produced by the eigensolver
  Matrix vectors;
  std::vector<int> label;      // label[col] = lattice rank of the state
  int sweeps = 0;
  double sym_residual = 0.0;
};

inline Stage diagonalize_at(const CouplingParams& prm, Branch branch) {
  LatticeOperator op = build_operator(prm, branch);
  double asym = 0.0;
  Matrix s = op.symmetrized(&asym);
  auto eig = jacobi_eigen(s);
  Stage st;
  st.values = std::move(eig.values);
  st.vectors = std::move(eig.vectors);
  st.sweeps = eig.sweeps;
  st.sym_residual = asym;
  return st;
}

}  // namespace spectral_detail

// Diagonalize with labeled eigenvalues. At p = 0 labels come from the
// closed trig formula; away from p = 0 they are transported along a
// homotopy in p with adaptive step control on eigenvector overlaps.
inline SpectralResult solve_spectrum(const CouplingParams& prm,
                                     Branch branch = Branch::generic,
                                     const SpectrumOptions& opt = {}) {
  using namespace spectral_detail;
  auto rep = validate(prm, branch);
  if (!rep.ok()) throw std::domain_error("solve_spectrum: " + rep.joined());

  PartitionLattice lattice(prm.n, prm.m);
  int d = lattice.size();

  CouplingParams at0 = prm;
  at0.p = 0.0;
  Stage cur = diagonalize_at(at0, branch);

  // Label the p = 0 stage: both the computed values and the closed-form
  // values are sorted ascending, so they pair up by position.
  std::vector<std::pair<double, int>> closed(d);
  for (int r = 0; r < d; ++r)
    closed[r] = {eigenvalue_p0(prm, lattice.at(r)), r};
  std::sort(closed.begin(), closed.end());
  double spread = std::max(closed.back().first - closed.front().first, 1e-30);
  cur.label.resize(d);
  for (int i = 0; i < d; ++i) {
    if (std::fabs(cur.values[i] - closed[i].first) > 1e-6 * std::max(1.0, spread))
      throw labeling_error("solve_spectrum: p = 0 spectrum does not match closed form");
    cur.label[i] = closed[i].second;
  }

  SpectralDiagnostics diag;
  diag.path.push_back(0.0);
  diag.sym_residual = cur.sym_residual;
  diag.jacobi_sweeps = cur.sweeps;

  double target = prm.p;
  double pcur = 0.0;
  double step = opt.step0;
  while (std::fabs(target - pcur) > 0.0) {
    double dirn = target > pcur ? 1.0 : -1.0;
    double pnext = pcur + dirn * std::min(step, std::fabs(target - pcur));
    CouplingParams atp = prm;
    atp.p = pnext;
    Stage nxt = diagonalize_at(atp, branch);
    double ctol = opt.gap_tol_rel *
                  std::max(cur.values.back() - cur.values.front(), 1e-30);
    auto [to_old, worst] = match_columns(cur.vectors, cur.values, nxt.vectors, ctol);
    if (worst < opt.overlap_min) {
      step *= 0.5;
      if (step < opt.step_floor)
        throw labeling_error(
            "solve_spectrum: continuation step fell below the floor near p = " +
            std::to_string(pnext));
      continue;
    }
    nxt.label.resize(d);
    for (int i = 0; i < d; ++i) nxt.label[i] = cur.label[to_old[i]];
    diag.min_overlap = std::min(diag.min_overlap, worst);
    diag.path.push_back(pnext);
    diag.sym_residual = std::max(diag.sym_residual, nxt.sym_residual);
    diag.jacobi_sweeps = nxt.sweeps;
    cur = std::move(nxt);
    pcur = pnext;
    step = std::min(opt.step0, step * 2.0);
  }

  // Gap diagnostics at the target point.
  double lo = cur.values.front(), hi = cur.values.back();
  diag.gap_tol = opt.gap_tol_rel * std::max(hi - lo, 1e-30);
  diag.min_gap = hi - lo;
  for (int i = 0; i + 1 < d; ++i)
    diag.min_gap = std::min(diag.min_gap, cur.values[i + 1] - cur.values[i]);
  if (d == 1) diag.min_gap = 0.0;

  LatticeOperator op = build_operator(prm, branch);

  SpectralResult res;
  res.params = prm;
  res.branch = branch;
  res.states = lattice.states();
  res.eigenvalues.assign(d, 0.0);
  res.delta.resize(d);
  res.f = Matrix(d, d);
  res.diagnostics = std::move(diag);
  for (int k = 0; k < d; ++k) res.delta[k] = op.delta[k].value();
  for (int col = 0; col < d; ++col) {
    int r = cur.label[col];
    res.eigenvalues[r] = cur.values[col];
    for (int k = 0; k < d; ++k) {
      // f = D^{-1/2} v, computed against log weights.
      double w = std::exp(-0.5 * op.delta[k].logmag);
      res.f(k, r) = cur.vectors(k, col) * w;
    }
  }
  return res;
}

// Eigenfunction h^(nu) = f_0^(nu) * f^(nu); its value at the empty
// partition equals the weighted norm <h, h>.
inline std::vector<double> eigen_h(const SpectralResult& res, int nu_rank) {
  int d = static_cast<int>(res.states.size());
  std::vector<double> h(d);
  double f0 = res.f(0, nu_rank);
  for (int k = 0; k < d; ++k) h[k] = f0 * res.f(k, nu_rank);
  return h;
}

inline double norm_h(const SpectralResult& res, int nu_rank) {
  double f0 = res.f(0, nu_rank);
  return f0 * f0;
}

// Independent eigenfunction route: apply the product of shifted operators
// prod_{mu != nu} (H - E_mu) to the unit vector at the empty partition.
// The result is proportional to h^(nu); it is returned normalized to unit
// Euclidean length with a positive entry at the largest component.
// Degenerate gaps below gap_tol make the product ill-conditioned and
// throw.
inline std::vector<double> projector_h(const LatticeOperator& op,
                                       const SpectralResult& res, int nu_rank) {
  int d = static_cast<int>(res.states.size());
  double enu = res.eigenvalues[nu_rank];
  for (int r = 0; r < d; ++r)
    if (r != nu_rank &&
        std::fabs(enu - res.eigenvalues[r]) < res.diagnostics.gap_tol)
      throw conditioning_error("projector_h: eigenvalue gap below tolerance");

  Matrix h = op.dense();
  std::vector<double> v(d, 0.0);
  v[0] = 1.0;
  for (int r = 0; r < d; ++r) {
    if (r == nu_rank) continue;
    std::vector<double> w = matvec(h, v);
    double shift = res.eigenvalues[r];
    double nrm = 0.0;
    for (int k = 0; k < d; ++k) {
      w[k] -= shift * v[k];
      nrm += w[k] * w[k];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0)
      throw conditioning_error("projector_h: starting vector lies in a root subspace");
    for (int k = 0; k < d; ++k) w[k] = w[k] / nrm;
    v = std::move(w);
  }
  int kmax = 0;
  for (int k = 1; k < d; ++k)
    if (std::fabs(v[k]) > std::fabs(v[kmax])) kmax = k;
  if (v[kmax] < 0.0)
    for (double& x : v) x = -x;
  return v;
}

}  // namespace ellat
