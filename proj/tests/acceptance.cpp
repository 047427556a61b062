#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellat/io.hpp"
#include "ellat/racah.hpp"
#include "ellat/spectral.hpp"
#include "ellat/tridiag.hpp"
#include "ellat/trig.hpp"
#include "ellat/verify.hpp"
#include "oracles.hpp"

// Acceptance gate: one line per criterion, exit 0 only if every criterion
// holds. Tolerances are fixed here and intentionally not configurable.

using namespace ellat;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

bool g_all = true;

void report(const std::string& name, bool pass, const std::string& detail) {
  g_all = g_all && pass;
  std::printf("%s  %-24s  %s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

CouplingParams sample_point(double p = 0.3) {
  CouplingParams prm;
  prm.n = 2;
  prm.m = 2;
  prm.g = 0.5;
  prm.g1 = 0.6;
  prm.g2 = 0.7;
  prm.g3 = 0.1;
  prm.g4 = 0.1;
  prm.gp1 = prm.gp2 = prm.gp3 = prm.gp4 = 0.05;
  prm.p = p;
  return prm;
}

std::vector<CouplingParams> random_sets(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto in = [&](double a, double b) { return a + (b - a) * u01(rng); };
  const int dims[3][2] = {{2, 2}, {3, 2}, {2, 3}};
  std::vector<CouplingParams> out;
  int which = 0;
  while (static_cast<int>(out.size()) < count) {
    CouplingParams prm;
    prm.n = dims[which % 3][0];
    prm.m = dims[which % 3][1];
    ++which;
    for (int tries = 0; tries < 200; ++tries) {
      prm.g = in(0.3, 1.6);
      prm.g1 = in(0.4, 1.0);
      prm.g2 = in(0.4, 1.0);
      prm.g3 = in(-0.2, 0.4);
      prm.g4 = in(-0.2, 0.4);
      prm.gp1 = in(-0.3, 0.3);
      prm.gp2 = in(-0.3, 0.3);
      prm.gp3 = in(-0.3, 0.3);
      prm.gp4 = in(-0.3, 0.3);
      prm.p = in(-0.9, 0.9);
      if (validate(prm, Branch::generic).ok()) break;
    }
    out.push_back(prm);
  }
  return out;
}

void criterion_theta() {
  Timer t;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> ua(0.3, 1.5), up(-0.9, 0.9),
      uz(-6.0, 6.0);
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 1000; ++i) {
    double alpha = ua(rng), p = up(rng), z = uz(rng);
    ThetaContext tc(alpha, p);
    for (int r = 1; r <= 4; ++r) {
      double ref = oracle::bracket_direct(alpha, p, z, r);
      if (std::fabs(ref) < 1e-6) continue;
      ++used;
      worst = std::max(worst, std::fabs(bracket(tc, z, r) - ref) / std::fabs(ref));
      worst = std::max(worst,
                       std::fabs(bracket_product(tc, z, r) - ref) / std::fabs(ref));
    }
  }
  double secs = t.seconds();
  report("theta-accuracy", worst <= 1e-12 && secs < 5.0,
         fmt("worst %.2e over %d values in %.2fs (tol 1e-12, budget 5s)", worst,
             used, secs));
}

void criteria_operator_battery() {
  auto sets = random_sets(21, 2024);
  bool positivity = true;
  double worst_balance = 0.0, worst_sym = 0.0, worst_zero = 0.0;
  std::string note;
  for (const auto& prm : sets) {
    LatticeOperator op = build_operator(prm, Branch::generic);
    for (const auto& w : op.delta) positivity = positivity && w.sign == 1;
    for (const auto& e : op.edges) positivity = positivity && e.value > 0.0;
    auto zero = check_inadmissible_zeros(op);
    worst_zero = std::max(worst_zero, zero.residual);
    positivity = positivity && zero.pass;
    worst_balance = std::max(worst_balance, check_detailed_balance(op).residual);
    worst_sym = std::max(worst_sym, check_self_adjointness(op).residual);
  }
  report("truncation-positivity", positivity,
         fmt("21 parameter sets, inadmissible residue %.2e (tol 1e-10)",
             worst_zero));
  report("detailed-balance", worst_balance <= 1e-11,
         fmt("worst %.2e over 21 sets (tol 1e-11)", worst_balance));
  report("self-adjointness", worst_sym <= 1e-10,
         fmt("worst %.2e over 21 sets (tol 1e-10)", worst_sym));
}

void criterion_trig_limit() {
  Timer t;
  CouplingParams prm = sample_point(0.0);
  double worst = std::max(check_p0_spectrum(prm, Branch::generic).residual,
                          check_p0_rowsum(prm, Branch::generic).residual);
  double secs = t.seconds();

  CouplingParams skew;
  skew.n = 3;
  skew.m = 2;
  skew.g = 0.73;
  skew.g1 = 0.55;
  skew.g2 = 0.8;
  skew.g3 = 0.23;
  skew.g4 = -0.17;
  skew.gp1 = 0.12;
  skew.gp2 = -0.21;
  skew.gp3 = 0.33;
  skew.gp4 = 0.08;
  skew.p = 0.0;
  worst = std::max(worst, check_p0_spectrum(skew, Branch::generic).residual);
  worst = std::max(worst, check_p0_rowsum(skew, Branch::generic).residual);

  report("trig-limit", worst <= 1e-10 && secs < 1.0,
         fmt("worst %.2e, first case %.2fs (tol 1e-10, budget 1s)", worst, secs));
}

void criterion_orthogonality() {
  CouplingParams prm = sample_point(0.3);
  LatticeOperator op = build_operator(prm, Branch::generic);
  SpectralResult res = solve_spectrum(prm, Branch::generic);
  auto ortho = check_orthonormality(res);
  auto dual = check_dual_orthogonality(res);
  auto norm = check_h_normalization(res);
  auto mass = check_p0_norm_product(prm, Branch::generic);
  auto proj = check_projector(op, res);
  bool pass =
      ortho.pass && dual.pass && norm.pass && mass.pass && proj.pass;
  report("orthogonality", pass,
         fmt("ortho %.1e dual %.1e norm %.1e mass %.1e projector %.1e",
             ortho.residual, dual.residual, norm.residual, mass.residual,
             proj.residual));
}

void criterion_m1() {
  bool pass = true;
  double worst = 0.0;
  for (int n : {2, 3, 4}) {
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
    prm.p = 0.25;
    for (const auto& c : check_m1(prm)) {
      pass = pass && c.pass;
      worst = std::max(worst, c.residual);
    }
  }
  report("m1-chain", pass, fmt("n in {2,3,4}, worst residual %.2e", worst));
}

void criterion_g1() {
  CouplingParams prm = sample_point(0.3);
  prm.g = 1.0;
  bool pass = true;
  double worst = 0.0;
  for (const auto& c : check_g1(prm)) {
    pass = pass && c.pass;
    worst = std::max(worst, c.residual);
  }

  RacahChain ch = chain_g1(prm);
  PartitionLattice lat(prm.n, prm.m);
  double worst_lim = 0.0;
  for (int r = 0; r < lat.size(); ++r) {
    const Partition& lam = lat.at(r);
    double lim = oracle::richardson_limit(
        [&](double h) {
          CouplingParams off = prm;
          off.g = 1.0 + h;
          return coeff_A(off, lam);
        },
        0.02, 5);
    worst_lim = std::max(worst_lim, std::fabs(lim - coeff_A_g1(ch, lam)));
  }
  pass = pass && worst_lim <= 1e-5;
  report("g1-chain", pass,
         fmt("factorized checks %.2e, diagonal limit %.2e (tol 1e-5)", worst,
             worst_lim));
}

void criterion_sweep() {
  Timer t;
  CouplingParams prm = sample_point(0.6);
  SpectralResult res = solve_spectrum(prm, Branch::generic);
  bool pass = res.diagnostics.min_overlap >= 0.9 &&
              res.diagnostics.path.back() == 0.6;

  // labeled curves stay continuous along a 13 point sweep
  double spread = 0.0;
  std::vector<std::vector<double>> curves;
  for (int i = 0; i < 13; ++i) {
    CouplingParams step = sample_point(0.6 * i / 12.0);
    SpectralResult rs = solve_spectrum(step, Branch::generic);
    curves.push_back(rs.eigenvalues);
    for (double a : rs.eigenvalues)
      for (double b : rs.eigenvalues) spread = std::max(spread, a - b);
  }
  double jump = 0.0;
  for (std::size_t i = 1; i < curves.size(); ++i)
    for (std::size_t r = 0; r < curves[i].size(); ++r)
      jump = std::max(jump, std::fabs(curves[i][r] - curves[i - 1][r]));
  pass = pass && jump <= 0.1 * spread;
  double secs = t.seconds();
  pass = pass && secs < 30.0;
  report("sweep-continuity", pass,
         fmt("overlap %.3f, largest step jump %.2e of spread %.2e, %.1fs",
             res.diagnostics.min_overlap, jump, spread, secs));
}

void criterion_determinism(const char* cli) {
  CouplingParams prm = sample_point(0.3);
  std::string a = dump_json(spectrum_to_json(solve_spectrum(prm, Branch::generic)));
  std::string b = dump_json(spectrum_to_json(solve_spectrum(prm, Branch::generic)));
  bool pass = !a.empty() && a == b;
  std::string detail = "in-process bytes equal";
  if (cli != nullptr) {
    std::string base = " spectrum --n 2 --m 2 --g 0.5 --g1 0.6 --g2 0.7"
                       " --g3 0.1 --g4 0.1 --gp1 0.05 --gp2 0.05 --gp3 0.05"
                       " --gp4 0.05 --p 0.3 --out ";
    std::string f1 = "acceptance_run1.json", f2 = "acceptance_run2.json";
    int rc1 = std::system((std::string(cli) + base + f1).c_str());
    int rc2 = std::system((std::string(cli) + base + f2).c_str());
    auto slurp = [](const std::string& path) {
      std::ifstream f(path, std::ios::binary);
      std::ostringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    std::string c1 = slurp(f1), c2 = slurp(f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    bool cli_ok = rc1 == 0 && rc2 == 0 && !c1.empty() && c1 == c2;
    pass = pass && cli_ok;
    detail = cli_ok ? "in-process and command line bytes equal"
                    : "command line output differs or failed";
  }
  report("json-determinism", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  auto guarded = [](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(name, false, std::string("exception: ") + e.what());
    }
  };
  guarded("theta-accuracy", [] { criterion_theta(); });
  guarded("truncation-positivity", [] { criteria_operator_battery(); });
  guarded("trig-limit", [] { criterion_trig_limit(); });
  guarded("orthogonality", [] { criterion_orthogonality(); });
  guarded("m1-chain", [] { criterion_m1(); });
  guarded("g1-chain", [] { criterion_g1(); });
  guarded("sweep-continuity", [] { criterion_sweep(); });
  guarded("json-determinism", [&] { criterion_determinism(cli); });
  return g_all ? 0 : 1;
}
