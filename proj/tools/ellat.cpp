#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellat/io.hpp"
#include "ellat/racah.hpp"
#include "ellat/tridiag.hpp"
#include "ellat/verify.hpp"

namespace {

using ellat::Branch;
using ellat::CouplingParams;

struct ParamOpts {
  std::string file;
  int n = 2, m = 2;
  double g = 0.5, g1 = 0.6, g2 = 0.7, g3 = 0.0, g4 = 0.0;
  double gp1 = 0.0, gp2 = 0.0, gp3 = 0.0, gp4 = 0.0;
  double p = 0.0, tol = 1e-14;
  CLI::Option *on = nullptr, *om = nullptr, *og = nullptr, *og1 = nullptr,
              *og2 = nullptr, *og3 = nullptr, *og4 = nullptr, *ogp1 = nullptr,
              *ogp2 = nullptr, *ogp3 = nullptr, *ogp4 = nullptr, *op = nullptr,
              *otol = nullptr;
};

void attach_params(CLI::App* cmd, ParamOpts& po) {
  cmd->add_option("--params", po.file, "JSON file with parameters; flags override");
  po.on = cmd->add_option("--n", po.n, "number of variables")->capture_default_str();
  po.om = cmd->add_option("--m", po.m, "box height bound")->capture_default_str();
  po.og = cmd->add_option("--g", po.g, "bulk coupling")->capture_default_str();
  po.og1 = cmd->add_option("--g1", po.g1, "coupling g1")->capture_default_str();
  po.og2 = cmd->add_option("--g2", po.g2, "coupling g2")->capture_default_str();
  po.og3 = cmd->add_option("--g3", po.g3, "coupling g3")->capture_default_str();
  po.og4 = cmd->add_option("--g4", po.g4, "coupling g4")->capture_default_str();
  po.ogp1 = cmd->add_option("--gp1", po.gp1, "coupling g'1")->capture_default_str();
  po.ogp2 = cmd->add_option("--gp2", po.gp2, "coupling g'2")->capture_default_str();
  po.ogp3 = cmd->add_option("--gp3", po.gp3, "coupling g'3")->capture_default_str();
  po.ogp4 = cmd->add_option("--gp4", po.gp4, "coupling g'4")->capture_default_str();
  po.op = cmd->add_option("--p", po.p, "nome")->capture_default_str();
  po.otol = cmd->add_option("--tol", po.tol, "series tolerance")->capture_default_str();
}

CouplingParams resolve(const ParamOpts& po) {
  CouplingParams prm;
  if (!po.file.empty()) {
    std::ifstream f(po.file);
    if (!f) throw std::domain_error("cannot read parameter file: " + po.file);
    nlohmann::json j;
    f >> j;
    prm = ellat::params_from_json(j);
  } else {
    prm.n = po.n;
    prm.m = po.m;
  }
  auto take = [](CLI::Option* o, auto& dst, const auto& src) {
    if (o != nullptr && o->count() > 0) dst = src;
  };
  take(po.on, prm.n, po.n);
  take(po.om, prm.m, po.m);
  if (po.file.empty()) {
    prm.g = po.g;
    prm.g1 = po.g1;
    prm.g2 = po.g2;
    prm.g3 = po.g3;
    prm.g4 = po.g4;
    prm.gp1 = po.gp1;
    prm.gp2 = po.gp2;
    prm.gp3 = po.gp3;
    prm.gp4 = po.gp4;
    prm.p = po.p;
    prm.tol = po.tol;
  } else {
    take(po.og, prm.g, po.g);
    take(po.og1, prm.g1, po.g1);
    take(po.og2, prm.g2, po.g2);
    take(po.og3, prm.g3, po.g3);
    take(po.og4, prm.g4, po.g4);
    take(po.ogp1, prm.gp1, po.gp1);
    take(po.ogp2, prm.gp2, po.gp2);
    take(po.ogp3, prm.gp3, po.gp3);
    take(po.ogp4, prm.gp4, po.gp4);
    take(po.op, prm.p, po.p);
    take(po.otol, prm.tol, po.tol);
  }
  return prm;
}

Branch pick_branch(const std::string& flag, const CouplingParams& prm) {
  if (flag == "generic") return Branch::generic;
  if (flag == "g1") return Branch::g1;
  return std::fabs(prm.g - 1.0) <= 1e-12 ? Branch::g1 : Branch::generic;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
}

int thread_count() {
  if (const char* env = std::getenv("ELLAT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

int report_invalid(const ellat::ValidationReport& rep) {
  std::cerr << "invalid parameters: " << rep.joined() << "\n";
  return 2;
}

int run_spectrum(const CouplingParams& prm, Branch branch,
                 const std::string& out, const std::string& format) {
  auto rep = ellat::validate(prm, branch);
  if (!rep.ok()) return report_invalid(rep);
  auto res = ellat::solve_spectrum(prm, branch);
  write_output(out, format == "csv" ? ellat::spectrum_to_csv(res)
                                    : ellat::dump_json(ellat::spectrum_to_json(res)));
  return 0;
}

int run_verify(const CouplingParams& prm, Branch branch, std::uint64_t seed,
               const std::string& out, const std::string& format) {
  auto rep = ellat::validate(prm, branch);
  if (!rep.ok()) return report_invalid(rep);
  auto checks = ellat::run_checks(prm, branch, seed);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    std::ostringstream line;
    line.setf(std::ios::scientific);
    line.precision(3);
    line << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  residual "
         << c.residual << "  (tol " << c.tol << ")";
    if (!c.note.empty()) line << "  " << c.note;
    std::cerr << line.str() << "\n";
  }
  write_output(out, format == "csv"
                        ? ellat::checks_to_csv(checks)
                        : ellat::dump_json(ellat::checks_to_json(prm, branch, checks)));
  return all ? 0 : 1;
}

int run_special_m1(CouplingParams prm, const std::string& out,
                   const std::string& format) {
  if (prm.m != 1) {
    std::cerr << "invalid parameters: special m1 requires m == 1\n";
    return 2;
  }
  auto rep = ellat::validate(prm, Branch::generic);
  if (!rep.ok()) return report_invalid(rep);
  auto ch = ellat::chain_m1(prm);
  auto roots = ellat::chain_spectrum(ch);
  auto weights = ellat::chain_weights(ch);
  auto leading = ellat::chain_leading(ch);
  std::vector<double> norms(ch.n + 1);
  for (int l = 0; l <= ch.n; ++l) norms[l] = ellat::chain_norm_closed(ch, roots, l);
  if (format == "csv") {
    std::string text;
    text += "# n=" + std::to_string(prm.n) + "\n";
    text += "k,root,weight,leading,norm\n";
    auto num = [](double x) {
      nlohmann::json j = x;
      return j.dump();
    };
    for (int k = 0; k <= ch.n; ++k)
      text += std::to_string(k) + "," + num(roots[k]) + "," + num(weights[k]) +
              "," + num(leading[k]) + "," + num(norms[k]) + "\n";
    write_output(out, text);
  } else {
    auto h = ellat::chain_eigenfunctions(ch, roots);
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k <= ch.n; ++k) {
      std::vector<double> row(ch.n + 1);
      for (int l = 0; l <= ch.n; ++l) row[l] = h(k, l);
      rows.push_back(row);
    }
    nlohmann::json j{{"params", ellat::params_to_json(prm)},
                     {"diag", ch.diag},
                     {"bplus", ch.bplus},
                     {"bminus", ch.bminus},
                     {"roots", roots},
                     {"weights", weights},
                     {"leading", leading},
                     {"norms", norms},
                     {"eigenfunctions", rows}};
    write_output(out, ellat::dump_json(j));
  }
  return 0;
}

int run_special_g1(CouplingParams prm, const std::string& out,
                   const std::string& format) {
  prm.g = 1.0;
  auto rep = ellat::validate(prm, Branch::g1);
  if (!rep.ok()) return report_invalid(rep);
  auto ch = ellat::chain_g1(prm);
  auto roots = ellat::racah_roots(ch);
  ellat::PartitionLattice lattice(prm.n, prm.m);
  if (format == "csv") {
    std::string text;
    text += "# n=" + std::to_string(prm.n) + " m=" + std::to_string(prm.m) + "\n";
    text += "k,a,bplus,bminus,root\n";
    auto num = [](double x) {
      nlohmann::json j = x;
      return j.dump();
    };
    for (int k = 0; k < prm.n + prm.m; ++k)
      text += std::to_string(k) + "," + num(ch.a[k]) + "," + num(ch.bplus[k]) +
              "," + num(ch.bminus[k]) + "," + num(roots[k]) + "\n";
    write_output(out, text);
  } else {
    nlohmann::json eigs = nlohmann::json::array();
    for (int r = 0; r < lattice.size(); ++r) {
      const auto& nu = lattice.at(r);
      eigs.push_back({{"label", nu}, {"value", ellat::eigenvalue_g1(ch, roots, nu)}});
    }
    nlohmann::json j{{"params", ellat::params_to_json(prm)},
                     {"a", ch.a},
                     {"bplus", ch.bplus},
                     {"bminus", ch.bminus},
                     {"one_body_weights", ch.delta1},
                     {"one_body_leading", ch.lead1},
                     {"roots", roots},
                     {"eigenvalues", eigs}};
    write_output(out, ellat::dump_json(j));
  }
  return 0;
}

int run_sweep(const CouplingParams& base, Branch branch, double p0, double p1,
              int steps, const std::string& out, const std::string& format) {
  if (steps < 1) {
    std::cerr << "invalid parameters: sweep needs at least one step\n";
    return 2;
  }
  std::vector<double> ps(steps);
  for (int i = 0; i < steps; ++i)
    ps[i] = steps == 1 ? p0 : p0 + (p1 - p0) * i / (steps - 1);
  for (double p : ps) {
    CouplingParams prm = base;
    prm.p = p;
    auto rep = ellat::validate(prm, branch);
    if (!rep.ok()) return report_invalid(rep);
  }
  std::vector<ellat::SpectralResult> results(steps);
  std::atomic<int> next{0};
  std::mutex err_mtx;
  std::exception_ptr first_err;
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= steps) return;
      try {
        CouplingParams prm = base;
        prm.p = ps[i];
        results[i] = ellat::solve_spectrum(prm, branch);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mtx);
        if (!first_err) first_err = std::current_exception();
        return;
      }
    }
  };
  int nth = std::min(thread_count(), steps);
  std::vector<std::thread> pool;
  for (int t = 0; t < nth; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_err) std::rethrow_exception(first_err);

  if (format == "csv") {
    auto num = [](double x) {
      nlohmann::json j = x;
      return j.dump();
    };
    std::string text = "p,rank,label,energy\n";
    for (int i = 0; i < steps; ++i)
      for (std::size_t r = 0; r < results[i].states.size(); ++r)
        text += num(ps[i]) + "," + std::to_string(r) + ",\"" +
                ellat::to_string(results[i].states[r]) + "\"," +
                num(results[i].eigenvalues[r]) + "\n";
    write_output(out, text);
  } else {
    nlohmann::json points = nlohmann::json::array();
    for (int i = 0; i < steps; ++i) {
      nlohmann::json eigs = nlohmann::json::array();
      for (std::size_t r = 0; r < results[i].states.size(); ++r)
        eigs.push_back({{"label", results[i].states[r]},
                        {"value", results[i].eigenvalues[r]}});
      points.push_back({{"p", ps[i]}, {"eigenvalues", eigs}});
    }
    CouplingParams shown = base;
    shown.p = p0;
    nlohmann::json j{{"params", ellat::params_to_json(shown)},
                     {"branch", ellat::to_string(branch)},
                     {"points", points}};
    write_output(out, ellat::dump_json(j));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra of an elliptic difference operator on bounded partitions"};
  app.require_subcommand(1);

  std::string format = "json", out, branch_flag = "auto";
  std::uint64_t seed = 12345;
  double p_from = 0.0, p_to = 0.6;
  int steps = 13;

  ParamOpts po_spectrum, po_verify, po_m1, po_g1, po_sweep;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out, "output file (default stdout)");
  };
  auto add_branch = [&](CLI::App* cmd) {
    cmd->add_option("--branch", branch_flag, "coefficient branch")
        ->check(CLI::IsMember({"auto", "generic", "g1"}))
        ->capture_default_str();
  };

  auto* sc_spectrum =
      app.add_subcommand("spectrum", "diagonalize and print labeled spectrum");
  attach_params(sc_spectrum, po_spectrum);
  add_common(sc_spectrum);
  add_branch(sc_spectrum);

  auto* sc_verify =
      app.add_subcommand("verify", "run the invariant check battery");
  attach_params(sc_verify, po_verify);
  add_common(sc_verify);
  add_branch(sc_verify);
  sc_verify->add_option("--seed", seed, "sampling seed")->capture_default_str();

  auto* sc_special = app.add_subcommand("special", "solvable special cases");
  sc_special->require_subcommand(1);
  auto* sc_m1 = sc_special->add_subcommand("m1", "single-column tridiagonal chain");
  attach_params(sc_m1, po_m1);
  add_common(sc_m1);
  auto* sc_g1 = sc_special->add_subcommand("g1", "unit-coupling factorized chain");
  attach_params(sc_g1, po_g1);
  add_common(sc_g1);

  auto* sc_sweep = app.add_subcommand("sweep", "spectra along a nome interval");
  attach_params(sc_sweep, po_sweep);
  add_common(sc_sweep);
  add_branch(sc_sweep);
  sc_sweep->add_option("--p-from", p_from, "first nome")->capture_default_str();
  sc_sweep->add_option("--p-to", p_to, "last nome")->capture_default_str();
  sc_sweep->add_option("--steps", steps, "number of points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (sc_spectrum->parsed()) {
      CouplingParams prm = resolve(po_spectrum);
      return run_spectrum(prm, pick_branch(branch_flag, prm), out, format);
    }
    if (sc_verify->parsed()) {
      CouplingParams prm = resolve(po_verify);
      return run_verify(prm, pick_branch(branch_flag, prm), seed, out, format);
    }
    if (sc_special->parsed()) {
      if (sc_m1->parsed()) return run_special_m1(resolve(po_m1), out, format);
      if (sc_g1->parsed()) return run_special_g1(resolve(po_g1), out, format);
    }
    if (sc_sweep->parsed()) {
      CouplingParams prm = resolve(po_sweep);
      return run_sweep(prm, pick_branch(branch_flag, prm), p_from, p_to, steps,
                       out, format);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const ellat::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
