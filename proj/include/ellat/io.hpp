#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ellat/model.hpp"
#include "ellat/spectral.hpp"
#include "ellat/verify.hpp"

// Serialization of parameter sets, spectra and check reports. JSON output
// goes through nlohmann's sorted-key objects and shortest round-trip float
// printing, so equal inputs produce byte-identical files.

namespace ellat {

inline nlohmann::json params_to_json(const CouplingParams& prm) {
  return nlohmann::json{
      {"n", prm.n},   {"m", prm.m},     {"g", prm.g},     {"g1", prm.g1},
      {"g2", prm.g2}, {"g3", prm.g3},   {"g4", prm.g4},   {"gp1", prm.gp1},
      {"gp2", prm.gp2}, {"gp3", prm.gp3}, {"gp4", prm.gp4}, {"p", prm.p},
      {"tol", prm.tol}};
}

inline CouplingParams params_from_json(const nlohmann::json& j) {
  CouplingParams prm;
  prm.n = j.at("n").get<int>();
  prm.m = j.at("m").get<int>();
  prm.g = j.at("g").get<double>();
  prm.g1 = j.at("g1").get<double>();
  prm.g2 = j.at("g2").get<double>();
  prm.g3 = j.value("g3", 0.0);
  prm.g4 = j.value("g4", 0.0);
  prm.gp1 = j.value("gp1", 0.0);
  prm.gp2 = j.value("gp2", 0.0);
  prm.gp3 = j.value("gp3", 0.0);
  prm.gp4 = j.value("gp4", 0.0);
  prm.p = j.value("p", 0.0);
  prm.tol = j.value("tol", 1e-14);
  return prm;
}

inline nlohmann::json spectrum_to_json(const SpectralResult& res) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& lam : res.states) states.push_back(lam);
  nlohmann::json eigs = nlohmann::json::array();
  for (std::size_t r = 0; r < res.states.size(); ++r)
    eigs.push_back({{"label", res.states[r]}, {"value", res.eigenvalues[r]}});
  nlohmann::json funcs = nlohmann::json::array();
  int d = static_cast<int>(res.states.size());
  for (int r = 0; r < d; ++r) {
    auto h = eigen_h(res, r);
    funcs.push_back({{"label", res.states[r]},
                     {"norm", norm_h(res, r)},
                     {"values", h}});
  }
  nlohmann::json weights = nlohmann::json::array();
  for (double w : res.delta) weights.push_back(w);
  return nlohmann::json{
      {"params", params_to_json(res.params)},
      {"branch", to_string(res.branch)},
      {"lattice", states},
      {"eigenvalues", eigs},
      {"eigenfunctions", funcs},
      {"weights", weights},
      {"diagnostics",
       {{"sym_residual", res.diagnostics.sym_residual},
        {"min_gap", res.diagnostics.min_gap},
        {"gap_tol", res.diagnostics.gap_tol},
        {"min_overlap", res.diagnostics.min_overlap},
        {"jacobi_sweeps", res.diagnostics.jacobi_sweeps},
        {"path", res.diagnostics.path}}}};
}

inline std::string spectrum_to_csv(const SpectralResult& res) {
  std::string out;
  auto meta = [&out](const std::string& k, const std::string& v) {
    out += "# " + k + "=" + v + "\n";
  };
  auto num = [](double x) {
    nlohmann::json j = x;
    return j.dump();
  };
  const CouplingParams& prm = res.params;
  meta("n", std::to_string(prm.n));
  meta("m", std::to_string(prm.m));
  meta("g", num(prm.g));
  meta("g1", num(prm.g1));
  meta("g2", num(prm.g2));
  meta("g3", num(prm.g3));
  meta("g4", num(prm.g4));
  meta("gp1", num(prm.gp1));
  meta("gp2", num(prm.gp2));
  meta("gp3", num(prm.gp3));
  meta("gp4", num(prm.gp4));
  meta("p", num(prm.p));
  meta("branch", to_string(res.branch));
  out += "rank,label,energy,norm\n";
  for (std::size_t r = 0; r < res.states.size(); ++r) {
    out += std::to_string(r) + ",\"" + to_string(res.states[r]) + "\"," +
           num(res.eigenvalues[r]) + "," + num(norm_h(res, static_cast<int>(r))) +
           "\n";
  }
  return out;
}

inline nlohmann::json checks_to_json(const CouplingParams& prm, Branch branch,
                                     const std::vector<CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    nlohmann::json jc{{"name", c.name},
                      {"pass", c.pass},
                      {"residual", c.residual},
                      {"tol", c.tol}};
    if (!c.note.empty()) jc["note"] = c.note;
    arr.push_back(jc);
  }
  return nlohmann::json{{"params", params_to_json(prm)},
                        {"branch", to_string(branch)},
                        {"checks", arr},
                        {"pass", all}};
}

inline std::string checks_to_csv(const std::vector<CheckResult>& checks) {
  std::string out = "name,pass,residual,tol\n";
  auto num = [](double x) {
    nlohmann::json j = x;
    return j.dump();
  };
  for (const auto& c : checks)
    out += c.name + "," + (c.pass ? "1" : "0") + "," + num(c.residual) + "," +
           num(c.tol) + "\n";
  return out;
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ellat
