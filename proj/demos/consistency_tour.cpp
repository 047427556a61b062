// Run the whole internal check battery at one parameter point and print
// each residual against its tolerance.
#include <cstdio>

#include "ellat/verify.hpp"

using namespace ellat;

int main() {
  CouplingParams prm;
  prm.n = 2;
  prm.m = 3;
  prm.g = 0.52;
  prm.g1 = 0.66;
  prm.g2 = 0.41;
  prm.g3 = 0.2;
  prm.g4 = -0.1;
  prm.gp1 = 0.12;
  prm.gp2 = 0.07;
  prm.p = -0.35;

  auto rep = validate(prm, Branch::generic);
  if (!rep.ok()) {
    std::fprintf(stderr, "rejected: %s\n", rep.joined().c_str());
    return 2;
  }

  bool all = true;
  for (const auto& c : run_checks(prm, Branch::generic)) {
    all = all && c.pass;
    std::printf("%-5s %-28s residual %.3e (tol %.0e)%s%s\n",
                c.pass ? "ok" : "FAIL", c.name.c_str(), c.residual, c.tol,
                c.note.empty() ? "" : "  ", c.note.c_str());
  }
  return all ? 0 : 1;
}
