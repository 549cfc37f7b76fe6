#include <cstdio>
#include <cstdlib>

#include "parabolab/verify.hpp"

// One line per criterion; exit status 1 if any fails.
int main(int argc, char** argv) {
  parabolab::VerifyOptions opts;
  if (argc > 1) opts.resolution = std::atoi(argv[1]);
  if (argc > 2) opts.seed = std::strtoull(argv[2], nullptr, 10);
  bool all = true;
  parabolab::run_verify(opts, [&](const parabolab::CriterionResult& r) {
    std::printf("[%s] criterion %2d %-24s %8.3f s (budget %g s) %s\n", r.pass() ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.budget_seconds, r.summary.c_str());
    std::fflush(stdout);
    all = all && r.pass();
  });
  std::printf("%s\n", all ? "all criteria pass" : "some criteria FAILED");
  return all ? 0 : 1;
}
