// One line per acceptance criterion; sub-check detail follows on failure.
#include <cstdio>

#include "landau/verification.hpp"

int main(int argc, char** argv) {
  landau::VerifyOptions opts;
  opts.fast = argc > 1 && std::string(argv[1]) == "--fast";
  int failed = 0;
  for (const auto& c : landau::criteria()) {
    const auto checks = c.run(opts);
    bool ok = true;
    for (const auto& k : checks) ok = ok && k.pass;
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& k : checks) {
      if (k.pass) continue;
      std::printf("       %s: measured %.6g, needs %s %.3g (%s)\n", k.check_id.c_str(), k.measured,
                  k.lower_bound ? ">" : "<", k.tolerance, k.target.c_str());
    }
    failed += ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(landau::criteria().size()) - failed,
              landau::criteria().size());
  return failed == 0 ? 0 : 1;
}
