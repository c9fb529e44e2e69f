#include <cstdio>

#include "kurosh/acceptance.hpp"

int main() {
  auto results = kurosh::acceptance::run_all();
  bool ok = true;
  double total = 0;
  for (const auto& r : results) {
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.number, r.title.c_str(),
                r.detail.c_str(), r.seconds);
    ok = ok && r.pass;
    total += r.seconds;
  }
  std::printf("total %.2fs\n", total);
  return ok && total < 60 ? 0 : 1;
}
